//! Words in the 3-strand braid group.
//!
//! A [`BraidWord`] is kept in syllable normal form: every exponent is
//! nonzero and neighbouring syllables use different generators, so the
//! word alternates between `s1` and `s2`. The number of syllables is the
//! word's *length*.
//!
//! `s1` twists strands 1 and 2, `s2` twists strands 2 and 3 (strand 0 of
//! the 2-bridge closure never takes part). A positive exponent is the
//! right-handed half twist.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S1,
    S2,
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::S1 => 1,
            Generator::S2 => 2,
        }
    }

    pub fn other(self) -> Generator {
        match self {
            Generator::S1 => Generator::S2,
            Generator::S2 => Generator::S1,
        }
    }

    pub fn from_index(i: usize) -> Option<Generator> {
        match i {
            1 => Some(Generator::S1),
            2 => Some(Generator::S2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        Syllable { generator, exponent }
    }

    pub fn s1(exponent: i64) -> Self {
        Syllable::new(Generator::S1, exponent)
    }

    pub fn s2(exponent: i64) -> Self {
        Syllable::new(Generator::S2, exponent)
    }
}

/// Index of a syllable inside a particular word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SiteRef(pub usize);

impl SiteRef {
    pub fn checked(self, word: &BraidWord) -> Result<SiteRef> {
        if self.0 < word.len() {
            Ok(self)
        } else {
            Err(Error::SiteOutOfRange { index: self.0, len: word.len() })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BraidWord {
    syllables: Vec<Syllable>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord::default()
    }

    /// Free normalization of an arbitrary syllable sequence: zero exponents
    /// vanish and equal neighbours merge, cascading through cancellations.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            push_reduced(&mut out, s);
        }
        BraidWord { syllables: out }
    }

    /// `[(1,3),(2,-2)]`-style constructor used throughout the tests.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        BraidWord::from_syllables(pairs.iter().map(|&(g, e)| {
            Syllable::new(Generator::from_index(g).expect("generator must be 1 or 2"), e)
        }))
    }

    /// Alternating exponent vector starting at `s1`.
    pub fn from_exponents(exponents: &[i64]) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        let mut g = Generator::S1;
        let mut out = Vec::with_capacity(exponents.len());
        for &e in exponents {
            out.push(Syllable::new(g, e));
            g = g.other();
        }
        Ok(BraidWord { syllables: out })
    }

    /// The exponent vector, available when the word starts with `s1`.
    pub fn exponents(&self) -> Option<Vec<i64>> {
        match self.first_generator() {
            Some(Generator::S2) => None,
            _ => Some(self.syllables.iter().map(|s| s.exponent).collect()),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn first_generator(&self) -> Option<Generator> {
        self.syllables.first().map(|s| s.generator)
    }

    pub fn last_generator(&self) -> Option<Generator> {
        self.syllables.last().map(|s| s.generator)
    }

    pub fn crossing_count(&self) -> usize {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, i64)> {
        self.syllables.iter().map(|s| (s.generator.index(), s.exponent)).collect()
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_reduced(&mut out, s);
        }
        BraidWord { syllables: out }
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Rebuilds a word after an edit while keeping the bottom caps of the
    /// closure that the unedited word had.
    ///
    /// The closure's bottom caps are chosen by the final generator, so a
    /// free cancellation that changes it would silently change the knot.
    /// Trailing syllables absorbed by the original caps (`s2` twists under
    /// side-by-side caps, `s1` twists under nested caps) are removed until
    /// the word ends on `bottom` again.
    pub fn renormalize_under_caps<I>(syllables: I, bottom: Generator) -> BraidWord
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut word = BraidWord::from_syllables(syllables);
        while word.last_generator().is_some_and(|g| g != bottom) {
            word.syllables.pop();
        }
        word
    }

    /// Closure-preserving simplification: free reduction, then dropping a
    /// leading `s2` syllable (absorbed by the top caps 0-1 and 2-3). A lone
    /// `s2` syllable stays, since it also fixes the bottom caps.
    pub fn reduce_closure_word(&self) -> BraidWord {
        let mut word = BraidWord::from_syllables(self.syllables.iter().copied());
        if word.first_generator() == Some(Generator::S2) && word.len() > 1 {
            word.syllables.remove(0);
        }
        word
    }

    /// Rewrites an even-length word (which ends in `s2` and is closed with
    /// nested bottom caps) into an odd-length word ending in `s1`.
    ///
    /// The final `s2^b` becomes `s2^(b-d) s1^(-d)`; `d = sign(b)` moves one
    /// crossing out of the last box, and when `|b| = 1` we take
    /// `d = -sign(b)` instead so the `s2` box survives.
    pub fn normalize_to_odd_length(&self) -> Result<BraidWord> {
        match self.first_generator() {
            None => return Err(Error::Unconvertible("empty word".into())),
            Some(Generator::S2) => {
                return Err(Error::Unconvertible("word must start with s1".into()))
            }
            Some(Generator::S1) => {}
        }
        if self.len() % 2 == 1 {
            return Ok(self.clone());
        }
        let last = *self.syllables.last().expect("nonempty");
        debug_assert_eq!(last.generator, Generator::S2);
        let b = last.exponent;
        let d = if b.abs() >= 2 { b.signum() } else { -b.signum() };
        let mut out = self.syllables[..self.len() - 1].to_vec();
        out.push(Syllable::s2(b - d));
        out.push(Syllable::s1(-d));
        Ok(BraidWord { syllables: out })
    }

    /// Removes the syllable at `site` without any renormalization.
    pub(crate) fn without(&self, sites: &[usize]) -> Vec<Syllable> {
        self.syllables
            .iter()
            .enumerate()
            .filter(|(i, _)| !sites.contains(i))
            .map(|(_, s)| *s)
            .collect()
    }

    /// Crossing offset of the first crossing of syllable `index`.
    pub fn crossing_offset(&self, index: usize) -> usize {
        self.syllables[..index]
            .iter()
            .map(|s| s.exponent.unsigned_abs() as usize)
            .sum()
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.generator == s.generator => {
            top.exponent += s.exponent;
            if top.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exponent == 1 {
                write!(f, "s{}", s.generator.index())?;
            } else {
                write!(f, "s{}^{}", s.generator.index(), s.exponent)?;
            }
        }
        Ok(())
    }
}

pub fn format_braid_word(word: &BraidWord) -> String {
    word.to_string()
}

/// Parses either the syllable grammar (`s1^3 s2^-2 s1`) or the exponent
/// vector form (`[3,-2,1]`).
pub fn parse_braid_word(text: &str) -> Result<BraidWord> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::UnknownToken(trimmed.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(BraidWord::identity());
        }
        let exps = inner
            .split(',')
            .map(|t| parse_int(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        return BraidWord::from_exponents(&exps);
    }
    let mut syllables = Vec::new();
    for token in trimmed.split_whitespace() {
        syllables.push(parse_syllable(token)?);
    }
    Ok(BraidWord::from_syllables(syllables))
}

fn parse_syllable(token: &str) -> Result<Syllable> {
    let rest = token
        .strip_prefix('s')
        .ok_or_else(|| Error::UnknownToken(token.to_string()))?;
    let (gen, exp) = match rest.split_once('^') {
        Some((g, e)) => (g, parse_int(e)?),
        None => (rest, 1),
    };
    let generator = match gen {
        "1" => Generator::S1,
        "2" => Generator::S2,
        _ => return Err(Error::UnknownToken(token.to_string())),
    };
    Ok(Syllable::new(generator, exp))
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| Error::MalformedInteger(s.to_string()))
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid_word(s)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct WordVisitor;

        impl<'de> Visitor<'de> for WordVisitor {
            type Value = BraidWord;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a braid word string or an exponent vector")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BraidWord, E> {
                parse_braid_word(v).map_err(E::custom)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<BraidWord, A::Error> {
                let mut exps = Vec::new();
                while let Some(e) = seq.next_element::<i64>()? {
                    exps.push(e);
                }
                BraidWord::from_exponents(&exps).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(WordVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(p: &[(usize, i64)]) -> BraidWord {
        BraidWord::from_pairs(p)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_braid_word("s1^3").unwrap().pairs(), vec![(1, 3)]);
        assert_eq!(parse_braid_word("s1^2 s2^-2").unwrap().pairs(), vec![(1, 2), (2, -2)]);
        assert_eq!(parse_braid_word("s1 s1^2").unwrap().pairs(), vec![(1, 3)]);
        assert_eq!(parse_braid_word("[3,-2,1]").unwrap().pairs(), vec![(1, 3), (2, -2), (1, 1)]);
        assert!(parse_braid_word("").unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_braid_word("s3^2"), Err(Error::UnknownToken(_))));
        assert!(matches!(parse_braid_word("x1"), Err(Error::UnknownToken(_))));
        assert!(matches!(parse_braid_word("s1^x"), Err(Error::MalformedInteger(_))));
        assert!(matches!(parse_braid_word("[3,0,1]"), Err(Error::ZeroExponent)));
        assert!(matches!(parse_braid_word("[3,a]"), Err(Error::MalformedInteger(_))));
        // a zero exponent in the syllable grammar just disappears
        assert!(parse_braid_word("s1^0").unwrap().is_empty());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[(1, 3)]).invert().pairs(), vec![(1, -3)]);
        assert!(BraidWord::identity().invert().is_empty());
        assert_eq!(w(&[(1, 2), (2, -1)]).invert().pairs(), vec![(2, 1), (1, -2)]);
    }

    #[test]
    fn concat_examples() {
        assert!(w(&[(1, 2)]).concat(&w(&[(1, -2)])).is_empty());
        assert_eq!(w(&[(1, 3)]).concat(&w(&[(2, 1)])).pairs(), vec![(1, 3), (2, 1)]);
        assert_eq!(
            w(&[(1, 3), (2, 1)]).concat(&w(&[(2, -1), (1, 2)])).pairs(),
            vec![(1, 5)]
        );
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(w(&[(1, 3)]).mirror().pairs(), vec![(1, -3)]);
        assert!(BraidWord::identity().mirror().is_empty());
        assert_eq!(w(&[(1, 2), (2, -2)]).mirror().pairs(), vec![(1, -2), (2, 2)]);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[(2, 5), (1, 3)]).reduce_closure_word().pairs(), vec![(1, 3)]);
        assert_eq!(
            w(&[(1, 3), (1, -3), (2, 1), (1, 3)]).reduce_closure_word().pairs(),
            vec![(1, 3)]
        );
        assert_eq!(w(&[(1, 3)]).reduce_closure_word().pairs(), vec![(1, 3)]);
    }

    #[test]
    fn odd_length_rewrites() {
        assert_eq!(w(&[(1, 3)]).normalize_to_odd_length().unwrap().pairs(), vec![(1, 3)]);
        assert_eq!(
            w(&[(1, 2), (2, -2)]).normalize_to_odd_length().unwrap().pairs(),
            vec![(1, 2), (2, -1), (1, 1)]
        );
        assert_eq!(
            w(&[(1, 2), (2, -1)]).normalize_to_odd_length().unwrap().pairs(),
            vec![(1, 2), (2, -2), (1, -1)]
        );
        assert!(w(&[(2, 2)]).normalize_to_odd_length().is_err());
        assert!(BraidWord::identity().normalize_to_odd_length().is_err());
    }

    #[test]
    fn caps_keep_their_type() {
        // s1^3 s2 s1^-3 s1^3 closes with side caps; the trailing s2 is absorbed.
        let raw = w(&[(1, 3), (2, 1), (1, -3)]).syllables().to_vec();
        let raw = raw.into_iter().chain([Syllable::s1(3)]);
        assert_eq!(BraidWord::renormalize_under_caps(raw, Generator::S1).pairs(), vec![(1, 3)]);
        let nested = [Syllable::s1(2), Syllable::s2(-2), Syllable::s1(1)];
        assert_eq!(
            BraidWord::renormalize_under_caps(nested, Generator::S2).pairs(),
            vec![(1, 2), (2, -2)]
        );
    }

    #[test]
    fn serde_forms() {
        let word = w(&[(1, 3), (2, -2)]);
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, "\"s1^3 s2^-2\"");
        let back: BraidWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
        let from_vec: BraidWord = serde_json::from_str("[3,-2]").unwrap();
        assert_eq!(from_vec, word);
    }

    fn arb_syllables() -> impl Strategy<Value = Vec<Syllable>> {
        prop::collection::vec(
            (1usize..=2, -4i64..=4).prop_map(|(g, e)| Syllable::new(Generator::from_index(g).unwrap(), e)),
            0..15,
        )
    }

    proptest! {
        #[test]
        fn normal_form_invariants(raw in arb_syllables()) {
            let word = BraidWord::from_syllables(raw);
            for pair in word.syllables().windows(2) {
                prop_assert_ne!(pair[0].generator, pair[1].generator);
            }
            prop_assert!(word.syllables().iter().all(|s| s.exponent != 0));
        }

        #[test]
        fn invert_is_involution(raw in arb_syllables()) {
            let word = BraidWord::from_syllables(raw);
            prop_assert_eq!(word.invert().invert(), word.clone());
            prop_assert!(word.concat(&word.invert()).is_empty());
        }

        #[test]
        fn concat_associative(a in arb_syllables(), b in arb_syllables(), c in arb_syllables()) {
            let (a, b, c) = (BraidWord::from_syllables(a), BraidWord::from_syllables(b), BraidWord::from_syllables(c));
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        }

        #[test]
        fn parse_format_round_trip(raw in arb_syllables()) {
            let word = BraidWord::from_syllables(raw);
            prop_assert_eq!(parse_braid_word(&format_braid_word(&word)).unwrap(), word);
        }

        #[test]
        fn odd_length_output_is_odd(raw in arb_syllables()) {
            let word = BraidWord::from_syllables(raw).reduce_closure_word();
            if word.first_generator() == Some(Generator::S1) {
                let odd = word.normalize_to_odd_length().unwrap();
                prop_assert_eq!(odd.len() % 2, 1);
                prop_assert_eq!(odd.first_generator(), Some(Generator::S1));
            }
        }

        #[test]
        fn reduce_is_idempotent(raw in arb_syllables()) {
            let once = BraidWord::from_syllables(raw).reduce_closure_word();
            prop_assert_eq!(once.reduce_closure_word(), once.clone());
        }
    }
}
