//! Schubert normal forms of 2-bridge knots and links.
//!
//! A closure word is read as a product of 2x2 integer matrices acting on
//! the vector (p, q), starting from (0, 1): `s1^a` adds `a*q` to `p`, and
//! `s2^b` subtracts `b*p` from `q`. A word ending in `s2` is closed with
//! nested caps, which turns the fraction `p/q` into `-q/p`.
//!
//! Two fractions give the same oriented knot exactly when the numerators
//! agree and `q' = q^(+-1) mod p`. The canonical representative takes the
//! smaller of the two residues.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{BraidWord, Generator, Syllable};
use crate::error::{Error, Result};
use crate::json::{from_number, to_number};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    /// Canonical representative of the class of `p/q`. Any sign of `p`
    /// and any residue of `q` is accepted.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        let invalid = || Error::InvalidFraction { p: p.clone(), q: q.clone() };
        if p.is_zero() || !p.gcd(&q).is_one() {
            return Err(invalid());
        }
        let (pa, qa) = if p.is_negative() { (-&p, -&q) } else { (p.clone(), q.clone()) };
        if pa.is_one() {
            return Ok(Fraction { p: pa, q: BigInt::zero() });
        }
        let r = qa.mod_floor(&pa);
        let inv = mod_inverse(&r, &pa).ok_or_else(invalid)?;
        Ok(Fraction { p: pa, q: r.min(inv) })
    }

    pub fn unknot() -> Self {
        Fraction { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_knot(&self) -> bool {
        self.p.is_odd()
    }

    pub fn is_unknot(&self) -> bool {
        self.p.is_one()
    }

    pub fn mirror(&self) -> Fraction {
        Fraction::new(self.p.clone(), -&self.q).expect("mirror of a valid fraction")
    }

    pub fn bits(&self) -> u64 {
        self.p.bits()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// `S(p,q)`, `p/q` or `p,q`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("S(")
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(s);
        let (a, b) = inner
            .split_once(',')
            .or_else(|| inner.split_once('/'))
            .ok_or_else(|| Error::MalformedInteger(s.to_string()))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::MalformedInteger(x.trim().to_string()))
        };
        Fraction::new(parse(a)?, parse(b)?)
    }
}

#[derive(Serialize, Deserialize)]
struct FractionRepr {
    p: serde_json::Number,
    q: serde_json::Number,
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FractionRepr { p: to_number(&self.p), q: to_number(&self.q) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = FractionRepr::deserialize(deserializer)?;
        let parse = |n: &serde_json::Number| {
            from_number(n).ok_or_else(|| D::Error::custom(format!("not an integer: {}", n)))
        };
        let f = Fraction::new(parse(&r.p)?, parse(&r.q)?).map_err(D::Error::custom)?;
        if f.p.to_string() != r.p.to_string() || f.q.to_string() != r.q.to_string() {
            return Err(D::Error::custom(format!("fraction {}/{} is not canonical", r.p, r.q)));
        }
        Ok(f)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// `[a1, ..., an]` read as `a1 + 1/(a2 + 1/(... + 1/an))`.
pub fn cf_to_fraction(terms: &[i64]) -> Result<Fraction> {
    if terms.is_empty() {
        return Err(Error::EmptyContinuedFraction);
    }
    // product of [[a,1],[1,0]]; first column is (p, q)
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for &a in terms.iter().rev() {
        let np = BigInt::from(a) * &p + &q;
        q = p;
        p = np;
    }
    Fraction::new(p, q)
}

/// Numerator and residue of the closure before normalization. The
/// numerator is zero for the two-component unlink.
pub fn plat_fraction(word: &BraidWord) -> Result<(BigInt, BigInt)> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    for s in word.syllables() {
        let e = BigInt::from(s.exponent);
        match s.generator {
            Generator::S1 => p += e * &q,
            Generator::S2 => q -= e * &p,
        }
    }
    if word.last_generator() == Some(Generator::S2) {
        let np = -q;
        q = p;
        p = np;
    }
    if p.is_negative() {
        p = -p;
        q = -q;
    }
    if !p.is_zero() {
        q = q.mod_floor(&p);
    }
    Ok((p, q))
}

/// Schubert normal form of the closure of `word`.
pub fn word_to_fraction(word: &BraidWord) -> Result<Fraction> {
    let (p, q) = plat_fraction(word)?;
    Fraction::new(p, q)
}

pub fn schubert_equivalent(a: &Fraction, b: &Fraction) -> bool {
    a == b
}

/// Positive continued fraction of `p/q` for `0 <= q < p`.
fn continued_fraction(p: &BigInt, q: &BigInt) -> Vec<i64> {
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (d, r) = a.div_rem(&b);
        out.push(i64::try_from(d).expect("partial quotient fits in i64"));
        a = b;
        b = r;
    }
    if out.is_empty() {
        out.push(i64::try_from(a).expect("numerator fits in i64"));
    }
    out
}

/// Odd-length word `s1^c1 s2^-c2 s1^c3 ...` whose closure has the given
/// normal form. Only knots are accepted.
pub fn fraction_to_canonical_word(f: &Fraction) -> Result<BraidWord> {
    if !f.is_knot() {
        return Err(Error::NonKnotFraction { p: f.p.clone() });
    }
    if f.is_unknot() {
        return Ok(BraidWord::from_pairs(&[(1, 1)]));
    }
    let mut cf = continued_fraction(&f.p, &f.q);
    if cf.len().is_multiple_of(2) {
        let c = cf.pop().expect("nonempty");
        if c > 1 {
            cf.push(c - 1);
            cf.push(1);
        } else {
            *cf.last_mut().expect("length at least two") += 1;
        }
    }
    let syllables = cf.iter().enumerate().map(|(i, &c)| {
        if i % 2 == 0 {
            Syllable::s1(c)
        } else {
            Syllable::s2(-c)
        }
    });
    Ok(BraidWord::from_syllables(syllables))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn wf(pairs: &[(usize, i64)]) -> Fraction {
        word_to_fraction(&BraidWord::from_pairs(pairs)).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(frac(5, 3), frac(5, 2));
        assert_eq!(frac(-5, 2), frac(5, 3));
        assert_eq!(frac(7, 4), frac(7, 2));
        assert_eq!(frac(1, 7), Fraction::unknot());
        assert_ne!(frac(3, 1), frac(3, 2));
        assert!(Fraction::new(4, 2).is_err());
        assert!(Fraction::new(0, 1).is_err());
    }

    #[test]
    fn small_words() {
        assert_eq!(wf(&[(1, 3)]), frac(3, 1));
        assert_eq!(wf(&[(1, -3)]), frac(3, 2));
        assert_eq!(wf(&[(1, 1), (2, -2)]), frac(3, 2));
        assert_eq!(wf(&[(1, 2), (2, -2)]), frac(5, 2));
        assert_eq!(wf(&[(1, 5)]), frac(5, 1));
        assert_eq!(wf(&[(1, 1)]), Fraction::unknot());
        assert_eq!(wf(&[(2, 1), (1, 3)]), frac(3, 1));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf_to_fraction(&[3]).unwrap(), frac(3, 1));
        assert_eq!(cf_to_fraction(&[2, 2]).unwrap(), frac(5, 2));
        assert_eq!(cf_to_fraction(&[2, 1, 1]).unwrap(), frac(5, 2));
        assert_eq!(cf_to_fraction(&[]), Err(Error::EmptyContinuedFraction));
    }

    #[test]
    fn canonical_words() {
        let w = fraction_to_canonical_word(&frac(5, 2)).unwrap();
        assert_eq!(w, BraidWord::from_pairs(&[(1, 2), (2, -1), (1, 1)]));
        assert!(matches!(
            fraction_to_canonical_word(&frac(4, 1)),
            Err(Error::NonKnotFraction { .. })
        ));
    }

    #[test]
    fn text_and_json() {
        assert_eq!("S(5,3)".parse::<Fraction>().unwrap(), frac(5, 2));
        assert_eq!("7/3".parse::<Fraction>().unwrap(), frac(7, 3));
        let f = frac(4630395, 1808269);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"p":4630395,"q":1808269}"#);
        assert_eq!(serde_json::from_str::<Fraction>(&json).unwrap(), f);
        assert!(serde_json::from_str::<Fraction>(r#"{"p":5,"q":3}"#).is_err());
    }

    #[test]
    fn big_numbers_survive_json() {
        let p: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let f = Fraction::new(p, 2).unwrap();
        let back: Fraction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    proptest! {
        #[test]
        fn canonical_word_closes_to_its_fraction(p in 1i64..2000, q in 0i64..2000) {
            let Ok(f) = Fraction::new(p, q % p) else { return Ok(()) };
            prop_assume!(f.is_knot());
            let w = fraction_to_canonical_word(&f).unwrap();
            prop_assert_eq!(w.len() % 2, 1);
            prop_assert_eq!(word_to_fraction(&w).unwrap(), f);
        }

        #[test]
        fn alternating_words_match_their_continued_fraction(
            terms in prop::collection::vec(1i64..6, 1..7)
        ) {
            let word = BraidWord::from_syllables(terms.iter().enumerate().map(|(i, &c)| {
                if i % 2 == 0 { Syllable::s1(c) } else { Syllable::s2(-c) }
            }));
            prop_assert_eq!(word_to_fraction(&word).unwrap(), cf_to_fraction(&terms).unwrap());
        }

        #[test]
        fn mirror_negates_residue(p in 1i64..500, q in 0i64..500) {
            let Ok(f) = Fraction::new(p, q % p) else { return Ok(()) };
            prop_assert_eq!(f.mirror().mirror(), f.clone());
        }
    }
}
