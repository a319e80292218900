//! The `K_beta(m, n)` family, syllable surgery, towers, and the genus and
//! Alexander obstructions to adjacency.
//!
//! The family word is `beta s2^m beta^-1 s2^n beta`. Deleting either `s2`
//! box, or both, leaves a word whose closure is the closure of `beta`.
//! Whether a box is surrounded by a genuine crossing circle depends on the
//! orientation of the two strands through it, so every witness records the
//! algebraic intersection at both boxes alongside the surgery results.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Generator, SiteRef, Syllable};
use crate::diagram::{site_algebraic_intersection, two_bridge_closure};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, fingerprint_word, Fingerprint, FingerprintPolicy};
use crate::poly::{LaurentPolynomial, Variable};

/// How a family parameter maps to a syllable exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistUnit {
    /// `s2^m`: the parameter counts crossings.
    #[default]
    Half,
    /// `s2^(2m)`: the parameter counts full twists.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub m: i64,
    pub n: i64,
    #[serde(default)]
    pub unit: TwistUnit,
}

impl FamilyParams {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        Self::with_unit(m, n, TwistUnit::Half)
    }

    pub fn full_twists(m: i64, n: i64) -> Result<Self> {
        Self::with_unit(m, n, TwistUnit::Full)
    }

    pub fn with_unit(m: i64, n: i64, unit: TwistUnit) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroParameter { m, n });
        }
        Ok(FamilyParams { m, n, unit })
    }

    /// Exponents of the two `s2` boxes.
    pub fn exponents(&self) -> (i64, i64) {
        match self.unit {
            TwistUnit::Half => (self.m, self.n),
            TwistUnit::Full => (2 * self.m, 2 * self.n),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            TwistUnit::Half => write!(f, "m={},n={}", self.m, self.n),
            TwistUnit::Full => write!(f, "m={},n={},full", self.m, self.n),
        }
    }
}

/// A box of the word together with the number of full twists a surgery
/// there inserts. Removing a box of odd exponent is not a whole number of
/// full twists, so `order` is then absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgerySite {
    pub site: SiteRef,
    pub order: Option<i64>,
}

impl SurgerySite {
    pub fn new(site: SiteRef, order: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(SurgerySite { site, order: Some(order) })
    }

    /// Surgery that deletes a box of the given exponent.
    fn deleting(site: SiteRef, exponent: i64) -> Self {
        let order = (exponent % 2 == 0).then_some(-exponent / 2);
        SurgerySite { site, order }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosmeticFlag {
    Trivializable,
    Cosmetic,
    Unknown,
}

/// Why a witness failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessIssue {
    FamilyIsLink { components: usize },
    SiteNotCrossingCircle { site: usize, intersection: i64 },
    HalfTwistDeletion { site: usize, exponent: i64 },
    SurgeryMismatch { subset: String },
}

impl fmt::Display for WitnessIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessIssue::FamilyIsLink { components } => {
                write!(f, "family closure is a {}-component link", components)
            }
            WitnessIssue::SiteNotCrossingCircle { site, intersection } => {
                write!(f, "site {} has algebraic intersection {}", site, intersection)
            }
            WitnessIssue::HalfTwistDeletion { site, exponent } => {
                write!(f, "site {} deletes s2^{}, not a whole number of full twists", site, exponent)
            }
            WitnessIssue::SurgeryMismatch { subset } => {
                write!(f, "surgery on {} does not give the base knot", subset)
            }
        }
    }
}

pub const SUBSETS: [&str; 3] = ["C1", "C2", "C1+C2"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyWitness {
    pub base_word: BraidWord,
    pub params: FamilyParams,
    pub family_word: BraidWord,
    pub sites: [SurgerySite; 2],
    /// Absent when the family closure is a link.
    pub site_intersections: [Option<i64>; 2],
    /// C1 only, C2 only, both.
    pub surgered_words: [BraidWord; 3],
    pub surgered_fingerprints: [Fingerprint; 3],
    pub family_fingerprint: Fingerprint,
    pub base_fingerprint: Fingerprint,
    pub issues: Vec<WitnessIssue>,
    pub verdict: bool,
    pub cosmetic_flag: CosmeticFlag,
}

fn check_beta(beta: &BraidWord) -> Result<()> {
    match beta.first_generator() {
        None => return Err(Error::EmptyWord),
        Some(Generator::S2) => return Err(Error::LeadingSigma2),
        Some(Generator::S1) => {}
    }
    if beta.len().is_multiple_of(2) {
        return Err(Error::EvenLength(beta.len()));
    }
    let d = two_bridge_closure(beta)?;
    if !d.is_knot() {
        return Err(Error::NotAKnot { components: d.component_count() });
    }
    Ok(())
}

/// `beta s2^m beta^-1 s2^n beta` and its two `s2` boxes. No syllables
/// cancel, so the boxes sit at indices `L` and `2L + 1`.
pub fn k_beta_family(beta: &BraidWord, params: FamilyParams) -> Result<(BraidWord, [SurgerySite; 2])> {
    if params.m == 0 || params.n == 0 {
        return Err(Error::ZeroParameter { m: params.m, n: params.n });
    }
    check_beta(beta)?;
    let (em, en) = params.exponents();
    let inverse = beta.invert();
    let syllables = beta
        .syllables()
        .iter()
        .copied()
        .chain([Syllable::s2(em)])
        .chain(inverse.syllables().iter().copied())
        .chain([Syllable::s2(en)])
        .chain(beta.syllables().iter().copied());
    let word = BraidWord::from_syllables(syllables);
    let l = beta.len();
    debug_assert_eq!(word.len(), 3 * l + 2);
    Ok((word, [SurgerySite::deleting(SiteRef(l), em), SurgerySite::deleting(SiteRef(2 * l + 1), en)]))
}

/// Removes the syllables at `sites` while keeping the bottom caps of `w`.
pub fn delete_syllables(w: &BraidWord, sites: &[SiteRef]) -> Result<BraidWord> {
    for s in sites {
        s.checked(w)?;
    }
    let bottom = w.last_generator().expect("a valid site implies a nonempty word");
    let idx: Vec<usize> = sites.iter().map(|s| s.0).collect();
    Ok(BraidWord::renormalize_under_caps(w.without(&idx), bottom))
}

/// Surgery by deleting one syllable; the result keeps the caps of `w`.
pub fn delete_syllable_surgery(w: &BraidWord, s: SiteRef) -> Result<BraidWord> {
    delete_syllables(w, &[s])
}

/// Order-d twist surgery: the exponent at the site moves by `2d`.
pub fn generalized_crossing_change(w: &BraidWord, s: SurgerySite) -> Result<BraidWord> {
    s.site.checked(w)?;
    let d = match s.order {
        Some(d) if d != 0 => d,
        _ => return Err(Error::ZeroOrder),
    };
    let closure = two_bridge_closure(w)?;
    let value = site_algebraic_intersection(&closure, s.site)?;
    if value != 0 {
        return Err(Error::NonzeroIntersection { site: s.site.0, value });
    }
    let bottom = w.last_generator().expect("nonempty");
    let syllables = w.syllables().iter().enumerate().map(|(i, syl)| {
        if i == s.site.0 {
            Syllable::new(syl.generator, syl.exponent + 2 * d)
        } else {
            *syl
        }
    });
    Ok(BraidWord::renormalize_under_caps(syllables, bottom))
}

/// Builds the family, performs the three surgeries and compares every
/// closure with the closure of `beta`.
pub fn verify_two_adjacency(
    beta: &BraidWord,
    params: FamilyParams,
    policy: &FingerprintPolicy,
) -> Result<AdjacencyWitness> {
    let (family_word, sites) = k_beta_family(beta, params)?;
    let family = two_bridge_closure(&family_word)?;
    let mut issues = Vec::new();

    let site_intersections = if family.is_knot() {
        [
            Some(site_algebraic_intersection(&family, sites[0].site)?),
            Some(site_algebraic_intersection(&family, sites[1].site)?),
        ]
    } else {
        issues.push(WitnessIssue::FamilyIsLink { components: family.component_count() });
        [None, None]
    };
    for (s, value) in sites.iter().zip(site_intersections) {
        if let Some(v) = value.filter(|&v| v != 0) {
            issues.push(WitnessIssue::SiteNotCrossingCircle { site: s.site.0, intersection: v });
        }
    }
    for s in &sites {
        if s.order.is_none() {
            let exponent = family_word.syllables()[s.site.0].exponent;
            issues.push(WitnessIssue::HalfTwistDeletion { site: s.site.0, exponent });
        }
    }

    let surgered_words = [
        delete_syllable_surgery(&family_word, sites[0].site)?,
        delete_syllable_surgery(&family_word, sites[1].site)?,
        delete_syllables(&family_word, &[sites[0].site, sites[1].site])?,
    ];
    let base_fingerprint = fingerprint_word(beta, policy)?;
    let family_fingerprint = fingerprint(&family, policy)?;
    let surgered: Vec<Fingerprint> = surgered_words
        .iter()
        .map(|w| fingerprint_word(w, policy))
        .collect::<Result<_>>()?;
    let surgered_fingerprints: [Fingerprint; 3] = surgered.try_into().expect("three surgeries");
    for (fp, subset) in surgered_fingerprints.iter().zip(SUBSETS) {
        if !fp.same_knot_type(&base_fingerprint) {
            issues.push(WitnessIssue::SurgeryMismatch { subset: subset.to_string() });
        }
    }

    let verdict = issues.is_empty();
    Ok(AdjacencyWitness {
        base_word: beta.clone(),
        params,
        family_word,
        sites,
        site_intersections,
        surgered_words,
        surgered_fingerprints,
        family_fingerprint,
        base_fingerprint,
        issues,
        verdict,
        // every target here is 2-bridge, hence isolated among cosmetic edges
        cosmetic_flag: if verdict { CosmeticFlag::Trivializable } else { CosmeticFlag::Unknown },
    })
}

/// Verifies every parameter cell in parallel; results keep the input order.
pub fn verify_grid(
    beta: &BraidWord,
    grid: &[FamilyParams],
    policy: &FingerprintPolicy,
) -> Vec<Result<AdjacencyWitness>> {
    grid.par_iter().map(|&p| verify_two_adjacency(beta, p, policy)).collect()
}

/// `beta_(i+1) = beta_i s2^m beta_i^-1 s2^n beta_i`
pub fn tower_extend(beta_i: &BraidWord, params_i: FamilyParams) -> Result<BraidWord> {
    Ok(k_beta_family(beta_i, params_i)?.0)
}

/// Every `m, n` with `1 <= |m|, |n| <= bound`, sorted.
pub fn symmetric_grid(bound: i64, unit: TwistUnit) -> Vec<FamilyParams> {
    let values: Vec<i64> = (-bound..=bound).filter(|&x| x != 0).collect();
    values
        .iter()
        .flat_map(|&m| values.iter().map(move |&n| FamilyParams { m, n, unit }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknotObstruction {
    ObstructedGenus,
    ObstructedAlexander,
    NotObstructed,
}

impl fmt::Display for UnknotObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknotObstruction::ObstructedGenus => "obstructed_genus",
            UnknotObstruction::ObstructedAlexander => "obstructed_alexander",
            UnknotObstruction::NotObstructed => "not_obstructed",
        })
    }
}

/// Can a knot of genus `g` with Alexander polynomial `delta` be
/// n-adjacent to the unknot? `NotObstructed` only means neither test fires.
pub fn obstruct_unknot_adjacency(g: u64, n: u64, delta: &LaurentPolynomial) -> Result<UnknotObstruction> {
    if g == 0 {
        return Err(Error::ObstructionDomain("genus 0 is the unknot".into()));
    }
    if n == 0 {
        return Err(Error::ObstructionDomain("adjacency order must be positive".into()));
    }
    if n + 1 >= 3 * g {
        Ok(UnknotObstruction::ObstructedGenus)
    } else if n >= 3 && *delta != LaurentPolynomial::one(Variable::T) {
        Ok(UnknotObstruction::ObstructedAlexander)
    } else {
        Ok(UnknotObstruction::NotObstructed)
    }
}

/// True when `K -> K'` of order `n` is impossible by the bound `n <= 6g(K) - 3`
/// for `g(K) > g(K')`.
pub fn obstruct_pair_adjacency(g_k: u64, g_k2: u64, n: u64) -> bool {
    g_k > g_k2 && n + 3 > 6 * g_k
}

/// True when an adjacency onto a fibered knot would contradict the rule
/// that the two knots are isotopic or the source has larger genus.
pub fn obstruct_fibered_target(target_fibered: bool, g_k: u64, g_k2: u64, isotopic: bool) -> bool {
    target_fibered && !isotopic && g_k <= g_k2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twobridge::Fraction;

    fn w(p: &[(usize, i64)]) -> BraidWord {
        BraidWord::from_pairs(p)
    }

    fn trefoil() -> BraidWord {
        w(&[(1, 3)])
    }

    fn policy() -> FingerprintPolicy {
        FingerprintPolicy::default()
    }

    #[test]
    fn family_words() {
        let (word, sites) = k_beta_family(&trefoil(), FamilyParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(word, w(&[(1, 3), (2, 1), (1, -3), (2, 1), (1, 3)]));
        assert_eq!((sites[0].site, sites[1].site), (SiteRef(1), SiteRef(3)));
        assert_eq!((sites[0].order, sites[1].order), (None, None));
        let (word, _) = k_beta_family(&trefoil(), FamilyParams::new(2, -1).unwrap()).unwrap();
        assert_eq!(word, w(&[(1, 3), (2, 2), (1, -3), (2, -1), (1, 3)]));
        let (_, sites) = k_beta_family(&trefoil(), FamilyParams::full_twists(1, -2).unwrap()).unwrap();
        assert_eq!((sites[0].order, sites[1].order), (Some(-1), Some(2)));
    }

    #[test]
    fn family_errors() {
        let p = FamilyParams::new(1, 1).unwrap();
        assert_eq!(k_beta_family(&w(&[(1, 2), (2, -2)]), p), Err(Error::EvenLength(2)));
        assert_eq!(k_beta_family(&w(&[(1, 2)]), p), Err(Error::NotAKnot { components: 2 }));
        assert_eq!(FamilyParams::new(0, 1), Err(Error::ZeroParameter { m: 0, n: 1 }));
    }

    #[test]
    fn deletion_examples() {
        let (word, sites) = k_beta_family(&trefoil(), FamilyParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(delete_syllable_surgery(&word, sites[0].site).unwrap(), w(&[(2, 1), (1, 3)]));
        // the trailing s2 box is absorbed by the side-by-side caps
        assert_eq!(delete_syllable_surgery(&word, sites[1].site).unwrap(), trefoil());
        assert_eq!(delete_syllables(&word, &[sites[0].site, sites[1].site]).unwrap(), trefoil());
        assert!(matches!(
            delete_syllable_surgery(&word, SiteRef(5)),
            Err(Error::SiteOutOfRange { index: 5, len: 5 })
        ));
    }

    #[test]
    fn crossing_change_examples() {
        let word = w(&[(1, 3), (2, 2), (1, -3), (2, 2), (1, 3)]);
        let s = SurgerySite::new(SiteRef(1), -1).unwrap();
        assert_eq!(generalized_crossing_change(&word, s).unwrap(), w(&[(2, 2), (1, 3)]));
        let s = SurgerySite::new(SiteRef(3), 1).unwrap();
        assert_eq!(
            generalized_crossing_change(&word, s).unwrap(),
            w(&[(1, 3), (2, 2), (1, -3), (2, 4), (1, 3)])
        );
        let s = SurgerySite::new(SiteRef(0), 1).unwrap();
        assert_eq!(
            generalized_crossing_change(&trefoil(), s),
            Err(Error::NonzeroIntersection { site: 0, value: -2 })
        );
        assert_eq!(SurgerySite::new(SiteRef(0), 0), Err(Error::ZeroOrder));
    }

    #[test]
    fn even_parameters_verify() {
        let wit = verify_two_adjacency(&trefoil(), FamilyParams::new(2, -2).unwrap(), &policy()).unwrap();
        assert!(wit.verdict, "{:?}", wit.issues);
        assert_eq!(wit.site_intersections, [Some(0), Some(0)]);
        for fp in &wit.surgered_fingerprints {
            assert_eq!(fp.fraction, Some(Fraction::new(3, 1).unwrap()));
        }
        assert_eq!(wit.cosmetic_flag, CosmeticFlag::Trivializable);
    }

    #[test]
    fn odd_parameters_are_reported() {
        let wit = verify_two_adjacency(&trefoil(), FamilyParams::new(1, 1).unwrap(), &policy()).unwrap();
        assert!(!wit.verdict);
        assert_eq!(wit.issues[0], WitnessIssue::FamilyIsLink { components: 2 });
        // the deletions themselves still return the trefoil
        for fp in &wit.surgered_fingerprints {
            assert_eq!(fp.fraction, Some(Fraction::new(3, 1).unwrap()));
        }
        let wit = verify_two_adjacency(&trefoil(), FamilyParams::new(2, -3).unwrap(), &policy()).unwrap();
        assert!(!wit.verdict);
        assert!(wit.issues.contains(&WitnessIssue::SiteNotCrossingCircle { site: 1, intersection: -2 }));
        assert_eq!(wit.site_intersections[1], Some(0));
    }

    #[test]
    fn full_twists_verify_odd_parameters() {
        for p in symmetric_grid(2, TwistUnit::Full) {
            let wit = verify_two_adjacency(&trefoil(), p, &policy()).unwrap();
            assert!(wit.verdict, "{}: {:?}", p, wit.issues);
        }
    }

    #[test]
    fn towers_keep_odd_length() {
        let p = FamilyParams::full_twists(1, 1).unwrap();
        let b1 = tower_extend(&trefoil(), p).unwrap();
        let b2 = tower_extend(&b1, p).unwrap();
        assert_eq!((b1.len(), b2.len()), (5, 17));
        // with literal exponents the first level is already a link
        let half = FamilyParams::new(1, 1).unwrap();
        let literal = tower_extend(&trefoil(), half).unwrap();
        assert_eq!(tower_extend(&literal, half), Err(Error::NotAKnot { components: 2 }));
    }

    #[test]
    fn obstruction_tables() {
        let delta = LaurentPolynomial::from_terms(Variable::T, [(1, 1), (0, -1), (-1, 1)]);
        let one = LaurentPolynomial::one(Variable::T);
        assert_eq!(obstruct_unknot_adjacency(1, 2, &delta).unwrap(), UnknotObstruction::ObstructedGenus);
        assert_eq!(obstruct_unknot_adjacency(2, 3, &delta).unwrap(), UnknotObstruction::ObstructedAlexander);
        assert_eq!(obstruct_unknot_adjacency(2, 2, &delta).unwrap(), UnknotObstruction::NotObstructed);
        assert_eq!(obstruct_unknot_adjacency(3, 4, &one).unwrap(), UnknotObstruction::NotObstructed);
        assert!(obstruct_unknot_adjacency(0, 2, &delta).is_err());
        assert!(obstruct_pair_adjacency(1, 0, 4));
        assert!(!obstruct_pair_adjacency(1, 0, 3));
        assert!(!obstruct_pair_adjacency(1, 2, 100));
        assert!(obstruct_fibered_target(true, 0, 1, false));
        assert!(!obstruct_fibered_target(true, 2, 1, false));
        assert!(!obstruct_fibered_target(false, 0, 1, false));
    }
}
