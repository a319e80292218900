//! Bundles of invariants used to compare closures.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{alexander_polynomial, jones_polynomial};
use crate::braid::BraidWord;
use crate::diagram::{plat_closure, PlanarDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::twobridge::{plat_fraction, Fraction};

pub const DEFAULT_ALEXANDER_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintPolicy {
    /// Alexander polynomials are skipped above this many crossings.
    pub alexander_cap: usize,
}

impl Default for FingerprintPolicy {
    fn default() -> Self {
        FingerprintPolicy { alexander_cap: DEFAULT_ALEXANDER_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub components: usize,
    #[serde(with = "crate::json")]
    pub determinant: BigInt,
    /// Knots with a known braid source only.
    pub fraction: Option<Fraction>,
    /// Knots only.
    pub jones: Option<LaurentPolynomial>,
    /// Knots within the crossing cap only.
    pub alexander: Option<LaurentPolynomial>,
    /// `span(Delta)/2`, exact for 2-bridge knots.
    pub genus: Option<u64>,
}

impl Fingerprint {
    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    /// Agreement on every invariant computed for both sides.
    pub fn same_knot_type(&self, other: &Fingerprint) -> bool {
        fn agree<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> bool {
            match (a, b) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        }
        self.components == other.components
            && self.determinant == other.determinant
            && self.fraction == other.fraction
            && agree(&self.jones, &other.jones)
            && agree(&self.alexander, &other.alexander)
    }
}

/// `|Delta(-1)|` of a knot diagram.
pub fn determinant(d: &PlanarDiagram) -> Result<BigInt> {
    let alex = alexander_polynomial(d)?;
    Ok(eval_minus_one(&alex))
}

fn eval_minus_one(alex: &LaurentPolynomial) -> BigInt {
    alex.eval(-1).expect("Laurent polynomials evaluate at -1").abs()
}

/// Invariants of a diagram. Closures get their fraction and Jones
/// polynomial from the braid word; bare PD codes use the state sum.
pub fn fingerprint(d: &PlanarDiagram, policy: &FingerprintPolicy) -> Result<Fingerprint> {
    let plat = d.source_word().map(plat_fraction).transpose()?;
    let knot = d.is_knot();
    let fraction = match &plat {
        Some((p, q)) if knot => Some(Fraction::new(p.clone(), q.clone())?),
        _ => None,
    };
    let jones = if knot { Some(jones_polynomial(d)?) } else { None };
    let alexander = if knot && d.crossing_count() <= policy.alexander_cap {
        Some(alexander_polynomial(d)?)
    } else {
        None
    };
    let genus = alexander.as_ref().map(|a| (a.span() / 2) as u64);
    let determinant = match (&alexander, &plat) {
        (Some(a), _) => eval_minus_one(a),
        (None, Some((p, _))) => p.clone(),
        (None, None) => determinant(d)?,
    };
    if let (Some(f), true) = (&fraction, alexander.is_some()) {
        if *f.p() != determinant {
            return Err(Error::MalformedPd(format!(
                "determinant {} disagrees with fraction {}",
                determinant, f
            )));
        }
    }
    Ok(Fingerprint {
        components: d.component_count(),
        determinant,
        fraction,
        jones,
        alexander,
        genus,
    })
}

/// Fingerprint of the plat closure of `word` (a leading `s2` is allowed).
pub fn fingerprint_word(word: &BraidWord, policy: &FingerprintPolicy) -> Result<Fingerprint> {
    fingerprint(&plat_closure(word)?, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variable;

    fn t(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Variable::T, terms.iter().copied())
    }

    fn fp(pairs: &[(usize, i64)], cap: usize) -> Fingerprint {
        fingerprint_word(&BraidWord::from_pairs(pairs), &FingerprintPolicy { alexander_cap: cap }).unwrap()
    }

    #[test]
    fn unknot_and_trefoil() {
        let u = fp(&[(1, 1)], 40);
        assert_eq!(u.fraction, Some(Fraction::unknot()));
        assert_eq!((u.determinant.clone(), u.genus), (BigInt::from(1), Some(0)));
        assert_eq!(u.jones, Some(t(&[(0, 1)])));
        let k = fp(&[(1, 3)], 40);
        assert_eq!(k.fraction, Some(Fraction::new(3, 1).unwrap()));
        assert_eq!(k.determinant, BigInt::from(3));
        assert_eq!(k.jones, Some(t(&[(1, 1), (3, 1), (4, -1)])));
        assert_eq!(k.alexander, Some(t(&[(1, 1), (0, -1), (-1, 1)])));
        assert_eq!(k.genus, Some(1));
    }

    #[test]
    fn links_omit_knot_fields() {
        let h = fp(&[(1, 2)], 40);
        assert_eq!(h.components, 2);
        assert_eq!((h.fraction, h.jones, h.alexander, h.genus), (None, None, None, None));
        assert_eq!(h.determinant, BigInt::from(2));
    }

    #[test]
    fn cap_drops_alexander_only() {
        let k = fp(&[(1, 5)], 4);
        assert!(k.alexander.is_none() && k.genus.is_none());
        assert!(k.jones.is_some());
        assert_eq!(k.determinant, BigInt::from(5));
        assert!(k.same_knot_type(&fp(&[(1, 5)], 40)));
    }

    #[test]
    fn bare_pd_codes() {
        let d = plat_closure(&BraidWord::from_pairs(&[(1, 3)])).unwrap();
        let pd = PlanarDiagram::from_pd_str(&d.to_pd_string()).unwrap();
        let f = fingerprint(&pd, &FingerprintPolicy::default()).unwrap();
        assert_eq!(f.fraction, None);
        assert_eq!(f.jones, Some(t(&[(1, 1), (3, 1), (4, -1)])));
        assert_eq!(f.determinant, BigInt::from(3));
    }
}
