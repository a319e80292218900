//! Kauffman bracket and Jones polynomial.
//!
//! Two independent evaluations: a state sum over the PD code, and a scan of
//! the plat closure that tracks how the four open strand ends are paired.
//! Both are normalized so the crossingless unknot has bracket 1.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::braid::BraidWord;
use crate::diagram::{PlanarDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Variable};

/// Largest diagram accepted by the state sum.
pub const NAIVE_CROSSING_LIMIT: usize = 22;

/// `delta = -A^2 - A^-2`
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(Variable::A, [(2, -1), (-2, -1)])
}

/// Sums `A^(a-b) delta^(loops-1)` from a histogram of states.
fn assemble(hist: HashMap<(i64, usize), i64>) -> LaurentPolynomial {
    let delta = loop_value();
    let mut powers = vec![LaurentPolynomial::one(Variable::A)];
    let mut out = LaurentPolynomial::zero(Variable::A);
    for ((exp, loops), count) in hist {
        while powers.len() < loops {
            let next = powers.last().unwrap() * &delta;
            powers.push(next);
        }
        let term = powers[loops - 1].shift(exp).scale(&BigInt::from(count));
        out = &out + &term;
    }
    out
}

/// Exhaustive state sum over the PD code.
pub fn kauffman_bracket_naive(d: &PlanarDiagram) -> Result<LaurentPolynomial> {
    let n = d.crossing_count();
    if n > NAIVE_CROSSING_LIMIT {
        return Err(Error::MalformedPd(format!(
            "{} crossings exceed the state-sum limit of {}",
            n, NAIVE_CROSSING_LIMIT
        )));
    }
    if n == 0 {
        return Ok(loop_value().pow(d.free_loops().saturating_sub(1) as u32));
    }
    let mut index: HashMap<usize, usize> = HashMap::new();
    for c in d.crossings() {
        for e in c.edges {
            let k = index.len();
            index.entry(e).or_insert(k);
        }
    }
    let quads: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|c| c.edges.map(|e| index[&e]))
        .collect();
    let labels = index.len();
    let mut hist: HashMap<(i64, usize), i64> = HashMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(labels);
        let mut a = 0i64;
        for (k, q) in quads.iter().enumerate() {
            if state >> k & 1 == 0 {
                a += 1;
                uf.union(q[0], q[1]);
                uf.union(q[2], q[3]);
            } else {
                a -= 1;
                uf.union(q[0], q[3]);
                uf.union(q[1], q[2]);
            }
        }
        let loops = uf.count() + d.free_loops();
        *hist.entry((a, loops)).or_insert(0) += 1;
    }
    Ok(assemble(hist))
}

// Planar pairings of the four strand ends at a level.
const SIDE: u8 = 0; // 0-1, 2-3
const NESTED: u8 = 1; // 0-3, 1-2

fn paired(m: u8, g: usize) -> bool {
    match m {
        SIDE => g == 0 || g == 2,
        _ => g == 1,
    }
}

/// Scan of a plat word, linear in the number of crossings. A leading `s2`
/// is allowed.
pub fn kauffman_bracket_transfer(word: &BraidWord) -> Result<LaurentPolynomial> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let delta = loop_value();
    // state: (matching, loops picked up so far) -> A exponent polynomial
    let mut states: HashMap<u8, LaurentPolynomial> = HashMap::new();
    states.insert(SIDE, LaurentPolynomial::one(Variable::A));
    for s in word.syllables() {
        let g = s.generator.index();
        // vertical smoothing carries A for a positive crossing
        let (vert, horiz) = if s.exponent > 0 { (1, -1) } else { (-1, 1) };
        for _ in 0..s.exponent.unsigned_abs() {
            let mut next: HashMap<u8, LaurentPolynomial> = HashMap::new();
            for (&m, poly) in &states {
                let v = poly.shift(vert);
                add_into(&mut next, m, v);
                let h = poly.shift(horiz);
                if paired(m, g) {
                    add_into(&mut next, m, &h * &delta);
                } else {
                    let to = if g == 1 { NESTED } else { SIDE };
                    add_into(&mut next, to, h);
                }
            }
            states = next;
        }
    }
    let bottom = match word.last_generator() {
        Some(crate::braid::Generator::S2) => NESTED,
        _ => SIDE,
    };
    let mut out = LaurentPolynomial::zero(Variable::A);
    for (m, poly) in states {
        let closed = if m == bottom { &poly * &delta } else { poly };
        out = &out + &closed;
    }
    Ok(out)
}

fn add_into(map: &mut HashMap<u8, LaurentPolynomial>, key: u8, p: LaurentPolynomial) {
    match map.get_mut(&key) {
        Some(existing) => *existing = &*existing + &p,
        None => {
            map.insert(key, p);
        }
    }
}

/// `V(t) = (-A^3)^-w <D>` with `t = A^-4`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> Result<LaurentPolynomial> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * writhe).scale(&BigInt::from(sign));
    f.substitute(Variable::T, |e| if e % 4 == 0 { Some(-e / 4) } else { None })
        .ok_or_else(|| Error::MalformedPd("bracket exponents not compatible with t = A^-4".into()))
}

/// Jones polynomial of a closure via the transfer scan, or of a bare PD
/// code via the state sum.
pub fn jones_polynomial(d: &PlanarDiagram) -> Result<LaurentPolynomial> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot { components: d.component_count() });
    }
    let bracket = match d.source_word() {
        Some(w) => kauffman_bracket_transfer(w)?,
        None => kauffman_bracket_naive(d)?,
    };
    jones_from_bracket(&bracket, d.writhe())
}
