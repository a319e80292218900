//! Alexander polynomial from the Wirtinger presentation.
//!
//! Fox derivatives of the crossing relations give an n x n matrix over
//! Z[t]; any (n-1)-minor is the Alexander polynomial up to a unit. The
//! minor is taken by fraction-free elimination with exact division.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diagram::{PlanarDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Variable};

/// Dense polynomial in t, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<BigInt>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: i64) -> Self {
        Poly(vec![BigInt::from(c)]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_scaled(&mut self, other: &Poly, shift: usize, c: &BigInt) {
        if self.0.len() < other.0.len() + shift {
            self.0.resize(other.0.len() + shift, BigInt::zero());
        }
        for (i, x) in other.0.iter().enumerate() {
            self.0[i + shift] += x * c;
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, 0, &BigInt::from(-1));
        out.trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, d: &Poly) -> Poly {
        let mut rem = self.clone();
        if rem.is_zero() {
            return Poly::zero();
        }
        let dl = d.0.len() - 1;
        let lead = d.0.last().expect("nonzero divisor");
        let mut q = vec![BigInt::zero(); rem.0.len().saturating_sub(dl).max(1)];
        while !rem.is_zero() && rem.0.len() > dl {
            let k = rem.0.len() - 1 - dl;
            let (c, r) = rem.0.last().unwrap().div_rem(lead);
            assert!(r.is_zero(), "inexact division in elimination");
            rem.add_scaled(d, k, &-&c);
            q[k] = c;
            rem = rem.trimmed();
        }
        assert!(rem.is_zero(), "inexact division in elimination");
        Poly(q).trimmed()
    }
}

/// Determinant by Bareiss elimination with row swaps.
fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut sign = 1i64;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Shifts to a symmetric Laurent polynomial with `Delta(1) = 1`.
fn normalize(p: &Poly) -> Result<LaurentPolynomial> {
    let lo = p.0.iter().position(|c| !c.is_zero()).ok_or_else(|| {
        Error::MalformedPd("Alexander minor vanished".into())
    })?;
    let hi = p.0.len() - 1;
    if !(hi - lo).is_multiple_of(2) {
        return Err(Error::MalformedPd("Alexander polynomial has odd span".into()));
    }
    let mid = ((lo + hi) / 2) as i64;
    let mut out = LaurentPolynomial::from_terms(
        Variable::T,
        p.0.iter().enumerate().map(|(i, c)| (i as i64 - mid, c.clone())),
    );
    let at_one: BigInt = p.0.iter().sum();
    if at_one.is_negative() {
        out = -&out;
    }
    Ok(out)
}

/// Alexander polynomial of a knot diagram, symmetric with `Delta(1) = 1`.
pub fn alexander_polynomial(d: &PlanarDiagram) -> Result<LaurentPolynomial> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot { components: d.component_count() });
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(LaurentPolynomial::one(Variable::T));
    }
    // arcs: over-strand edges through a crossing are one arc
    let mut index: HashMap<usize, usize> = HashMap::new();
    for c in d.crossings() {
        for e in c.edges {
            let k = index.len();
            index.entry(e).or_insert(k);
        }
    }
    let mut uf = UnionFind::new(index.len());
    for c in d.crossings() {
        uf.union(index[&c.edges[1]], index[&c.edges[3]]);
    }
    let mut arc_of: HashMap<usize, usize> = HashMap::new();
    for e in 0..index.len() {
        let root = uf.find(e);
        let k = arc_of.len();
        arc_of.entry(root).or_insert(k);
    }
    let arc = |label: usize, uf: &mut UnionFind| arc_of[&uf.find(index[&label])];
    if arc_of.len() != n {
        return Err(Error::MalformedPd("arc count differs from crossing count".into()));
    }

    let t = Poly(vec![BigInt::zero(), BigInt::one()]);
    let one_minus_t = Poly(vec![BigInt::one(), BigInt::from(-1)]);
    let minus_one = Poly::constant(-1);
    let mut m = vec![vec![Poly::zero(); n]; n];
    for (row, c) in d.crossings().iter().enumerate() {
        let over = arc(c.edges[1], &mut uf);
        let under_in = arc(c.edges[0], &mut uf);
        let under_out = arc(c.edges[2], &mut uf);
        let (a_in, a_out) = if c.is_positive() { (&t, &minus_one) } else { (&minus_one, &t) };
        for (col, entry) in [(over, &one_minus_t), (under_in, a_in), (under_out, a_out)] {
            let mut cell = m[row][col].clone();
            cell.add_scaled(entry, 0, &BigInt::one());
            m[row][col] = cell.trimmed();
        }
    }
    let minor: Vec<Vec<Poly>> = m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    normalize(&determinant(minor))
}
