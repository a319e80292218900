//! Laurent polynomials in one variable with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variable {
    A,
    #[serde(rename = "t")]
    T,
}

impl Variable {
    fn symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::T => "t",
        }
    }
}

/// Sparse map from exponent to coefficient; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    var: Variable,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(var: Variable) -> Self {
        LaurentPolynomial { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Variable, exp: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coef.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(var: Variable, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPolynomial {
            var: self.var,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// `x -> x^-1`
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at an integer point; negative exponents must divide out.
    pub fn eval(&self, x: i64) -> Option<BigInt> {
        let lo = self.min_exp()?.min(0);
        // x^(-lo) * p(x) is an ordinary polynomial
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            acc += c * num_traits::pow(xb.clone(), (e - lo) as usize);
        }
        if lo == 0 {
            return Some(acc);
        }
        let denom = num_traits::pow(xb, (-lo) as usize);
        if denom.is_zero() || !(&acc % &denom).is_zero() {
            return None;
        }
        Some(acc / denom)
    }

    /// Rewrites exponents by an exact map `e -> f(e)`; `None` if some
    /// exponent is rejected.
    pub fn substitute(&self, var: Variable, f: impl Fn(i64) -> Option<i64>) -> Option<Self> {
        let mut out = Self::zero(var);
        for (e, c) in &self.terms {
            out.add_term(f(*e)?, c.clone());
        }
        Some(out)
    }

    /// JSON term list: `"coef*x^exp"` strings in ascending exponent order.
    pub fn to_term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(e, c)| format!("{}*{}^{}", c, self.var.symbol(), e))
            .collect()
    }

    pub fn from_term_strings<S: AsRef<str>>(terms: &[S]) -> Result<Self> {
        let mut var = None;
        let mut p = Self::zero(Variable::T);
        for raw in terms {
            let raw = raw.as_ref();
            let bad = || Error::MalformedTerm(raw.to_string());
            let (coef, rest) = raw.split_once('*').ok_or_else(bad)?;
            let (sym, exp) = rest.split_once('^').ok_or_else(bad)?;
            let v = match sym {
                "A" => Variable::A,
                "t" => Variable::T,
                _ => return Err(bad()),
            };
            if var.is_some_and(|x| x != v) {
                return Err(bad());
            }
            var = Some(v);
            let c: BigInt = coef.parse().map_err(|_| bad())?;
            let e: i64 = exp.parse().map_err(|_| bad())?;
            p.add_term(e, c);
        }
        p.var = var.unwrap_or(Variable::T);
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Highest power first: `-t^4 + t^3 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let x = self.var.symbol();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{}", mag)?,
                1 if unit => write!(f, "{}", x)?,
                1 => write!(f, "{}{}", mag, x)?,
                _ if unit => write!(f, "{}^{}", x, e)?,
                _ => write!(f, "{}{}^{}", mag, x, e)?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_term_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<String>::deserialize(deserializer)?;
        LaurentPolynomial::from_term_strings(&terms).map_err(serde::de::Error::custom)
    }
}
