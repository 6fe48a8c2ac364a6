//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Variables are the schedule gaps `h_i^(j)` for `i` in `1..=4`, `j` in
//! `0..=3`, ordered with `j` major and `i` minor; the engine itself is
//! generic over any variable ids.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
}

/// A gap variable `h_i^(j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    /// Schedule index, `0..=3`.
    pub j: u8,
    /// Gap index, `1..=4`.
    pub i: u8,
}

impl Var {
    pub fn gap(j: u8, i: u8) -> Var {
        Var { j, i }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{}][{}]", self.i, self.j)
    }
}

/// Product of variables with positive exponents; the empty product is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    exponents: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(v, 1);
        Monomial { exponents }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (&v, &e) in &other.exponents {
            *exponents.entry(v).or_insert(0) += e;
        }
        Monomial { exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Var, &u32)> {
        self.exponents.iter()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in &self.exponents {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Polynomial::zero();
        if c != 0 {
            p.terms.insert(Monomial::one(), BigInt::from(c));
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Polynomial::zero();
        p.terms.insert(Monomial::var(v), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Polynomial { terms }
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        Polynomial { terms }
    }

    /// Uniform sign of all coefficients, if any.
    pub fn coefficient_signs(&self) -> SignSummary {
        if self.terms.is_empty() {
            return SignSummary::Zero;
        }
        let pos = self.terms.values().filter(|c| c.is_positive()).count();
        let neg = self.terms.len() - pos;
        match (pos, neg) {
            (_, 0) => SignSummary::AllPositive,
            (0, _) => SignSummary::AllNegative,
            _ => SignSummary::Mixed,
        }
    }

    /// True iff every coefficient is exactly `expected` (`+1` or `-1`).
    pub fn all_unit_coefficients(&self, expected: i64) -> bool {
        let e = BigInt::from(expected);
        self.terms.values().all(|c| *c == e)
    }

    /// Exact evaluation; every variable of the polynomial must be assigned.
    pub fn eval(&self, assign: &dyn Fn(Var) -> Option<Rat>) -> Result<Rat, PolyError> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut prod = Rat::from_integer(c.clone());
            for (&v, &e) in m.vars() {
                let value = assign(v).ok_or_else(|| PolyError::MissingVariable(v.to_string()))?;
                for _ in 0..e {
                    prod *= &value;
                }
            }
            total += prod;
        }
        Ok(total)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignSummary {
    Zero,
    AllPositive,
    AllNegative,
    Mixed,
}

impl fmt::Display for SignSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignSummary::Zero => "zero",
            SignSummary::AllPositive => "all-positive",
            SignSummary::AllNegative => "all-negative",
            SignSummary::Mixed => "mixed",
        };
        write!(f, "{s}")
    }
}

impl fmt::Display for Polynomial {
    /// One term per line: sign, then the monomial in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.magnitude();
            if mag == &num_bigint::BigUint::from(1u8) {
                writeln!(f, "{sign} {m}")?;
            } else {
                writeln!(f, "{sign} {mag} {m}")?;
            }
        }
        Ok(())
    }
}
