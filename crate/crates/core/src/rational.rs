//! Exact rational scalars and their text form.
//!
//! Rationals are serialized as `p/q` with `q > 0` and the fraction in lowest
//! terms, which `BigRational` maintains by construction; parsing accepts a
//! bare integer as well. This is the only number format the crate emits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("invalid rational {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rat, RationalParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rational(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

/// Squared Euclidean norm.
pub fn norm_sq(a: &[Rat]) -> Rat {
    dot(a, a)
}

/// Smallest power of two strictly greater than `x` (so `x / result < 1`
/// whenever `x >= 0`).
pub fn next_power_of_two_above(x: &Rat) -> Rat {
    let mut p = Rat::one();
    if x.is_negative() {
        return p;
    }
    while &p <= x {
        p *= int(2);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert_eq!(format_rational(&rat(-2, 3)), "-2/3");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn power_of_two() {
        assert_eq!(next_power_of_two_above(&int(0)), int(1));
        assert_eq!(next_power_of_two_above(&rat(1, 2)), int(1));
        assert_eq!(next_power_of_two_above(&int(1)), int(2));
        assert_eq!(next_power_of_two_above(&rat(56, 1)), int(64));
        // sqrt(56) is between 4 and 8, so the witness rescale picks 8
        let speed_sq = int(56);
        let mut n = Rat::one();
        while &n * &n <= speed_sq {
            n *= int(2);
        }
        assert_eq!(n, int(8));
    }
}
