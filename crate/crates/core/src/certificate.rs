//! Symbolic unrealizability certificate for the cyclic set of five
//! orderings: the four row-deleted determinants of the gap matrix, expanded
//! over the 16 positive gap variables, have uniform term signs, so the
//! dependence coefficients and the offset are negative for every positive
//! schedule and no fifth velocity exists.

use num_traits::Zero;
use thiserror::Error;

use crate::perm::PermSet;
use crate::poly::{Polynomial, SignSummary, Var};
use crate::rational::Rat;
use crate::realizer::{build_gap_system, Schedule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("determinant {index} has {terms} terms, expected 125")]
    WrongTermCount { index: usize, terms: usize },
    #[error("determinant {index} is {got}, expected {expected}")]
    WrongSign {
        index: usize,
        got: SignSummary,
        expected: SignSummary,
    },
    #[error("coefficients of determinant {index} are not all {expected:+}")]
    NotUnitCoefficients { index: usize, expected: i64 },
    #[error("row linear relation D1 a1 - D2 a2 + D3 a3 - D4 a4 is nonzero in column {0}")]
    RowRelationBroken(usize),
    #[error("symbolic matrix disagrees with the generic construction at entry ({0},{1})")]
    MatrixMismatch(usize, usize),
}

/// The symbolic gap matrix and offsets for the cyclic set, derived from the
/// generic construction with symbolic schedules `F_j(i) = h_1 + ... +
/// h_{i-1}` (initial values cancel from every difference).
pub fn build_symbolic_gap_matrix() -> ([[Polynomial; 3]; 4], [Polynomial; 4]) {
    let q = cyclic_set();
    let movers = &q.members()[1..];
    let target = &movers[3];
    let axes = [&movers[0], &movers[1], &movers[2]];
    let f = |j: u8, i: usize| -> Polynomial {
        let mut p = Polynomial::zero();
        for l in 1..i {
            p = p.add(&Polynomial::var(Var::gap(j, l as u8)));
        }
        p
    };
    // w[e][j] = F_0(e) - F_{j+1}(axis_j^{-1}(e))
    let w: Vec<[Polynomial; 3]> = (1..=5)
        .map(|e| {
            [0, 1, 2].map(|j| f(0, e).sub(&f(j as u8 + 1, axes[j].inverse().apply(e))))
        })
        .collect();
    let mut a: [[Polynomial; 3]; 4] = Default::default();
    let mut b: [Polynomial; 4] = Default::default();
    for i in 1..=4 {
        let e0 = target.apply(i);
        let e1 = target.apply(i + 1);
        b[i - 1] = f(0, e1).sub(&f(0, e0));
        for j in 0..3 {
            a[i - 1][j] = w[e0 - 1][j].sub(&w[e1 - 1][j]);
        }
    }
    (a, b)
}

fn cyclic_set() -> PermSet {
    "{(1,2,3,4,5),(2,3,4,5,1),(3,4,5,1,2),(4,5,1,2,3),(5,1,2,3,4)}"
        .parse()
        .expect("literal set")
}

/// The same matrix written out case by case, as a cross-check on the
/// generic construction. With `pi_j(i) = i + j mod 5` the entries are:
/// row 1: `h^(j)_{5-j} + sum_l h^(0)_l`; the subdiagonal `i = j + 1`:
/// `-sum_l h^(j)_l - h^(0)_{i-1}`; everything else:
/// `h^(j)_{(i-j-1) mod 5} - h^(0)_{i-1}`; offsets `b = (-sum_l h^(0)_l,
/// h^(0)_1, h^(0)_2, h^(0)_3)`.
pub fn reference_gap_matrix() -> ([[Polynomial; 3]; 4], [Polynomial; 4]) {
    let h = |j: usize, i: usize| Polynomial::var(Var::gap(j as u8, i as u8));
    let row_sum = |j: usize| {
        (1..=4).fold(Polynomial::zero(), |acc, i| acc.add(&h(j, i)))
    };
    let mut a: [[Polynomial; 3]; 4] = Default::default();
    for i in 1..=4usize {
        for j in 1..=3usize {
            a[i - 1][j - 1] = if i == 1 {
                h(j, 5 - j).add(&row_sum(0))
            } else if i == j + 1 {
                row_sum(j).negate().sub(&h(0, i - 1))
            } else {
                h(j, (i + 5 - j - 1) % 5).sub(&h(0, i - 1))
            };
        }
    }
    let b = [
        row_sum(0).negate(),
        h(0, 1),
        h(0, 2),
        h(0, 3),
    ];
    (a, b)
}

/// Exact cofactor expansion of a 3x3 polynomial matrix.
pub fn det3(m: [[&Polynomial; 3]; 3]) -> Polynomial {
    let minor = |a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &Polynomial| {
        a.mul(d).sub(&b.mul(c))
    };
    m[0][0]
        .mul(&minor(m[1][1], m[1][2], m[2][1], m[2][2]))
        .sub(&m[0][1].mul(&minor(m[1][0], m[1][2], m[2][0], m[2][2])))
        .add(&m[0][2].mul(&minor(m[1][0], m[1][1], m[2][0], m[2][1])))
}

/// The four row-deleted determinants `D_1..D_4` and `beta * D_4`.
#[derive(Clone, Debug)]
pub struct CertificatePolynomials {
    pub d: [Polynomial; 4],
    pub beta_d4: Polynomial,
    pub a: [[Polynomial; 3]; 4],
    pub b: [Polynomial; 4],
}

pub fn certificate_polynomials() -> CertificatePolynomials {
    let (a, b) = build_symbolic_gap_matrix();
    let rows = |skip: usize| -> [[&Polynomial; 3]; 3] {
        let kept: Vec<usize> = (0..4).filter(|&r| r != skip).collect();
        [0, 1, 2].map(|r| [0, 1, 2].map(|c| &a[kept[r]][c]))
    };
    let d = [det3(rows(0)), det3(rows(1)), det3(rows(2)), det3(rows(3))];
    // beta = b4 - alpha.b with alpha = (D1/D4, -D2/D4, D3/D4)
    let beta_d4 = b[3]
        .mul(&d[3])
        .sub(&d[0].mul(&b[0]))
        .add(&d[1].mul(&b[1]))
        .sub(&d[2].mul(&b[2]));
    CertificatePolynomials { d, beta_d4, a, b }
}

/// Per-polynomial term counts and sign verdicts, plus the conclusion.
#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub determinant_terms: [usize; 4],
    pub determinant_signs: [SignSummary; 4],
    pub beta_d4_terms: usize,
    pub beta_d4_sign: SignSummary,
    /// True only when the sign uniformity holds, which proves the cyclic
    /// set unrealizable for every positive schedule.
    pub certified_unrealizable: bool,
}

/// Runs every check of the certificate. A failure is a build bug, not a
/// property of the input, so each one is a distinct error.
pub fn certify_q0() -> Result<(CertificateReport, CertificatePolynomials), CertificateError> {
    let polys = certificate_polynomials();
    let expected_signs = [
        SignSummary::AllNegative,
        SignSummary::AllPositive,
        SignSummary::AllNegative,
        SignSummary::AllPositive,
    ];
    let mut terms = [0usize; 4];
    let mut signs = [SignSummary::Zero; 4];
    for i in 0..4 {
        terms[i] = polys.d[i].term_count();
        signs[i] = polys.d[i].coefficient_signs();
        if terms[i] != 125 {
            return Err(CertificateError::WrongTermCount {
                index: i + 1,
                terms: terms[i],
            });
        }
        if signs[i] != expected_signs[i] {
            return Err(CertificateError::WrongSign {
                index: i + 1,
                got: signs[i],
                expected: expected_signs[i],
            });
        }
        let unit = if i % 2 == 0 { -1 } else { 1 };
        if !polys.d[i].all_unit_coefficients(unit) {
            return Err(CertificateError::NotUnitCoefficients {
                index: i + 1,
                expected: unit,
            });
        }
    }
    if polys.beta_d4.term_count() != 125 {
        return Err(CertificateError::WrongTermCount {
            index: 5,
            terms: polys.beta_d4.term_count(),
        });
    }
    if polys.beta_d4.coefficient_signs() != SignSummary::AllNegative
        || !polys.beta_d4.all_unit_coefficients(-1)
    {
        return Err(CertificateError::WrongSign {
            index: 5,
            got: polys.beta_d4.coefficient_signs(),
            expected: SignSummary::AllNegative,
        });
    }
    // D1 a1 - D2 a2 + D3 a3 - D4 a4 = 0 identically, column by column
    for col in 0..3 {
        let relation = polys.d[0]
            .mul(&polys.a[0][col])
            .sub(&polys.d[1].mul(&polys.a[1][col]))
            .add(&polys.d[2].mul(&polys.a[2][col]))
            .sub(&polys.d[3].mul(&polys.a[3][col]));
        if !relation.is_zero() {
            return Err(CertificateError::RowRelationBroken(col));
        }
    }
    let report = CertificateReport {
        determinant_terms: terms,
        determinant_signs: signs,
        beta_d4_terms: polys.beta_d4.term_count(),
        beta_d4_sign: polys.beta_d4.coefficient_signs(),
        certified_unrealizable: true,
    };
    Ok((report, polys))
}

/// Numeric gap system for the cyclic set built from explicit gap values:
/// `F_j(i)` is the prefix sum of row `j` of `gaps`.
pub fn cyclic_system_from_gaps(gaps: &[[Rat; 4]; 4]) -> Result<crate::realizer::GapSystem, crate::realizer::RealizerError> {
    let f: [Vec<Rat>; 4] = [0, 1, 2, 3].map(|j| {
        let mut acc = Rat::zero();
        let mut row = vec![Rat::zero()];
        for g in &gaps[j] {
            acc += g;
            row.push(acc.clone());
        }
        row
    });
    let schedule = Schedule::new(f)?;
    build_gap_system(&cyclic_set(), &schedule, 3).map(|(sys, _)| sys)
}
