//! The constructive pipeline for five observers: put three of the four
//! moving observers on coordinate axes via increasing schedules, express the
//! remaining observer's ordering constraints as a strict linear system in
//! its velocity, and decide feasibility exactly.
//!
//! Feasibility is decided two ways that must agree: Fourier-Motzkin
//! elimination over strict inequalities in the three velocity components
//! (complete, also produces the witness point), and the alpha/beta linear
//! relation between the gaps (fast, used by the sweep when the 3x3 system
//! is nonsingular).

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{PermSet, Permutation};
use crate::rational::{int, rat, Rat};
use crate::spacetime::{
    auto_normalize, verify_witness, verify_witness_detailed, Event, Velocity, Witness,
};

#[derive(Debug, Error)]
pub enum RealizerError {
    #[error("schedule row {0} is not strictly increasing")]
    ScheduleNotIncreasing(usize),
    #[error("schedule rows must have length {expected}, got {got}")]
    ScheduleLength { expected: usize, got: usize },
    #[error("gap systems are built for sets of five orderings, got {0}")]
    BadSetSize(usize),
    #[error("gap systems are built for 5 or 6 events, got {0}")]
    UnsupportedEventCount(usize),
    #[error("set must contain the identity ordering")]
    NotCanonical,
    #[error("solved-observer index {0} out of range (0..4)")]
    BadSolvedIndex(usize),
    #[error("alpha/beta requires a 4-row system, got {0} rows")]
    BadRowCount(usize),
    #[error("realize supports 1 to 5 orderings, got {0}")]
    BadRealizeSize(usize),
}

/// Four strictly increasing target-time tables `F_0..F_3`, one value per
/// event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    f: [Vec<Rat>; 4],
}

impl Schedule {
    pub fn new(f: [Vec<Rat>; 4]) -> Result<Self, RealizerError> {
        let n = f[0].len();
        for (j, row) in f.iter().enumerate() {
            if row.len() != n {
                return Err(RealizerError::ScheduleLength {
                    expected: n,
                    got: row.len(),
                });
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(RealizerError::ScheduleNotIncreasing(j));
            }
        }
        Ok(Schedule { f })
    }

    pub fn from_integer_table(t: &[Vec<i64>; 4]) -> Result<Self, RealizerError> {
        Schedule::new([
            t[0].iter().map(|&v| int(v)).collect(),
            t[1].iter().map(|&v| int(v)).collect(),
            t[2].iter().map(|&v| int(v)).collect(),
            t[3].iter().map(|&v| int(v)).collect(),
        ])
    }

    pub fn linear(slopes: [i64; 4], n: usize) -> Self {
        let f = slopes.map(|m| (1..=n as i64).map(|i| int(m * i)).collect());
        Schedule { f }
    }

    pub fn n(&self) -> usize {
        self.f[0].len()
    }

    /// `F_j(i)`, 1-based `i`.
    pub fn value(&self, j: usize, i: usize) -> &Rat {
        &self.f[j][i - 1]
    }
}

/// Integer tables for the built-in schedule list; stage 1 is the linear
/// `(1,300,200,300)` run, stages 2 and 3 are the two tabulated refinements
/// for five events, and the tail is a fixed-seed pseudo-random fallback.
pub fn builtin_schedule_tables(n: usize) -> Vec<[Vec<i64>; 4]> {
    let mut out = Vec::new();
    let linear =
        |slopes: [i64; 4]| slopes.map(|m| (1..=n as i64).map(|i| m * i).collect::<Vec<_>>());
    out.push(linear([1, 300, 200, 300]));
    if n == 5 {
        out.push([
            vec![1, 2, 3, 4, 5],
            vec![1, 2, 3, 7, 8],
            vec![1, 2, 24, 25, 26],
            vec![1, 64, 65, 66, 67],
        ]);
        out.push([
            vec![1, 2, 3, 4, 5],
            vec![1, 23, 24, 25, 26],
            vec![4, 5, 6, 7, 8],
            vec![1, 2, 65, 66, 67],
        ]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FALLBACK_SCHEDULE_SEED);
    for _ in 0..5 {
        let mut table: [Vec<i64>; 4] = Default::default();
        for row in table.iter_mut() {
            let mut v = rng.gen_range(1..=8);
            for _ in 0..n {
                row.push(v);
                v += rng.gen_range(1..=64);
            }
        }
        out.push(table);
    }
    out
}

const FALLBACK_SCHEDULE_SEED: u64 = 0x7265616c697a65;

pub fn builtin_schedules(n: usize) -> Vec<Schedule> {
    builtin_schedule_tables(n)
        .iter()
        .map(|t| Schedule::from_integer_table(t).expect("built-in tables are increasing"))
        .collect()
}

/// The strict system `A u + b > 0` for the solved observer, one row per
/// adjacent pair in its claimed ordering.
#[derive(Clone, Debug)]
pub struct GapSystem {
    pub a: Vec<[Rat; 3]>,
    pub b: Vec<Rat>,
    /// The translated set the system was built from and which moving member
    /// is solved for (0..=3, index into the non-identity members).
    pub set: PermSet,
    pub solved: usize,
}

/// Builds events realizing the identity and the three axis orderings by
/// construction, plus the gap system for the remaining observer.
///
/// `q` must be sorted with the identity first; `solved` picks which of the
/// four moving orderings is left to the fourth velocity, the other three are
/// assigned to the coordinate axes in sorted order.
pub fn build_gap_system(
    q: &PermSet,
    schedule: &Schedule,
    solved: usize,
) -> Result<(GapSystem, Vec<Event>), RealizerError> {
    if q.len() != 5 {
        return Err(RealizerError::BadSetSize(q.len()));
    }
    let n = q.n();
    if n != 5 && n != 6 {
        return Err(RealizerError::UnsupportedEventCount(n));
    }
    if schedule.n() != n {
        return Err(RealizerError::ScheduleLength {
            expected: n,
            got: schedule.n(),
        });
    }
    if !q.contains_identity() {
        return Err(RealizerError::NotCanonical);
    }
    if solved >= 4 {
        return Err(RealizerError::BadSolvedIndex(solved));
    }
    let movers = &q.members()[1..];
    let axes: Vec<&Permutation> = movers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != solved)
        .map(|(_, p)| p)
        .collect();
    let axis_inv: Vec<Permutation> = axes.iter().map(|p| p.inverse()).collect();
    let target = &movers[solved];

    // event i: t = F_0(i), x_j = F_0(i) - F_{j+1}(axis_j^{-1}(i))
    let events: Vec<Event> = (1..=n)
        .map(|i| {
            let x = (0..3)
                .map(|j| schedule.value(0, i) - schedule.value(j + 1, axis_inv[j].apply(i)))
                .collect();
            Event::new(schedule.value(0, i).clone(), x)
        })
        .collect();

    let mut a = Vec::with_capacity(n - 1);
    let mut b = Vec::with_capacity(n - 1);
    for i in 1..n {
        let e0 = target.apply(i);
        let e1 = target.apply(i + 1);
        b.push(schedule.value(0, e1) - schedule.value(0, e0));
        let mut row = [Rat::zero(), Rat::zero(), Rat::zero()];
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = &events[e0 - 1].x[j] - &events[e1 - 1].x[j];
        }
        a.push(row);
    }
    Ok((
        GapSystem {
            a,
            b,
            set: q.clone(),
            solved,
        },
        events,
    ))
}

/// A strict rational point with `A u + b > 0` in every row, or `None` when
/// the open polyhedron is empty. Exact Fourier-Motzkin elimination; the
/// returned point takes each variable at the midpoint of its open interval
/// (or one past the single bound / zero when unbounded).
pub fn fm_feasible(sys: &GapSystem) -> Option<Velocity> {
    let rows: Vec<(Vec<Rat>, Rat)> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(a, b)| (a.to_vec(), b.clone()))
        .collect();
    strict_feasible_point(rows, 3).map(Velocity)
}

/// Fourier-Motzkin over strict rows `coef . u + constant > 0` in `nvars`
/// variables.
pub fn strict_feasible_point(rows: Vec<(Vec<Rat>, Rat)>, nvars: usize) -> Option<Vec<Rat>> {
    if nvars == 0 {
        return rows
            .iter()
            .all(|(_, b)| b.is_positive())
            .then(Vec::new);
    }
    let k = nvars - 1;
    let mut passed = Vec::new();
    let mut lowers = Vec::new(); // u_k > (bound affine in u_<k)
    let mut uppers = Vec::new(); // u_k < ...
    for (a, b) in &rows {
        let c = &a[k];
        if c.is_zero() {
            passed.push((a[..k].to_vec(), b.clone()));
        } else {
            // u_k ? -(b + sum_j<k a_j u_j)/c
            let inv = -(Rat::one() / c);
            let bound: (Vec<Rat>, Rat) = (
                a[..k].iter().map(|x| x * &inv).collect(),
                b * &inv,
            );
            if c.is_positive() {
                lowers.push(bound);
            } else {
                uppers.push(bound);
            }
        }
    }
    let mut reduced = passed;
    for (la, lb) in &lowers {
        for (ua, ub) in &uppers {
            // require upper - lower > 0
            let coef = ua.iter().zip(la).map(|(u, l)| u - l).collect();
            reduced.push((coef, ub - lb));
        }
    }
    let point = strict_feasible_point(reduced, k)?;
    let eval = |(coefs, c): &(Vec<Rat>, Rat)| -> Rat {
        coefs
            .iter()
            .zip(&point)
            .map(|(a, u)| a * u)
            .fold(c.clone(), |s, t| s + t)
    };
    let lo = lowers.iter().map(eval).max();
    let hi = uppers.iter().map(eval).min();
    let value = match (lo, hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => l + Rat::one(),
        (None, Some(h)) => h - Rat::one(),
        (Some(l), Some(h)) => {
            debug_assert!(l < h, "eliminated system guarantees an open interval");
            (l + h) / int(2)
        }
    };
    let mut out = point;
    out.push(value);
    Some(out)
}

/// The linear relation `g_4 = alpha_1 g_1 + alpha_2 g_2 + alpha_3 g_3 + beta`
/// for 4-row systems, solved by cofactor determinants.
#[derive(Clone, Debug)]
pub struct GapSolution {
    pub alphas: [Rat; 3],
    pub beta: Rat,
    pub singular: bool,
}

impl GapSolution {
    /// All of `alpha_1..3` and `beta` strictly negative: no positive gap
    /// assignment can exist.
    pub fn all_negative(&self) -> bool {
        !self.singular
            && self.alphas.iter().all(Signed::is_negative)
            && self.beta.is_negative()
    }

    /// In the nonsingular case the open system is feasible iff some alpha or
    /// beta is strictly positive.
    pub fn feasible(&self) -> Option<bool> {
        (!self.singular)
            .then(|| self.alphas.iter().any(Signed::is_positive) || self.beta.is_positive())
    }
}

fn det3(r: [&[Rat; 3]; 3]) -> Rat {
    &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0])
}

pub fn alpha_beta(sys: &GapSystem) -> Result<GapSolution, RealizerError> {
    if sys.a.len() != 4 {
        return Err(RealizerError::BadRowCount(sys.a.len()));
    }
    let a = &sys.a;
    let d4 = det3([&a[0], &a[1], &a[2]]);
    if d4.is_zero() {
        return Ok(GapSolution {
            alphas: [Rat::zero(), Rat::zero(), Rat::zero()],
            beta: Rat::zero(),
            singular: true,
        });
    }
    let d1 = det3([&a[1], &a[2], &a[3]]);
    let d2 = det3([&a[0], &a[2], &a[3]]);
    let d3 = det3([&a[0], &a[1], &a[3]]);
    let alphas = [&d1 / &d4, -(&d2 / &d4), &d3 / &d4];
    let beta = &sys.b[3]
        - (&alphas[0] * &sys.b[0] + &alphas[1] * &sys.b[1] + &alphas[2] * &sys.b[2]);
    Ok(GapSolution {
        alphas,
        beta,
        singular: false,
    })
}

/// A realized set: the verified witness (claiming exactly the input set)
/// plus which relabeling, solved observer and schedule produced it.
#[derive(Clone, Debug)]
pub struct Realization {
    pub witness: Witness,
    pub translation: usize,
    pub solved: usize,
    pub schedule: usize,
}

/// Assembles and verifies the witness for a feasible system.
pub fn witness_from_system(
    translated: &PermSet,
    events: &[Event],
    solved: usize,
    u: Velocity,
) -> Witness {
    let axis_positions: Vec<usize> = (0..4).filter(|&i| i != solved).collect();
    let velocities = (0..5)
        .map(|m| {
            if m == 0 {
                Velocity::zero(3)
            } else if m - 1 == solved {
                u.clone()
            } else {
                let axis = axis_positions
                    .iter()
                    .position(|&p| p == m - 1)
                    .expect("member is an axis");
                let mut v = vec![Rat::zero(); 3];
                v[axis] = Rat::one();
                Velocity(v)
            }
        })
        .collect();
    let raw = Witness {
        events: events.to_vec(),
        velocities,
        claim: translated.clone(),
    };
    let (scaled, _) = auto_normalize(&raw);
    scaled
}

/// Renames the events of a witness for `pi^{-1} Q` into a witness for `Q`:
/// new event `k` is old event `pi^{-1}(k)`, and every observer's ordering
/// picks up `pi` on the left.
pub fn relabel_witness(w: &Witness, pi: &Permutation) -> Witness {
    let inv = pi.inverse();
    let n = w.events.len();
    let events: Vec<Event> = (1..=n).map(|k| w.events[inv.apply(k) - 1].clone()).collect();
    let mut pairs: Vec<(Permutation, Velocity)> = w
        .claim
        .members()
        .iter()
        .zip(&w.velocities)
        .map(|(m, v)| (pi.compose(m).expect("equal sizes"), v.clone()))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (members, velocities): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Witness {
        events,
        velocities,
        claim: PermSet::new(members).expect("relabeled members stay distinct"),
    }
}

/// Tries the event relabelings x solved-observer choices for each schedule
/// in turn; the first strictly feasible system yields a verified witness
/// whose claim is exactly the input set. `None` means the schedules at hand
/// did not realize the set, which is not a proof of unrealizability.
pub fn realize(q: &PermSet, schedules: &[Schedule]) -> Result<Option<Realization>, RealizerError> {
    match q.len() {
        0 => Err(RealizerError::BadRealizeSize(0)),
        1..=4 => {
            // relabel so the presentation contains the identity, realize on
            // axes, then relabel back
            let (ti, pi) = q
                .members()
                .iter()
                .enumerate()
                .min_by_key(|(_, pi)| {
                    let inv = pi.inverse();
                    let mut ms: Vec<_> = q
                        .members()
                        .iter()
                        .map(|m| inv.compose(m).expect("equal sizes"))
                        .collect();
                    ms.sort();
                    ms
                })
                .map(|(i, pi)| (i, pi.clone()))
                .expect("nonempty set");
            let presentation = &q.relabelings()[ti];
            let speeds = vec![rat(1, 2); presentation.len().max(2) - 1];
            let w = crate::spacetime::build_axis_witness(presentation, &speeds)
                .expect("axis construction applies to at most four orderings");
            let w = relabel_witness(&w, &pi);
            debug_assert_eq!(w.claim, *q);
            debug_assert!(verify_witness(&w));
            Ok(Some(Realization {
                witness: w,
                translation: ti,
                solved: 0,
                schedule: 0,
            }))
        }
        5 => {
            let presentations = q.relabelings();
            for (si, schedule) in schedules.iter().enumerate() {
                for (ti, t) in presentations.iter().enumerate() {
                    for solved in 0..4 {
                        let (sys, events) = build_gap_system(t, schedule, solved)?;
                        if let Some(u) = fm_feasible(&sys) {
                            let w = witness_from_system(t, &events, solved, u);
                            let w = relabel_witness(&w, &q.members()[ti]);
                            debug_assert_eq!(w.claim, *q);
                            if let Err(v) = verify_witness_detailed(&w) {
                                panic!("feasible system produced a failing witness: {v}");
                            }
                            return Ok(Some(Realization {
                                witness: w,
                                translation: ti,
                                solved,
                                schedule: si,
                            }));
                        }
                    }
                }
            }
            Ok(None)
        }
        k => Err(RealizerError::BadRealizeSize(k)),
    }
}
