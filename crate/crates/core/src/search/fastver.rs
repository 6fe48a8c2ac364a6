//! Exact integer witness verification for the sweep's inner loop.
//!
//! Once the sign test declares an attempt feasible, a concrete velocity is
//! assembled by Cramer's rule from an explicitly chosen positive gap target
//! and all five claimed orderings are re-checked over `i128` numerators on
//! a common denominator. Schedule values stay below a few thousand, so the
//! largest intermediate (a rel-time numerator) is bounded by roughly 1e28,
//! eleven orders of magnitude inside the `i128` range; the bound is
//! asserted per stage. Everything here is exact integer arithmetic; the
//! rational path in the realizer stays authoritative and a sampled
//! cross-check keeps the two glued together.

use super::lut::GroupTable;

/// Largest schedule value the integer pipeline accepts; keeps every
/// intermediate product well inside `i128`.
pub const MAX_STAGE_VALUE: i64 = 10_000;

pub fn stage_in_bounds(stage: &[Vec<i64>; 4]) -> bool {
    stage
        .iter()
        .all(|row| row.iter().all(|v| v.abs() <= MAX_STAGE_VALUE))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// The gap system of one attempt, over machine integers.
pub struct IntSystem {
    /// `a[i][j]` multiplies `u_j` in gap `i`; `n - 1` rows.
    pub a: Vec<[i64; 3]>,
    pub b: Vec<i64>,
    /// Spatial coordinates: `w[e][j]` for event `e + 1`.
    pub w: Vec<[i64; 3]>,
}

/// Builds the attempt's system; `movers` are the non-identity member ranks
/// of the translated set in sorted order, `solved` picks the observer whose
/// velocity stays unknown.
pub fn build_int_system(
    t: &GroupTable,
    movers: &[u16],
    solved: usize,
    stage: &[Vec<i64>; 4],
) -> IntSystem {
    let n = t.n;
    let target = t.one_line(movers[solved]);
    let mut axes = [0u16; 3];
    let mut k = 0;
    for (i, &m) in movers.iter().enumerate() {
        if i != solved {
            axes[k] = t.inv(m);
            k += 1;
        }
    }
    let mut w = vec![[0i64; 3]; n];
    for (e, we) in w.iter_mut().enumerate() {
        for (j, cell) in we.iter_mut().enumerate() {
            let pos = t.one_line(axes[j])[e] as usize;
            *cell = stage[0][e] - stage[j + 1][pos - 1];
        }
    }
    let mut a = Vec::with_capacity(n - 1);
    let mut b = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let e0 = target[i] as usize - 1;
        let e1 = target[i + 1] as usize - 1;
        b.push(stage[0][e1] - stage[0][e0]);
        let mut row = [0i64; 3];
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = w[e0][j] - w[e1][j];
        }
        a.push(row);
    }
    IntSystem { a, b, w }
}

fn det3(a: &[[i64; 3]], r: [usize; 3]) -> i128 {
    let m = |i: usize, j: usize| a[r[i]][j] as i128;
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Alpha/beta feasibility signs for a 4-row system. `None` when singular.
pub fn int_feasible(sys: &IntSystem) -> Option<bool> {
    debug_assert_eq!(sys.a.len(), 4);
    let d4 = det3(&sys.a, [0, 1, 2]);
    if d4 == 0 {
        return None;
    }
    let d1 = det3(&sys.a, [1, 2, 3]);
    let d2 = det3(&sys.a, [0, 2, 3]);
    let d3 = det3(&sys.a, [0, 1, 3]);
    let beta_num = sys.b[3] as i128 * d4 - d1 * sys.b[0] as i128 + d2 * sys.b[1] as i128
        - d3 * sys.b[2] as i128;
    let pos = |num: i128| num != 0 && (num > 0) == (d4 > 0);
    Some(pos(d1) || pos(-d2) || pos(d3) || pos(beta_num))
}

/// A velocity `u = (nu_1, nu_2, nu_3) / du` with `du > 0` making every gap
/// of a feasible nonsingular 4-row system strictly positive.
pub fn int_witness_velocity(sys: &IntSystem) -> Option<([i128; 3], i128)> {
    let d4 = det3(&sys.a, [0, 1, 2]);
    if d4 == 0 {
        return None;
    }
    let d1 = det3(&sys.a, [1, 2, 3]);
    let d2 = det3(&sys.a, [0, 2, 3]);
    let d3 = det3(&sys.a, [0, 1, 3]);
    let beta_num = sys.b[3] as i128 * d4 - d1 * sys.b[0] as i128 + d2 * sys.b[1] as i128
        - d3 * sys.b[2] as i128;
    let s: i128 = if d4 > 0 { 1 } else { -1 };
    // alphas scaled by |D4|: lambda_k = s * (+D1, -D2, +D3)
    let lambda = [s * d1, s * (-d2), s * d3];
    let sum_abs: i128 = lambda.iter().map(|x| x.abs()).sum();

    // choose positive gaps (g1,g2,g3) = (p1,p2,p3)/dg with
    // lambda . g + s*beta_num > 0, which makes g4 > 0
    let (p, dg): ([i128; 3], i128) = if let Some(k) = (0..3).find(|&k| lambda[k] > 0) {
        // crank the coordinate with a positive coefficient
        let x = beta_num.abs() + sum_abs + 1;
        let mut p = [1i128; 3];
        p[k] = x;
        (p, 1)
    } else if s * beta_num > 0 {
        // small equal gaps keep the beta term dominant
        let b = beta_num.abs();
        ([b, b, b], 2 * sum_abs + 2)
    } else {
        return None;
    };

    // solve rows 1..3: a_i . u = g_i - b_i, i.e. (dg A) u = (p - dg b)
    let col: [i128; 3] = [
        p[0] - dg * sys.b[0] as i128,
        p[1] - dg * sys.b[1] as i128,
        p[2] - dg * sys.b[2] as i128,
    ];
    let a = &sys.a;
    let rep = |j: usize, r: usize, c: usize| -> i128 {
        if c == j {
            col[r]
        } else {
            a[r][c] as i128
        }
    };
    let det_rep = |j: usize| -> i128 {
        rep(j, 0, 0) * (rep(j, 1, 1) * rep(j, 2, 2) - rep(j, 1, 2) * rep(j, 2, 1))
            - rep(j, 0, 1) * (rep(j, 1, 0) * rep(j, 2, 2) - rep(j, 1, 2) * rep(j, 2, 0))
            + rep(j, 0, 2) * (rep(j, 1, 0) * rep(j, 2, 1) - rep(j, 1, 1) * rep(j, 2, 0))
    };
    let mut nu = [det_rep(0), det_rep(1), det_rep(2)];
    let mut du = dg * d4;
    if du < 0 {
        du = -du;
        for v in &mut nu {
            *v = -*v;
        }
    }
    let g = nu.iter().fold(du, |acc, &v| gcd(acc, v));
    for v in &mut nu {
        *v /= g;
    }
    du /= g;
    Some((nu, du))
}

/// Exact re-check that every observer of the attempt sees its claimed
/// ordering with the velocity `(nu, du)`:
/// the rest frame and the axis observers through the schedule, the solved
/// observer through rel-time numerators `t_e * du - nu . w_e`.
pub fn int_verify(
    t: &GroupTable,
    movers: &[u16],
    solved: usize,
    stage: &[Vec<i64>; 4],
    sys: &IntSystem,
    nu: [i128; 3],
    du: i128,
) -> bool {
    debug_assert!(du > 0);
    let n = t.n;
    // rest frame: F_0 strictly increasing
    if stage[0].windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    // axis observers: rel time of event e is F_{j+1}(axis^{-1}(e));
    // their claimed order pi has rel time F(i) at E_pi(i)
    let mut k = 0;
    for (i, &m) in movers.iter().enumerate() {
        if i == solved {
            continue;
        }
        k += 1;
        let pi = t.one_line(m);
        let mut prev: Option<i128> = None;
        for &ev in pi.iter().take(n) {
            let e = ev as usize - 1;
            let rel = (stage[0][e] as i128) - (sys.w[e][k - 1] as i128);
            if prev.is_some_and(|p| p >= rel) {
                return false;
            }
            prev = Some(rel);
        }
    }
    // solved observer: numerators t_e * du - nu . w_e over denominator du
    let pi = t.one_line(movers[solved]);
    let mut prev: Option<i128> = None;
    for &ev in pi.iter().take(n) {
        let e = ev as usize - 1;
        let rel = stage[0][e] as i128 * du
            - nu[0] * sys.w[e][0] as i128
            - nu[1] * sys.w[e][1] as i128
            - nu[2] * sys.w[e][2] as i128;
        if prev.is_some_and(|p| p >= rel) {
            return false;
        }
        prev = Some(rel);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizer::{alpha_beta, build_gap_system, builtin_schedule_tables, Schedule};
    use rand::{Rng, SeedableRng};

    #[test]
    fn int_system_matches_rational_path() {
        let t = GroupTable::s5();
        let stages = builtin_schedule_tables(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let mut ids = [0u16; 5];
            let mut k = 1;
            while k < 5 {
                let r = rng.gen_range(1..120) as u16;
                if !ids[..k].contains(&r) {
                    ids[k] = r;
                    k += 1;
                }
            }
            ids.sort_unstable();
            let q = t.permset(&ids);
            for stage in &stages {
                let schedule = Schedule::from_integer_table(stage).unwrap();
                for solved in 0..4 {
                    let sys = build_int_system(t, &ids[1..], solved, stage);
                    let (rsys, _) = build_gap_system(&q, &schedule, solved).unwrap();
                    for i in 0..4 {
                        assert_eq!(crate::rational::int(sys.b[i]), rsys.b[i]);
                        for j in 0..3 {
                            assert_eq!(crate::rational::int(sys.a[i][j]), rsys.a[i][j]);
                        }
                    }
                    let sol = alpha_beta(&rsys).unwrap();
                    match int_feasible(&sys) {
                        None => assert!(sol.singular),
                        Some(f) => assert_eq!(Some(f), sol.feasible()),
                    }
                }
            }
        }
    }

    #[test]
    fn feasible_attempts_verify_with_integer_witness() {
        let t = GroupTable::s5();
        let stages = builtin_schedule_tables(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut verified = 0;
        for _ in 0..200 {
            let mut ids = [0u16; 5];
            let mut k = 1;
            while k < 5 {
                let r = rng.gen_range(1..120) as u16;
                if !ids[..k].contains(&r) {
                    ids[k] = r;
                    k += 1;
                }
            }
            ids.sort_unstable();
            for solved in 0..4 {
                let sys = build_int_system(t, &ids[1..], solved, &stages[0]);
                if int_feasible(&sys) == Some(true) {
                    let (nu, du) = int_witness_velocity(&sys).expect("feasible and nonsingular");
                    assert!(int_verify(t, &ids[1..], solved, &stages[0], &sys, nu, du));
                    verified += 1;
                }
            }
        }
        assert!(verified > 100);
    }

    #[test]
    fn stage_bounds_hold_for_builtins() {
        for n in [5, 6] {
            for stage in builtin_schedule_tables(n) {
                assert!(stage_in_bounds(&stage));
            }
        }
    }
}
