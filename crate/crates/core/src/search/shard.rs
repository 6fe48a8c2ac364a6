//! Colexicographic ranking of 4-element subsets, used to carve the sweep
//! spaces into resumable, deterministic rank intervals.

/// `C(n, k)` in u64 (small fixed `k`).
pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Number of 4-subsets of a `pool`-element universe.
pub fn total_combinations(pool: u64) -> u64 {
    choose(pool, 4)
}

/// Colex rank of `0 <= c0 < c1 < c2 < c3 < pool`:
/// `C(c0,1) + C(c1,2) + C(c2,3) + C(c3,4)`.
pub fn rank4(c: [u64; 4]) -> u64 {
    choose(c[0], 1) + choose(c[1], 2) + choose(c[2], 3) + choose(c[3], 4)
}

/// Inverse of [`rank4`].
pub fn unrank4(mut r: u64) -> [u64; 4] {
    let mut out = [0u64; 4];
    for k in (1..=4u64).rev() {
        // largest c with C(c, k) <= r
        let mut lo = k - 1;
        let mut hi = lo + 1;
        while choose(hi, k) <= r {
            hi *= 2;
        }
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if choose(mid, k) <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[k as usize - 1] = lo;
        r -= choose(lo, k);
    }
    out
}

/// Iterates the 4-subsets with colex ranks in `[start, end)`.
pub struct CombinationRange {
    current: [u64; 4],
    remaining: u64,
}

impl CombinationRange {
    pub fn new(start: u64, end: u64) -> CombinationRange {
        CombinationRange {
            current: unrank4(start),
            remaining: end.saturating_sub(start),
        }
    }
}

impl Iterator for CombinationRange {
    type Item = [u64; 4];

    fn next(&mut self) -> Option<[u64; 4]> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current;
        // colex successor: bump the first index that has room, reset below
        let c = &mut self.current;
        if c[0] + 1 < c[1] {
            c[0] += 1;
        } else if c[1] + 1 < c[2] {
            c[1] += 1;
            c[0] = 0;
        } else if c[2] + 1 < c[3] {
            c[2] += 1;
            c[0] = 0;
            c[1] = 1;
        } else {
            c[3] += 1;
            c[0] = 0;
            c[1] = 1;
            c[2] = 2;
        }
        Some(out)
    }
}

/// Splits `[0, total)` into `parts` near-equal rank intervals.
pub fn split_range(total: u64, parts: u64) -> Vec<(u64, u64)> {
    let parts = parts.clamp(1, total.max(1));
    (0..parts)
        .map(|i| (total * i / parts, total * (i + 1) / parts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals() {
        assert_eq!(total_combinations(119), 7_940_751);
        assert_eq!(total_combinations(719), 11_042_674_501);
    }

    #[test]
    fn rank_roundtrip() {
        for r in [0u64, 1, 2, 57, 9999, 7_940_750] {
            assert_eq!(rank4(unrank4(r)), r);
        }
        assert_eq!(unrank4(0), [0, 1, 2, 3]);
    }

    #[test]
    fn iteration_matches_unranking() {
        let mut it = CombinationRange::new(100, 160);
        for r in 100..160 {
            assert_eq!(it.next().unwrap(), unrank4(r));
        }
        assert!(it.next().is_none());
    }

    #[test]
    fn split_covers_everything() {
        let ranges = split_range(1000, 7);
        assert_eq!(ranges.first().unwrap().0, 0);
        assert_eq!(ranges.last().unwrap().1, 1000);
        for w in ranges.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
