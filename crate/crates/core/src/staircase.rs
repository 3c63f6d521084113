//! Overlapping interval ladders, their reduction against a factorization,
//! and the solver's size constants.

use crate::error::{Error, Result};
use crate::factorization::Factorization;

/// Size constants driving the recursion in the quasigap solver.
///
/// `delta` is the margin trimmed off an interval when counting middle
/// factors; `step` is the ladder step. Both divisors are denominators, so a
/// larger value means a smaller quantity. [`SolverConfig::RELEASE`] holds
/// the constants the size bounds are proven for; [`SolverConfig::TEST_SCALED`]
/// shrinks the brute-force cutoff so tests can exercise the full recursive
/// machinery on tiny words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Interval length at or below which the brute-force path runs.
    pub base_cutoff: usize,
    /// Denominator for the middle-factor margin: delta = n / margin_den.
    pub margin_den: usize,
    /// Denominator for the ladder step: m = n / (step_den * g).
    pub step_den: usize,
}

impl SolverConfig {
    /// The step divisor is deliberately twice the margin divisor. The
    /// working-interval total is bounded by 12*delta + 12m(g+2) + O(m),
    /// and with m = n/(100g) and g >= 3 that stays below n/2. A divisor
    /// of 50 does not: a (2,0)-periodic word of length 459 with one
    /// mutated letter near the end yields g = 3, m = 3 and a kept total
    /// of 234 >= 229.
    pub const RELEASE: SolverConfig = SolverConfig {
        base_cutoff: 200,
        margin_den: 50,
        step_den: 100,
    };

    /// Everything longer than 4 recurses, the margin vanishes so the large
    /// windows cover the whole value range, and the step stays positive for
    /// any non-trivial factorization.
    pub const TEST_SCALED: SolverConfig = SolverConfig {
        base_cutoff: 4,
        margin_den: usize::MAX,
        step_den: 2,
    };

    pub fn delta(&self, n: usize) -> usize {
        n / self.margin_den
    }

    /// Ladder step for an interval of length `n` with `g` middle factors;
    /// 0 when `g` is 0.
    pub fn step(&self, n: usize, g: usize) -> usize {
        if g == 0 {
            0
        } else {
            n / self.step_den.saturating_mul(g)
        }
    }

    /// Whether the proven size-bound assertions apply.
    pub fn is_release(&self) -> bool {
        *self == Self::RELEASE
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::RELEASE
    }
}

/// Intervals `(start, end)`, inclusive and 0-based, covering `[i, j]`: the
/// k-th starts at `i + k*m` and spans `3m` positions, so consecutive
/// intervals overlap in exactly `2m`; the last is clipped to `j` and keeps
/// length at least `2m + 1` unless it is the only one.
pub fn build_staircase(i: usize, j: usize, m: usize) -> Result<Vec<(usize, usize)>> {
    if m == 0 {
        return Err(Error::ZeroStep);
    }
    assert!(i <= j, "empty interval");
    let n = j - i + 1;
    let k_max = n.div_ceil(m).saturating_sub(3);
    Ok((0..=k_max)
        .map(|k| (i + k * m, (i + (k + 3) * m - 1).min(j)))
        .collect())
}

/// Working intervals: ladder members whose `m`-extension crosses a factor
/// boundary of the subword's factorization. With `keep_clamped`, intervals
/// whose extension was cut short by the right end of `gamma` are kept
/// unconditionally; the copy argument that justifies dropping an interval
/// needs the full extension, so those drops are not safe to rely on.
pub fn reduce_staircase(
    ladder: &[(usize, usize)],
    fact: &Factorization,
    m: usize,
    gamma: (usize, usize),
    keep_clamped: bool,
) -> Vec<(usize, usize)> {
    let (i, j) = gamma;
    ladder
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let clamped = b + m > j;
            let ext = (b + m).min(j);
            fact.factor_index(a - i) != fact.factor_index(ext - i)
                || (keep_clamped && clamped)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn config_values() {
        let release = SolverConfig::RELEASE;
        assert_eq!(release.delta(1000), 20);
        assert_eq!(release.step(1000, 4), 2);
        assert_eq!(release.step(1000, 0), 0);
        let test = SolverConfig::TEST_SCALED;
        assert_eq!(test.delta(1000), 0);
        assert_eq!(test.step(12, 3), 2);
        assert!(release.is_release());
        assert!(!test.is_release());
    }

    #[test]
    fn ladder_fixed_shapes() {
        // Length 10 starting at 0, step 2: three windows.
        assert_eq!(
            build_staircase(0, 9, 2).unwrap(),
            vec![(0, 5), (2, 7), (4, 9)]
        );
        // Step 3: two windows, the second clipped.
        assert_eq!(build_staircase(0, 9, 3).unwrap(), vec![(0, 8), (3, 9)]);
        // Fits in one window.
        assert_eq!(build_staircase(5, 10, 2).unwrap(), vec![(5, 10)]);
        assert!(build_staircase(0, 9, 0).is_err());
    }

    proptest! {
        #[test]
        fn ladder_invariants(n in 1usize..400, m in 1usize..40, i in 0usize..50) {
            let j = i + n - 1;
            let ladder = build_staircase(i, j, m).unwrap();
            // Starts advance by m; ends are monotone; all inside [i, j].
            for (k, &(a, b)) in ladder.iter().enumerate() {
                prop_assert_eq!(a, i + k * m);
                prop_assert!(a <= b && b <= j);
                let len = b - a + 1;
                prop_assert!(len <= 3 * m);
                if ladder.len() > 1 {
                    prop_assert!(len >= 2 * m + 1);
                } else {
                    prop_assert_eq!((a, b), (i, j));
                }
            }
            // Coverage without gaps and exact 2m overlaps.
            prop_assert_eq!(ladder[0].0, i);
            prop_assert_eq!(ladder[ladder.len() - 1].1, j);
            for pair in ladder.windows(2) {
                let ((_, b0), (a1, _)) = (pair[0], pair[1]);
                prop_assert!(a1 <= b0);
                prop_assert_eq!(b0 - a1 + 1, 2 * m);
            }
        }

        /// Bound from the staircase-vs-factors argument: every kept interval
        /// charges a factor boundary, and a boundary fits in at most 4
        /// extended intervals.
        #[test]
        fn reduction_size_bound(w in proptest::collection::vec(0u32..2, 2..300)) {
            let n = w.len();
            let fact = Factorization::new(&w);
            for m in 1..=n {
                let ladder = build_staircase(0, n - 1, m).unwrap();
                let strict = reduce_staircase(&ladder, &fact, m, (0, n - 1), false);
                prop_assert!(strict.len() <= 4 * (fact.count() - 1));
                let kept = reduce_staircase(&ladder, &fact, m, (0, n - 1), true);
                prop_assert!(kept.len() <= 4 * (fact.count() - 1) + 3);
                // The clamped-keep variant is a superset preserving order.
                let mut it = kept.iter();
                for lam in &strict {
                    prop_assert!(it.any(|x| x == lam));
                }
            }
        }

        #[test]
        fn singleton_factors_keep_everything(n in 2usize..40, m in 1usize..10) {
            // Strictly growing symbols: every factor is a single letter.
            let w: Vec<u32> = (0..n as u32).collect();
            let fact = Factorization::new(&w);
            prop_assert_eq!(fact.count(), n);
            let ladder = build_staircase(0, n - 1, m).unwrap();
            let kept = reduce_staircase(&ladder, &fact, m, (0, n - 1), false);
            prop_assert_eq!(kept, ladder);
        }
    }

    /// A doubled block: the second half is one factor, so ladder intervals
    /// whose extension stays inside it are dropped.
    #[test]
    fn copies_are_dropped() {
        let half: Vec<u32> = (0..20u32).collect();
        let mut w = half.clone();
        w.extend_from_slice(&half);
        let fact = Factorization::new(&w);
        let m = 2;
        let ladder = build_staircase(0, 39, m).unwrap();
        let kept = reduce_staircase(&ladder, &fact, m, (0, 39), false);
        assert!(kept.len() < ladder.len());
        for &(a, b) in &kept {
            let ext = (b + m).min(39);
            assert_ne!(fact.factor_index(a), fact.factor_index(ext));
        }
    }
}
