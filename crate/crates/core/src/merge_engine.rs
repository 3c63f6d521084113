//! Lifting quasigaps of interval tries back onto the tree they were cut
//! from, via batched path assignments over the ancestor relation.

use crate::induced_tree::{InducedTree, Subtree};
use crate::metrics::Metrics;
use crate::quasigap_core::QuasigapValue;

/// Weight standing for an infinite quasigap on a path; larger than any
/// position-scale weight, so it wins every maximum it appears in.
pub const INFINITE_WEIGHT: usize = usize::MAX;

#[cfg(debug_assertions)]
fn assert_ancestor(parent: &[u32], v: usize, u: usize) {
    // Walking the whole path keeps debug builds quadratic on deep trees, so
    // only small inputs get the full check.
    if parent.len() > 1 << 13 {
        return;
    }
    let mut x = v;
    while x != u && x != 0 {
        x = parent[x] as usize;
    }
    assert_eq!(x, u, "{u} is not an ancestor of {v}");
}

/// For each node, the largest weight among paths covering it, or `None` if
/// no path does. A path `(v, u, w)` covers the nodes from `v` up to but not
/// including `u`, which must be an ancestor of `v`. `parent` must satisfy
/// `parent[x] < x`.
///
/// Paths are bucket-sorted by weight, so weights other than
/// [`INFINITE_WEIGHT`] must stay position-scale. Each node is assigned once
/// and then skipped by pointer jumping, keeping the time near-linear in
/// nodes plus paths.
pub fn tree_path_max(parent: &[u32], paths: &[(usize, usize, usize)]) -> Vec<Option<usize>> {
    let n = parent.len();
    let mut depth = vec![0u32; n];
    for v in 1..n {
        let p = parent[v] as usize;
        assert!(p < v, "parents must precede children");
        depth[v] = depth[p] + 1;
    }

    let cap = paths
        .iter()
        .map(|&(_, _, w)| w)
        .filter(|&w| w != INFINITE_WEIGHT)
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); cap + 2];
    for (idx, &(_v, _u, w)) in paths.iter().enumerate() {
        #[cfg(debug_assertions)]
        assert_ancestor(parent, _v, _u);
        let key = if w == INFINITE_WEIGHT { cap + 1 } else { w };
        buckets[key].push(idx as u32);
    }

    // dsu[x] leads to the nearest unassigned ancestor-or-self.
    let mut dsu: Vec<u32> = (0..n as u32).collect();
    let find = move |dsu: &mut Vec<u32>, mut x: u32| -> u32 {
        while dsu[x as usize] != x {
            dsu[x as usize] = dsu[dsu[x as usize] as usize];
            x = dsu[x as usize];
        }
        x
    };

    let mut out = vec![None; n];
    for bucket in buckets.iter().rev() {
        for &idx in bucket {
            let (v, u, w) = paths[idx as usize];
            let mut x = find(&mut dsu, v as u32);
            while depth[x as usize] > depth[u] {
                out[x as usize] = Some(w);
                dsu[x as usize] = parent[x as usize];
                x = find(&mut dsu, x);
            }
        }
    }
    out
}

/// For each node, the total weight of paths covering it, with the same path
/// convention as [`tree_path_max`]: one difference entry per path endpoint,
/// folded up the tree in a single reverse-preorder pass.
pub fn tree_path_sum(parent: &[u32], paths: &[(usize, usize, usize)]) -> Vec<usize> {
    let n = parent.len();
    let mut acc = vec![0i64; n];
    for &(v, u, w) in paths {
        #[cfg(debug_assertions)]
        assert_ancestor(parent, v, u);
        acc[v] += w as i64;
        acc[u] -= w as i64;
    }
    for v in (1..n).rev() {
        let p = parent[v] as usize;
        assert!(p < v, "parents must precede children");
        acc[p] += acc[v];
    }
    acc.into_iter()
        .map(|x| usize::try_from(x).expect("path sums are non-negative"))
        .collect()
}

/// Combines per-interval quasigaps into quasigaps of the parent tree, for
/// values up to `m`.
///
/// `parts` pairs each extracted interval trie with the quasigaps of its
/// nodes within its own interval; the intervals must jointly cover the
/// parent's. Returns, per parent node, `Some(q)` when its quasigap within
/// the parent interval is `q <= m`, and `None` when it exceeds `m`.
///
/// A word no longer than `m` covers the parent interval iff it covers every
/// ladder interval, because consecutive intervals overlap in `2m` positions;
/// so the answer is the largest per-interval value along the word's edge
/// paths, provided the word's class occurs in every interval at all, which
/// the unit-weight cover count checks.
pub fn merge(
    parent: &InducedTree,
    parts: &[(&Subtree, &[QuasigapValue])],
    m: usize,
    metrics: &mut Metrics,
) -> Vec<Option<usize>> {
    let count = parent.node_count();
    let mut paths: Vec<(usize, usize, usize)> = Vec::new();
    let mut unit: Vec<(usize, usize, usize)> = Vec::new();
    for (sub, qgs) in parts {
        debug_assert_eq!(qgs.len(), sub.tree.node_count());
        for v in 1..sub.tree.node_count() {
            let u = sub.tree.parent(v);
            let (cv, cu) = (sub.corr[v] as usize, sub.corr[u] as usize);
            if cv == cu {
                continue;
            }
            let w = qgs[v].finite().unwrap_or(INFINITE_WEIGHT);
            paths.push((cv, cu, w));
            unit.push((cv, cu, 1));
        }
    }
    metrics.merge_ops += (paths.len() + count) as u64;

    let maxes = tree_path_max(parent.parents(), &paths);
    let covers = tree_path_sum(parent.parents(), &unit);
    let k = parts.len();
    (0..count)
        .map(|x| {
            if parent.word_len(parent.parent(x)) >= m || covers[x] != k {
                return None;
            }
            match maxes[x] {
                Some(w) if w <= m && w <= parent.word_len(x) => Some(w),
                _ => None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induced_tree::extract_subtrees;
    use crate::quasigap_core::brute_quasigaps;
    use crate::staircase::build_staircase;
    use crate::text_index::{build_lcp_array, build_suffix_array, LcaIndex, LceIndex, Text};
    use proptest::prelude::*;

    #[test]
    fn fixed_chain() {
        let parent = vec![0u32, 0, 1, 1];
        let paths = vec![(2, 0, 5), (3, 1, 3)];
        assert_eq!(
            tree_path_max(&parent, &paths),
            vec![None, Some(5), Some(5), Some(3)]
        );
        assert_eq!(tree_path_sum(&parent, &paths), vec![0, 5, 5, 3]);
        // Empty paths touch nothing.
        assert_eq!(
            tree_path_max(&parent, &[(3, 3, 9)]),
            vec![None, None, None, None]
        );
    }

    #[test]
    fn deep_chain_assigns_once() {
        // On a chain, later lighter paths must skip over assigned stretches.
        let n = 2000;
        let parent: Vec<u32> = (0..n as u32).map(|v| v.saturating_sub(1)).collect();
        let mut paths = Vec::new();
        for k in (1..n).step_by(7) {
            paths.push((n - 1, n - 1 - k, k));
        }
        let got = tree_path_max(&parent, &paths);
        let naive = seedex_oracle::tree_path_max_naive(
            &parent.iter().map(|&x| x as usize).collect::<Vec<_>>(),
            &to_u64(&paths),
        );
        assert_eq!(to_opt_u64(&got), naive);
    }

    fn to_u64(paths: &[(usize, usize, usize)]) -> Vec<(usize, usize, u64)> {
        paths.iter().map(|&(v, u, w)| (v, u, w as u64)).collect()
    }

    fn to_opt_u64(vals: &[Option<usize>]) -> Vec<Option<u64>> {
        vals.iter().map(|v| v.map(|w| w as u64)).collect()
    }

    proptest! {
        #[test]
        fn random_trees_match_naive(
            shape in proptest::collection::vec(0usize..1 << 16, 1..64),
            raw_paths in proptest::collection::vec(
                (0usize..1 << 16, 0usize..8, 0usize..40), 0..48),
        ) {
            let mut parent = vec![0u32];
            for (v, r) in shape.iter().enumerate() {
                parent.push((r % (v + 1)) as u32);
            }
            let n = parent.len();
            let mut paths = Vec::new();
            for &(vr, steps, w) in &raw_paths {
                let v = vr % n;
                let mut u = v;
                for _ in 0..steps {
                    u = parent[u] as usize;
                }
                let w = if w == 39 { INFINITE_WEIGHT } else { w };
                paths.push((v, u, w));
            }
            let parent_usize: Vec<usize> = parent.iter().map(|&x| x as usize).collect();
            prop_assert_eq!(
                to_opt_u64(&tree_path_max(&parent, &paths)),
                seedex_oracle::tree_path_max_naive(&parent_usize, &to_u64(&paths))
            );
            let sums: Vec<(usize, usize, usize)> =
                paths.iter().map(|&(v, u, _)| (v, u, 1)).collect();
            let got_sums: Vec<u64> =
                tree_path_sum(&parent, &sums).iter().map(|&x| x as u64).collect();
            prop_assert_eq!(
                got_sums,
                seedex_oracle::tree_path_sum_naive(&parent_usize, &to_u64(&sums))
            );
        }

        /// Full sandwich: cut the ladder intervals out of a word's trie,
        /// evaluate each cut by brute force, merge back, and compare with
        /// brute force on the whole interval for every value up to m.
        #[test]
        fn merge_matches_brute(
            w in proptest::collection::vec(0u32..2, 4..56),
            m in 1usize..8,
        ) {
            let n = w.len();
            let text = Text::new(w.clone()).unwrap();
            let sa = build_suffix_array(&text);
            let lcp = build_lcp_array(&text, &sa);
            let parent = InducedTree::from_suffix_arrays(n, &sa, &lcp);
            let lce = LceIndex::new(&text);
            let lca = LcaIndex::new(parent.parents());
            let ladder = build_staircase(0, n - 1, m).unwrap();
            let mut metrics = Metrics::default();
            let subs = extract_subtrees(
                &parent, &ladder, (0, n - 1), m, &lce, &lca, &mut metrics,
            );
            let child_qgs: Vec<Vec<QuasigapValue>> = subs
                .iter()
                .map(|s| brute_quasigaps(&s.tree, s.interval, &mut metrics))
                .collect();
            let parts: Vec<(&Subtree, &[QuasigapValue])> = subs
                .iter()
                .zip(&child_qgs)
                .map(|(s, q)| (s, q.as_slice()))
                .collect();
            let got = merge(&parent, &parts, m, &mut metrics);
            let want = brute_quasigaps(&parent, (0, n - 1), &mut metrics);
            for v in 0..parent.node_count() {
                let expect = match want[v] {
                    QuasigapValue::Finite(q) if q <= m => Some(q),
                    _ => None,
                };
                prop_assert_eq!(got[v], expect, "node {} of {:?} at m={}", v, &w, m);
            }
        }
    }
}
