//! Quasigap values on trie nodes: the defining formula plus a quadratic
//! in-tree evaluation used below the recursion cutoff.

use crate::induced_tree::InducedTree;
use crate::metrics::Metrics;
use itertools::Itertools;

/// Quasigap of a node's class within an interval. A finite value `q` means
/// every word of the class with length at least `q` is a quasiseed of the
/// interval; infinite means none is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuasigapValue {
    Finite(usize),
    Infinite,
}

impl QuasigapValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, QuasigapValue::Finite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match *self {
            QuasigapValue::Finite(q) => Some(q),
            QuasigapValue::Infinite => None,
        }
    }
}

/// Largest step between consecutive entries of an increasing position list;
/// 0 when there are fewer than two.
pub fn maxgap(sorted: &[u32]) -> usize {
    debug_assert!(sorted.windows(2).all(|p| p[0] < p[1]));
    sorted
        .windows(2)
        .map(|p| (p[1] - p[0]) as usize)
        .max()
        .unwrap_or(0)
}

/// Combines a node's occurrence statistics within `gamma = [i, j]` into its
/// quasigap.
///
/// A word of length `q` starting at each occurrence covers the interval iff
/// `q` beats the occurrence maxgap, reaches back over the uncovered left
/// stretch, and reaches the right end from the last start counting both the
/// start offset and the covered tail. Words shorter than `parent_len + 1`
/// belong to a different class, so they floor the answer; words longer than
/// the node's own word do not exist on its edge, so the value is infinite
/// beyond `word_len`.
pub fn quasigap_from_stats(
    first: usize,
    last: usize,
    mg: usize,
    parent_len: usize,
    gamma: (usize, usize),
    word_len: usize,
) -> QuasigapValue {
    let (i, j) = gamma;
    debug_assert!(i <= first && first <= last && last <= j);
    let m = mg
        .max(first - i + 1)
        .max((j - last).div_ceil(2) + 1)
        .max(parent_len + 1);
    if m <= word_len {
        QuasigapValue::Finite(m)
    } else {
        QuasigapValue::Infinite
    }
}

/// Quasigap of every node of `tree` within `gamma`, by merging each node's
/// occurrence list bottom-up. Time is the sum of list lengths over all
/// nodes, quadratic in the worst case, so callers keep the tree small.
pub fn brute_quasigaps(
    tree: &InducedTree,
    gamma: (usize, usize),
    metrics: &mut Metrics,
) -> Vec<QuasigapValue> {
    let count = tree.node_count();
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); count];
    let mut out = vec![QuasigapValue::Infinite; count];
    for v in (1..count).rev() {
        lists[v] = if let Some(p) = tree.leaf_pos(v) {
            vec![p as u32]
        } else {
            let kids: Vec<Vec<u32>> = tree
                .children(v)
                .map(|c| std::mem::take(&mut lists[c]))
                .collect();
            kids.into_iter().kmerge().collect()
        };
        metrics.brute_base_elems += lists[v].len() as u64;
        debug_assert_eq!(lists[v].len(), tree.occ_count(v));
        out[v] = quasigap_from_stats(
            tree.occ_first(v),
            tree.occ_last(v),
            maxgap(&lists[v]),
            tree.word_len(tree.parent(v)),
            gamma,
            tree.word_len(v),
        );
    }
    // The root's word is empty, and no interval is covered by nothing.
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text_index::{build_lcp_array, build_suffix_array, Text};
    use proptest::prelude::*;
    use QuasigapValue::{Finite, Infinite};

    fn bytes(s: &str) -> Vec<u32> {
        s.bytes().map(u32::from).collect()
    }

    fn tree_over(w: &[u32], i: usize, j: usize) -> InducedTree {
        if (i, j) == (0, w.len() - 1) {
            let text = Text::new(w.to_vec()).unwrap();
            let sa = build_suffix_array(&text);
            let lcp = build_lcp_array(&text, &sa);
            return InducedTree::from_suffix_arrays(w.len(), &sa, &lcp);
        }
        let mut by_rank: Vec<usize> = (i..=j).collect();
        by_rank.sort_by(|&a, &b| w[a..].cmp(&w[b..]));
        let positions: Vec<u32> = by_rank.iter().map(|&p| p as u32).collect();
        let wls: Vec<u32> = by_rank.iter().map(|&p| (w.len() - p) as u32).collect();
        let lcps: Vec<u32> = by_rank
            .windows(2)
            .map(|p| seedex_oracle::lce(w, p[0], p[1]) as u32)
            .collect();
        InducedTree::from_leaves(&positions, &wls, &lcps)
    }

    /// Every node against the definitional value. Leaves on zero-length
    /// edges carry no word of their own and must come out infinite; their
    /// word's answer belongs to the parent, checked separately.
    fn check_interval(w: &[u32], i: usize, j: usize) {
        let tree = tree_over(w, i, j);
        let got = brute_quasigaps(&tree, (i, j), &mut Metrics::default());
        assert_eq!(got[InducedTree::ROOT], Infinite);
        for v in 1..tree.node_count() {
            let wl = tree.word_len(v);
            if tree.is_leaf(v) && wl == tree.word_len(tree.parent(v)) {
                assert_eq!(got[v], Infinite, "zero-length edge at {v}");
                continue;
            }
            let f = tree.occ_first(v);
            let expect = seedex_oracle::quasigap_class(w, i, j, &w[f..f + wl])
                .map_or(Infinite, Finite);
            assert_eq!(got[v], expect, "node {v} of {w:?} in [{i}, {j}]");
        }
    }

    #[test]
    fn formula_edges() {
        // Maxgap dominates; value sits exactly at the word length.
        assert_eq!(quasigap_from_stats(0, 9, 5, 1, (0, 9), 5), Finite(5));
        assert_eq!(quasigap_from_stats(0, 9, 6, 1, (0, 9), 5), Infinite);
        // Uncovered left stretch.
        assert_eq!(quasigap_from_stats(4, 9, 0, 0, (0, 9), 9), Finite(5));
        // Right stretch is halved: the word also covers forward.
        assert_eq!(quasigap_from_stats(0, 4, 0, 0, (0, 9), 9), Finite(4));
        assert_eq!(quasigap_from_stats(0, 4, 0, 0, (0, 11), 9), Finite(5));
        // The class floor wins over everything else.
        assert_eq!(quasigap_from_stats(0, 9, 1, 7, (0, 9), 9), Finite(8));
        // An empty word covers nothing.
        assert_eq!(quasigap_from_stats(0, 9, 1, 0, (0, 9), 0), Infinite);
    }

    #[test]
    fn long_run_word() {
        // "aaabaaa" covers the span of its own occurrences once cut to
        // length 5, and not before.
        let w = bytes("aaaaaabaaabaaabaaaa");
        let tree = tree_over(&w, 0, w.len() - 1);
        let got = brute_quasigaps(&tree, (0, w.len() - 1), &mut Metrics::default());
        let target = bytes("aaabaaa");
        let mut hit = false;
        for v in 1..tree.node_count() {
            let (f, wl) = (tree.occ_first(v), tree.word_len(v));
            if !tree.is_leaf(v) && w[f..f + wl] == target[..] {
                assert_eq!(got[v], Finite(5));
                hit = true;
            }
        }
        assert!(hit, "expected a node for {target:?}");
        check_interval(&w, 0, w.len() - 1);
    }

    #[test]
    fn exhaustive_binary_words() {
        for n in 1..=12usize {
            for mask in 0u32..1 << n {
                let w: Vec<u32> = (0..n).map(|k| (mask >> k) & 1).collect();
                check_interval(&w, 0, n - 1);
            }
        }
    }

    proptest! {
        #[test]
        fn random_intervals(
            w in proptest::collection::vec(0u32..3, 2..40),
            lo in 0usize..1 << 16,
            hi in 0usize..1 << 16,
        ) {
            let (mut i, mut j) = (lo % w.len(), hi % w.len());
            if i > j {
                std::mem::swap(&mut i, &mut j);
            }
            check_interval(&w, i, j);
        }

        #[test]
        fn wider_alphabet(w in proptest::collection::vec(0u32..6, 1..48)) {
            check_interval(&w, 0, w.len() - 1);
        }
    }
}
