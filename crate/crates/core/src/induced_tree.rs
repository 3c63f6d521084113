//! Compacted tries over a set of suffix start positions, and the extraction
//! of such tries for many overlapping intervals in one pass.

use crate::metrics::Metrics;
use crate::text_index::{LcaIndex, LceIndex};

const EMPTY: u32 = u32::MAX;

/// Compacted trie induced by a set of suffixes, with per-node occurrence
/// statistics.
///
/// Nodes are numbered in preorder with the root at 0, so `parent(v) < v` and
/// subtrees are contiguous id ranges. Leaves appear in preorder in the input
/// order, which callers keep equal to suffix rank order; each leaf carries
/// one start position. The root is always the empty word, even when every
/// leaf shares a prefix, so the root can be unary. A leaf whose word is a
/// prefix of a sibling subtree's words hangs on an edge of length zero; no
/// other edge is empty.
pub struct InducedTree {
    parent: Vec<u32>,
    word_len: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    leaf_pos: Vec<u32>,
    /// For internal non-root nodes, the left leaf index of an adjacent leaf
    /// pair meeting exactly at this node.
    witness: Vec<u32>,
    /// Leaf positions in leaf (= rank) order, and the node id of each leaf.
    leaves: Vec<u32>,
    leaf_node: Vec<u32>,
    /// Per node: leaf index range of the subtree, inclusive.
    leaf_lo: Vec<u32>,
    leaf_hi: Vec<u32>,
    /// Per node: smallest and largest position in the subtree, and how many.
    occ_first: Vec<u32>,
    occ_last: Vec<u32>,
    occ_count: Vec<u32>,
}

struct Builder {
    parent: Vec<u32>,
    word_len: Vec<u32>,
    leaf_pos: Vec<u32>,
    witness: Vec<u32>,
    last_child: Vec<u32>,
    prev_sibling: Vec<u32>,
}

impl Builder {
    fn with_capacity(cap: usize) -> Builder {
        Builder {
            parent: Vec::with_capacity(cap),
            word_len: Vec::with_capacity(cap),
            leaf_pos: Vec::with_capacity(cap),
            witness: Vec::with_capacity(cap),
            last_child: Vec::with_capacity(cap),
            prev_sibling: Vec::with_capacity(cap),
        }
    }

    fn new_node(&mut self, parent: u32, word_len: u32, leaf: u32, witness: u32) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(parent);
        self.word_len.push(word_len);
        self.leaf_pos.push(leaf);
        self.witness.push(witness);
        self.last_child.push(EMPTY);
        self.prev_sibling.push(EMPTY);
        id
    }

    fn append_child(&mut self, t: u32, c: u32) {
        self.prev_sibling[c as usize] = self.last_child[t as usize];
        self.last_child[t as usize] = c;
    }
}

impl InducedTree {
    pub const ROOT: usize = 0;

    /// Builds the trie from leaves given in rank order. `wls[t]` is the word
    /// length of leaf `t` and `lcps[t]` the longest common prefix of leaves
    /// `t` and `t + 1`; positions must be distinct and word lengths positive.
    pub fn from_leaves(positions: &[u32], wls: &[u32], lcps: &[u32]) -> InducedTree {
        let l = positions.len();
        assert!(l > 0, "a trie needs at least one leaf");
        assert_eq!(wls.len(), l);
        assert_eq!(lcps.len(), l - 1);

        let mut b = Builder::with_capacity(2 * l + 1);
        let root = b.new_node(0, 0, EMPTY, EMPTY);

        // Rightmost path; leaves sit on the stack one deeper than their word
        // so a following boundary always pops them (lcp <= word length).
        let mut stack: Vec<(u32, u32)> = vec![(root, 0)];
        for t in 0..l {
            let h = if t == 0 { 0 } else { lcps[t - 1] };
            debug_assert!(wls[t] >= h && wls[t] > 0);
            let mut last_popped = EMPTY;
            while stack.last().unwrap().1 > h {
                last_popped = stack.pop().unwrap().0;
            }
            let (top, top_depth) = *stack.last().unwrap();
            let attach = if top_depth == h {
                top
            } else {
                // Split towards `last_popped`, which is `top`'s newest child;
                // the new node takes its place to keep sibling order.
                debug_assert!(last_popped != EMPTY);
                let u = b.new_node(top, h, EMPTY, t as u32 - 1);
                let lp = last_popped as usize;
                b.prev_sibling[u as usize] = b.prev_sibling[lp];
                b.last_child[top as usize] = u;
                b.parent[lp] = u;
                b.prev_sibling[lp] = EMPTY;
                b.last_child[u as usize] = last_popped;
                stack.push((u, h));
                u
            };
            let leaf = b.new_node(attach, wls[t], positions[t], EMPTY);
            b.append_child(attach, leaf);
            stack.push((leaf, wls[t] + 1));
        }

        let count = b.parent.len();
        let mut first_child = vec![EMPTY; count];
        let mut next_sibling = vec![EMPTY; count];
        for t in 0..count {
            let mut c = b.last_child[t];
            let mut next = EMPTY;
            while c != EMPTY {
                let prev = b.prev_sibling[c as usize];
                next_sibling[c as usize] = next;
                next = c;
                c = prev;
            }
            first_child[t] = next;
        }

        // Renumber to preorder.
        let mut order = vec![EMPTY; count];
        let mut next_id = 0u32;
        let mut v = root;
        loop {
            order[v as usize] = next_id;
            next_id += 1;
            if first_child[v as usize] != EMPTY {
                v = first_child[v as usize];
                continue;
            }
            loop {
                if next_sibling[v as usize] != EMPTY {
                    v = next_sibling[v as usize];
                    break;
                }
                if v == root {
                    break;
                }
                v = b.parent[v as usize];
            }
            if v == root {
                break;
            }
        }
        debug_assert_eq!(next_id as usize, count);

        let remap = |x: u32| if x == EMPTY { EMPTY } else { order[x as usize] };
        let mut tree = InducedTree {
            parent: vec![0; count],
            word_len: vec![0; count],
            first_child: vec![0; count],
            next_sibling: vec![0; count],
            leaf_pos: vec![0; count],
            witness: vec![0; count],
            leaves: Vec::with_capacity(l),
            leaf_node: vec![0; l],
            leaf_lo: vec![0; count],
            leaf_hi: vec![0; count],
            occ_first: vec![0; count],
            occ_last: vec![0; count],
            occ_count: vec![0; count],
        };
        for old in 0..count {
            let new = order[old] as usize;
            tree.parent[new] = remap(b.parent[old]);
            tree.word_len[new] = b.word_len[old];
            tree.first_child[new] = remap(first_child[old]);
            tree.next_sibling[new] = remap(next_sibling[old]);
            tree.leaf_pos[new] = b.leaf_pos[old];
            tree.witness[new] = b.witness[old];
        }

        // Leaves in preorder are the input order; fold the occurrence stats
        // and leaf ranges bottom-up.
        tree.occ_first.fill(u32::MAX);
        tree.leaf_lo.fill(u32::MAX);
        for v in 0..count {
            if tree.leaf_pos[v] != EMPTY {
                let t = tree.leaves.len();
                debug_assert_eq!(tree.leaf_pos[v], positions[t]);
                tree.leaves.push(tree.leaf_pos[v]);
                tree.leaf_node[t] = v as u32;
                let (t, p) = (t as u32, tree.leaf_pos[v]);
                (tree.leaf_lo[v], tree.leaf_hi[v]) = (t, t);
                (tree.occ_first[v], tree.occ_last[v]) = (p, p);
                tree.occ_count[v] = 1;
            }
        }
        for v in (1..count).rev() {
            let u = tree.parent[v] as usize;
            tree.leaf_lo[u] = tree.leaf_lo[u].min(tree.leaf_lo[v]);
            tree.leaf_hi[u] = tree.leaf_hi[u].max(tree.leaf_hi[v]);
            tree.occ_first[u] = tree.occ_first[u].min(tree.occ_first[v]);
            tree.occ_last[u] = tree.occ_last[u].max(tree.occ_last[v]);
            tree.occ_count[u] += tree.occ_count[v];
        }
        tree
    }

    /// Trie of all suffixes, from the sentinel-bearing suffix and LCP arrays
    /// of an `n`-symbol text. The bare sentinel leaf is left out.
    pub fn from_suffix_arrays(n: usize, sa: &[u32], lcp: &[u32]) -> InducedTree {
        assert_eq!(sa.len(), n + 1);
        assert_eq!(lcp.len(), n + 1);
        let wls: Vec<u32> = sa[1..].iter().map(|&p| n as u32 - p).collect();
        InducedTree::from_leaves(&sa[1..], &wls, &lcp[2..])
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v] as usize
    }

    /// Parent array over preorder ids, for ancestry indexes and path folds.
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn word_len(&self, v: usize) -> usize {
        self.word_len[v] as usize
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.leaf_pos[v] != EMPTY
    }

    pub fn leaf_pos(&self, v: usize) -> Option<usize> {
        (self.leaf_pos[v] != EMPTY).then_some(self.leaf_pos[v] as usize)
    }

    pub fn children(&self, v: usize) -> Children<'_> {
        Children {
            tree: self,
            cur: self.first_child[v],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// All leaf positions in rank order.
    pub fn leaf_positions(&self) -> &[u32] {
        &self.leaves
    }

    /// Node id of the `t`-th leaf.
    pub fn leaf_node(&self, t: usize) -> usize {
        self.leaf_node[t] as usize
    }

    /// Inclusive leaf index range of the subtree under `v`.
    pub fn leaf_range(&self, v: usize) -> (usize, usize) {
        (self.leaf_lo[v] as usize, self.leaf_hi[v] as usize)
    }

    /// Positions under `v`, in rank order.
    pub fn leaf_slice(&self, v: usize) -> &[u32] {
        &self.leaves[self.leaf_lo[v] as usize..=self.leaf_hi[v] as usize]
    }

    /// Smallest position under `v`.
    pub fn occ_first(&self, v: usize) -> usize {
        self.occ_first[v] as usize
    }

    /// Largest position under `v`.
    pub fn occ_last(&self, v: usize) -> usize {
        self.occ_last[v] as usize
    }

    /// Number of leaves under `v`.
    pub fn occ_count(&self, v: usize) -> usize {
        self.occ_count[v] as usize
    }
}

pub struct Children<'a> {
    tree: &'a InducedTree,
    cur: u32,
}

impl Iterator for Children<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == EMPTY {
            return None;
        }
        let v = self.cur as usize;
        self.cur = self.tree.next_sibling[v];
        Some(v)
    }
}

/// A trie induced by the positions inside one interval, with each node
/// mapped to its locus in the tree it was cut from.
pub struct Subtree {
    pub interval: (usize, usize),
    pub tree: InducedTree,
    /// Parent-tree node holding the same word, per node of `tree`.
    pub corr: Vec<u32>,
}

/// Cuts out the trie induced by each interval of `kept`, which must be
/// intervals of the step-`m` ladder over `gamma`; leaves of `parent` must
/// cover exactly `gamma`. Runs in one scan over the parent's leaves plus
/// time linear in the total output size: a position lands in at most three
/// ladder intervals, found from its offset alone.
pub fn extract_subtrees(
    parent: &InducedTree,
    kept: &[(usize, usize)],
    gamma: (usize, usize),
    m: usize,
    lce: &LceIndex,
    lca: &LcaIndex,
    metrics: &mut Metrics,
) -> Vec<Subtree> {
    let (i, j) = gamma;
    if kept.is_empty() {
        return Vec::new();
    }
    let max_k = kept.iter().map(|&(a, _)| (a - i) / m).max().unwrap();
    let mut slot_of = vec![EMPTY; max_k + 1];
    for (s, &(a, b)) in kept.iter().enumerate() {
        let k = (a - i) / m;
        debug_assert!(i + k * m == a && a <= b && b <= j);
        slot_of[k] = s as u32;
    }

    // Leaf indices per kept interval, in rank order.
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); kept.len()];
    for (t, &p) in parent.leaf_positions().iter().enumerate() {
        let p = p as usize;
        debug_assert!((i..=j).contains(&p));
        let base = (p - i) / m;
        for k in base.saturating_sub(2)..=base.min(max_k) {
            let s = slot_of[k];
            if s != EMPTY && p <= kept[s as usize].1 {
                buckets[s as usize].push(t as u32);
                metrics.extract_ops += 1;
            }
        }
    }

    kept.iter()
        .zip(buckets)
        .map(|(&interval, idxs)| {
            debug_assert!(!idxs.is_empty());
            let positions: Vec<u32> =
                idxs.iter().map(|&t| parent.leaves[t as usize]).collect();
            let wls: Vec<u32> = idxs
                .iter()
                .map(|&t| parent.word_len[parent.leaf_node[t as usize] as usize])
                .collect();
            let lcps: Vec<u32> = positions
                .windows(2)
                .map(|p| lce.lce(p[0] as usize, p[1] as usize) as u32)
                .collect();
            let tree = InducedTree::from_leaves(&positions, &wls, &lcps);

            let up = |t: u32| parent.leaf_node[idxs[t as usize] as usize] as usize;
            let mut corr = vec![0u32; tree.node_count()];
            for v in 1..tree.node_count() {
                corr[v] = if tree.is_leaf(v) {
                    up(tree.leaf_lo[v]) as u32
                } else {
                    let t = tree.witness[v];
                    let a = lca
                        .lca(up(t), up(t + 1))
                        .expect("parent leaves are in the ancestry index");
                    debug_assert_eq!(parent.word_len[a], tree.word_len[v]);
                    a as u32
                };
            }
            metrics.extract_ops += tree.node_count() as u64;
            Subtree { interval, tree, corr }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::build_staircase;
    use crate::text_index::{build_lcp_array, build_suffix_array, Text};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn bytes(s: &str) -> Vec<u32> {
        s.bytes().map(u32::from).collect()
    }

    fn full_tree(w: &[u32]) -> InducedTree {
        let text = Text::new(w.to_vec()).unwrap();
        let sa = build_suffix_array(&text);
        let lcp = build_lcp_array(&text, &sa);
        InducedTree::from_suffix_arrays(w.len(), &sa, &lcp)
    }

    fn induce(w: &[u32], subset: &[usize]) -> InducedTree {
        let mut by_rank = subset.to_vec();
        by_rank.sort_by(|&a, &b| w[a..].cmp(&w[b..]));
        let positions: Vec<u32> = by_rank.iter().map(|&p| p as u32).collect();
        let wls: Vec<u32> = by_rank.iter().map(|&p| (w.len() - p) as u32).collect();
        let lcps: Vec<u32> = by_rank
            .windows(2)
            .map(|p| seedex_oracle::lce(w, p[0], p[1]) as u32)
            .collect();
        InducedTree::from_leaves(&positions, &wls, &lcps)
    }

    /// Node set as (depth, sorted positions) with the oracle's convention of
    /// counting the end marker in leaf depths; the forced empty root is
    /// dropped when it is unary.
    fn shape_of(tree: &InducedTree) -> Vec<(usize, Vec<usize>)> {
        let mut nodes = Vec::new();
        for v in 0..tree.node_count() {
            if v == InducedTree::ROOT && tree.children(v).nth(1).is_none() {
                continue;
            }
            let mut occ: Vec<usize> =
                tree.leaf_slice(v).iter().map(|&p| p as usize).collect();
            occ.sort_unstable();
            let d = tree.word_len(v) + usize::from(tree.is_leaf(v));
            nodes.push((d, occ));
        }
        nodes.sort();
        nodes
    }

    fn check_against_oracle(w: &[u32], subset: &[usize], tree: &InducedTree) {
        assert_eq!(shape_of(tree), seedex_oracle::induced_shape(w, subset));
        check_invariants(tree);
    }

    fn check_invariants(tree: &InducedTree) {
        let count = tree.node_count();
        let mut seen_leaves = 0usize;
        for v in 1..count {
            let u = tree.parent(v);
            assert!(u < v);
            if tree.is_leaf(v) {
                assert!(tree.children(v).next().is_none());
                assert_eq!(tree.leaf_node(tree.leaf_range(v).0), v);
                // Zero-length edges carry a word that ends at the branch.
                assert!(tree.word_len(v) >= tree.word_len(u));
                seen_leaves += 1;
            } else {
                assert!(tree.word_len(v) > tree.word_len(u));
                assert!(tree.children(v).nth(1).is_some(), "unary inner node {v}");
            }
            let (lo, hi) = tree.leaf_range(v);
            let slice = tree.leaf_slice(v);
            assert_eq!(slice.len(), hi - lo + 1);
            assert_eq!(tree.occ_count(v), slice.len());
            assert_eq!(
                tree.occ_first(v) as u32,
                slice.iter().copied().min().unwrap()
            );
            assert_eq!(
                tree.occ_last(v) as u32,
                slice.iter().copied().max().unwrap()
            );
            // Children partition the parent's leaf range in order.
            let mut at = lo;
            for c in tree.children(v) {
                let (clo, chi) = tree.leaf_range(c);
                assert_eq!(clo, at);
                at = chi + 1;
            }
            if tree.children(v).next().is_some() {
                assert_eq!(at, hi + 1);
            }
        }
        assert_eq!(seen_leaves, tree.leaf_count());
    }

    #[test]
    fn unary_alphabet_chains() {
        // "aaa": the branch nodes "a" and "aa" each carry a leaf on a
        // zero-length edge.
        let w = bytes("aaa");
        let tree = full_tree(&w);
        assert_eq!(tree.node_count(), 6);
        check_against_oracle(&w, &[0, 1, 2], &tree);
        let chain = induce(&w, &[2]);
        assert_eq!(chain.node_count(), 2);
        assert_eq!(chain.word_len(1), 1);
        assert_eq!(chain.leaf_pos(1), Some(2));
    }

    #[test]
    fn full_tree_matches_oracle() {
        for s in ["a", "ab", "abab", "banana", "mississippi", "aaabaabaabaaabaaba"] {
            let w = bytes(s);
            let all: Vec<usize> = (0..w.len()).collect();
            check_against_oracle(&w, &all, &full_tree(&w));
        }
    }

    proptest! {
        #[test]
        fn random_full_trees(w in proptest::collection::vec(0u32..3, 1..48)) {
            let all: Vec<usize> = (0..w.len()).collect();
            check_against_oracle(&w, &all, &full_tree(&w));
        }

        #[test]
        fn random_subsets(
            w in proptest::collection::vec(0u32..3, 1..48),
            picks in proptest::collection::vec(0usize..1 << 16, 1..20),
        ) {
            let subset: BTreeSet<usize> = picks.iter().map(|&x| x % w.len()).collect();
            let subset: Vec<usize> = subset.into_iter().collect();
            check_against_oracle(&w, &subset, &induce(&w, &subset));
        }

        /// Extraction over a ladder must equal inducing each interval from
        /// scratch, and every mapped node must hold the same word.
        #[test]
        fn extraction_matches_direct_induction(
            w in proptest::collection::vec(0u32..2, 6..64),
            m in 1usize..6,
            drop_mask in 0u32..,
        ) {
            let n = w.len();
            let text = Text::new(w.clone()).unwrap();
            let sa = build_suffix_array(&text);
            let lcp = build_lcp_array(&text, &sa);
            let parent = InducedTree::from_suffix_arrays(n, &sa, &lcp);
            let lce = LceIndex::new(&text);
            let lca = LcaIndex::new(parent.parents());
            let ladder = build_staircase(0, n - 1, m).unwrap();
            let kept: Vec<(usize, usize)> = ladder
                .iter()
                .enumerate()
                .filter(|&(k, _)| (drop_mask >> (k % 32)) & 1 == 0)
                .map(|(_, &lam)| lam)
                .collect();
            let mut metrics = Metrics::default();
            let subs = extract_subtrees(
                &parent, &kept, (0, n - 1), m, &lce, &lca, &mut metrics,
            );
            prop_assert_eq!(subs.len(), kept.len());
            for (sub, &(a, b)) in subs.iter().zip(&kept) {
                prop_assert_eq!(sub.interval, (a, b));
                let subset: Vec<usize> = (a..=b).collect();
                prop_assert_eq!(
                    shape_of(&sub.tree),
                    seedex_oracle::induced_shape(&w, &subset)
                );
                check_invariants(&sub.tree);
                // corr targets carry the same word.
                prop_assert_eq!(sub.corr[0], 0);
                for v in 1..sub.tree.node_count() {
                    let c = sub.corr[v] as usize;
                    if let Some(p) = sub.tree.leaf_pos(v) {
                        prop_assert_eq!(parent.leaf_pos(c), Some(p));
                    } else {
                        let wl = sub.tree.word_len(v);
                        prop_assert_eq!(parent.word_len(c), wl);
                        let (ours, theirs) =
                            (sub.tree.occ_first(v), parent.occ_first(c));
                        prop_assert_eq!(&w[ours..ours + wl], &w[theirs..theirs + wl]);
                    }
                }
            }
        }
    }
}
