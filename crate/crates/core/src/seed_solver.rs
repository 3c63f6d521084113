//! Whole-text analysis: quasigaps for every equivalence class via the
//! recursive solver, then seeds as per-edge length ranges.

use crate::factorization::Factorization;
use crate::induced_tree::{extract_subtrees, InducedTree, Subtree};
use crate::merge_engine::merge;
use crate::metrics::Metrics;
use crate::quasigap_core::{brute_quasigaps, QuasigapValue};
use crate::range_engine::{compute_in_range, CornerPolicy, RestrictedValue};
use crate::staircase::{build_staircase, reduce_staircase, SolverConfig};
use crate::text_index::{build_lcp_array, build_suffix_array, LcaIndex, LceIndex, Text};

/// Quasiseed lengths carried by one suffix-tree edge: every length in
/// `[lo, hi]` cut from the edge into `edge_node` is a quasiseed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateSet {
    pub edge_node: usize,
    pub lo: usize,
    pub hi: usize,
}

/// Seed lengths on one edge; `pos` is the first occurrence, so the words
/// are `text[pos..pos + len]` for `len` in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedRange {
    pub edge_node: usize,
    pub pos: usize,
    pub lo: usize,
    pub hi: usize,
}

/// All seeds of a text, grouped into per-edge length ranges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedSet {
    pub ranges: Vec<SeedRange>,
}

impl SeedSet {
    /// Number of distinct seed words.
    pub fn word_count(&self) -> usize {
        self.ranges.iter().map(|r| r.hi - r.lo + 1).sum()
    }
}

/// Suffix structures and quasigaps of one text, built once up front.
pub struct Analysis {
    text: Text,
    config: SolverConfig,
    tree: InducedTree,
    rank: Vec<u32>,
    quasigaps: Vec<QuasigapValue>,
    metrics: Metrics,
}

impl Analysis {
    pub fn new(text: Text) -> Analysis {
        Analysis::with_config(text, SolverConfig::default())
    }

    pub fn with_config(text: Text, config: SolverConfig) -> Analysis {
        let n = text.len();
        let sa = build_suffix_array(&text);
        let lcp = build_lcp_array(&text, &sa);
        let tree = InducedTree::from_suffix_arrays(n, &sa, &lcp);
        let mut rank = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate().skip(1) {
            rank[p as usize] = r as u32;
        }
        let lce = LceIndex::from_parts(n, &sa, lcp);
        let mut solver = Solver {
            w: text.symbols(),
            config,
            lce,
            metrics: Metrics::default(),
        };
        let quasigaps = solver.solve(&tree, (0, n - 1));
        let metrics = solver.metrics;
        Analysis {
            text,
            config,
            tree,
            rank,
            quasigaps,
            metrics,
        }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    /// The suffix structure the quasigaps are indexed by.
    pub fn tree(&self) -> &InducedTree {
        &self.tree
    }

    /// Quasigap of every tree node; the root is always infinite.
    pub fn quasigaps(&self) -> &[QuasigapValue] {
        &self.quasigaps
    }

    /// Work counters accumulated while solving.
    pub fn metrics(&self) -> &Metrics {
        &self.metrics
    }

    /// Quasiseed length ranges, one per edge with a finite quasigap.
    pub fn candidate_sets(&self) -> Vec<CandidateSet> {
        (1..self.tree.node_count())
            .filter_map(|v| {
                let QuasigapValue::Finite(q) = self.quasigaps[v] else {
                    return None;
                };
                let lo = q.max(self.tree.word_len(self.tree.parent(v)) + 1);
                let hi = self.tree.word_len(v);
                (lo <= hi).then_some(CandidateSet {
                    edge_node: v,
                    lo,
                    hi,
                })
            })
            .collect()
    }

    /// Every seed of the text, as per-edge length ranges.
    ///
    /// Filters the quasiseed candidates by the two border conditions. The
    /// right border reduces to a single length threshold per class; the
    /// left border is answered range-wise from a prefix-maximum profile of
    /// the self-match table, so the cost is near-linear plus output size.
    pub fn all_seeds(&self) -> SeedSet {
        let w = self.text.symbols();
        let n = w.len();
        let z = z_array(w);
        let rev: Vec<u32> = w.iter().rev().copied().collect();
        let zr = z_array(&rev);

        // phi(len) = max over p <= len of (Z[p] + p) minus len. A class
        // with first occurrence f passes the left border at `len` exactly
        // when phi(len) >= f: a match placed before f good enough to pass
        // would embed an earlier occurrence of the word.
        let mut phi = vec![i64::MIN; n + 1];
        let mut gl = 0usize;
        for len in 1..n {
            gl = gl.max(z[len] + len);
            phi[len] = gl as i64 - len as i64;
        }
        let phi_tree = MinMaxTree::new(&phi);

        // e[r] = B[r] - r, with B[r] the longest common suffix of the text
        // and its length-r prefix. A right-border witness for a class is
        // some r > f with e[r] >= -f; it certifies lengths down to
        // max(c, n - g - c) where c = r - f.
        let mut e = vec![i64::MIN; n + 1];
        for r in 1..=n {
            let b = if r == n { n } else { zr[n - r].min(r) };
            e[r] = b as i64 - r as i64;
        }
        let e_tree = MinMaxTree::new(&e);

        let mut ranges = Vec::new();
        for cs in self.candidate_sets() {
            let v = cs.edge_node;
            let f = self.tree.occ_first(v);
            let g = self.tree.occ_last(v);
            let k = n - g;

            // Right border: overhang matchable from some witness, or the
            // last occurrence already reaches the end.
            let mut t_star = k;
            let c_mid = k.div_ceil(2).max(1);
            if let Some(r) = e_tree.first_at_least(f + c_mid, n, -(f as i64)) {
                let c = r - f;
                t_star = t_star.min(c.max(k.saturating_sub(c)));
            }
            if c_mid > 1 {
                if let Some(r) = e_tree.last_at_least(f + 1, f + c_mid - 1, -(f as i64)) {
                    let c = r - f;
                    t_star = t_star.min(c.max(k - c));
                }
            }

            let lo = cs.lo.max(t_star);
            if lo > cs.hi {
                continue;
            }
            // Left border: report the maximal runs with phi >= f.
            let b = cs.hi.min(n - 1);
            let mut cur = lo;
            while cur <= b {
                let Some(s) = phi_tree.first_at_least(cur, b, f as i64) else {
                    break;
                };
                let end = match phi_tree.first_below(s, b, f as i64) {
                    Some(x) => x - 1,
                    None => b,
                };
                ranges.push(SeedRange {
                    edge_node: v,
                    pos: f,
                    lo: s,
                    hi: end,
                });
                cur = end + 1;
            }
            if cs.hi == n {
                // The whole text, always a seed of itself.
                debug_assert_eq!(f, 0);
                match ranges.last_mut() {
                    Some(r) if r.edge_node == v && r.hi == n - 1 => r.hi = n,
                    _ => ranges.push(SeedRange {
                        edge_node: v,
                        pos: f,
                        lo: n,
                        hi: n,
                    }),
                }
            }
        }
        ranges.sort_unstable_by_key(|r| (r.edge_node, r.lo));
        SeedSet { ranges }
    }

    /// A shortest seed as `(position, length)`; among equals, the
    /// lexicographically largest word.
    pub fn shortest_seed(&self) -> (usize, usize) {
        let seeds = self.all_seeds();
        let mut best: Option<(usize, usize)> = None;
        for r in &seeds.ranges {
            let better = match best {
                None => true,
                Some((bp, bl)) => {
                    r.lo < bl || (r.lo == bl && self.rank[r.pos] > self.rank[bp])
                }
            };
            if better {
                best = Some((r.pos, r.lo));
            }
        }
        best.expect("a text is a seed of itself")
    }

    pub fn seed_word(&self, pos: usize, len: usize) -> &[u32] {
        &self.text.symbols()[pos..pos + len]
    }
}

struct Solver<'a> {
    w: &'a [u32],
    config: SolverConfig,
    lce: LceIndex,
    metrics: Metrics,
}

impl Solver<'_> {
    /// Quasigap of every node of the tree induced by `gamma`, exact up to
    /// the interval length. Words run past the interval, so a quasigap can
    /// exceed `|gamma|`; those report as `Infinite`, which is fine because
    /// a caller merging intervals only tells values apart up to its step,
    /// and at the top level nothing exceeds the text length.
    ///
    /// Small intervals are settled brute-force. Large ones recurse on the
    /// reduced staircase to merge all values up to the step `m`, and pick
    /// up the remaining finite values from two restricted-range passes;
    /// values between the two bands cannot occur.
    fn solve(&mut self, tree: &InducedTree, gamma: (usize, usize)) -> Vec<QuasigapValue> {
        let (i, j) = gamma;
        let n = j - i + 1;
        if n <= self.config.base_cutoff {
            return brute_quasigaps(tree, gamma, &mut self.metrics);
        }
        let fact = Factorization::new(&self.w[i..=j]);
        let delta = self.config.delta(n);
        let g = fact.middle_count(delta);
        let m = self.config.step(n, g);
        let small_hi = if g == 0 { n } else { (2 * n).div_ceil(g) };
        if self.config.is_release() {
            debug_assert!(g >= 3, "middle factor count {g} on length {n}");
        }

        let merged: Vec<Option<usize>> = if m > 0 {
            let ladder = build_staircase(i, j, m).expect("nonzero step");
            let kept = reduce_staircase(&ladder, &fact, m, gamma, true);
            if self.config.is_release() {
                let total: usize = kept.iter().map(|&(a, b)| b - a + 1).sum();
                debug_assert!(total < n / 2, "kept length {total} of {n}");
            }
            let lca = LcaIndex::new(tree.parents());
            let subs: Vec<Subtree> =
                extract_subtrees(tree, &kept, gamma, m, &self.lce, &lca, &mut self.metrics);
            let values: Vec<Vec<QuasigapValue>> = subs
                .iter()
                .map(|s| self.solve(&s.tree, s.interval))
                .collect();
            let parts: Vec<(&Subtree, &[QuasigapValue])> = subs
                .iter()
                .zip(values.iter().map(Vec::as_slice))
                .collect();
            merge(tree, &parts, m, &mut self.metrics)
        } else {
            vec![None; tree.node_count()]
        };

        let win_a = compute_in_range(
            tree,
            gamma,
            m.max(1),
            small_hi.max(1),
            CornerPolicy::AboveBias,
            &mut self.metrics,
        )
        .expect("valid small band");
        let win_b = compute_in_range(
            tree,
            gamma,
            delta.max(1),
            n,
            CornerPolicy::AboveBias,
            &mut self.metrics,
        )
        .expect("valid large band");

        let mut out = vec![QuasigapValue::Infinite; tree.node_count()];
        for v in 1..tree.node_count() {
            let mut val = merged[v];
            for rv in [win_a[v], win_b[v]] {
                if let RestrictedValue::Exact(q) = rv {
                    debug_assert!(val.is_none_or(|x| x == q), "conflicting values at {v}");
                    val = val.or(Some(q));
                }
            }
            if let Some(q) = val {
                out[v] = QuasigapValue::Finite(q);
            }
        }

        #[cfg(debug_assertions)]
        if self.config.is_release() && n <= 512 {
            // The band between the two range passes must be empty.
            let mut scratch = Metrics::default();
            let brute = brute_quasigaps(tree, gamma, &mut scratch);
            for (v, &qg) in brute.iter().enumerate() {
                let want = match qg {
                    QuasigapValue::Finite(q) if q <= n => {
                        debug_assert!(
                            !(q > small_hi && q <= delta),
                            "value {q} at node {v} inside the skipped band"
                        );
                        qg
                    }
                    _ => QuasigapValue::Infinite,
                };
                debug_assert_eq!(out[v], want, "node {v} of [{i}, {j}]");
            }
        }
        out
    }
}

/// Is `u` a cover of `w`: occurrences reach both ends with no gap over
/// `|u|`. Quadratic scan, meant for verification.
pub fn is_cover(w: &[u32], u: &[u32]) -> bool {
    if u.is_empty() || u.len() > w.len() {
        return false;
    }
    let mut prev_end = 0usize;
    let mut seen = false;
    for (p, win) in w.windows(u.len()).enumerate() {
        if win != u {
            continue;
        }
        if !seen && p != 0 {
            return false;
        }
        if seen && p > prev_end {
            return false;
        }
        seen = true;
        prev_end = p + u.len();
    }
    seen && prev_end == w.len()
}

/// Is `u` a quasiseed of `w`: does it cover the stretch of `w` spanned by
/// its own occurrences? Quadratic scan, meant for verification.
pub fn is_quasiseed(w: &[u32], u: &[u32]) -> bool {
    if u.is_empty() || u.len() > w.len() {
        return false;
    }
    let l = u.len();
    let mut any = false;
    let mut prev = 0usize;
    for (p, win) in w.windows(l).enumerate() {
        if win != u {
            continue;
        }
        if any && p - prev > l {
            return false;
        }
        any = true;
        prev = p;
    }
    any
}

/// Is `u` a seed of `w`: a quasiseed whose end fragments are covered by
/// overhanging matches. Quadratic scan, meant for verification.
pub fn is_seed(w: &[u32], u: &[u32]) -> bool {
    if !is_quasiseed(w, u) {
        return false;
    }
    let (n, l) = (w.len(), u.len());
    let first = w.windows(l).position(|win| win == u).unwrap();
    let last = n - l - w.windows(l).rev().position(|win| win == u).unwrap();
    let left = first == 0 || (first..l).any(|s| w[..s] == u[l - s..]);
    let right = last + l >= n
        || (1..=l).any(|c| c + last + l >= n && w[n - c..] == u[..c]);
    left && right
}

/// Self-match table: `z[p]` is the longest common prefix of `w` and
/// `w[p..]`, with `z[0] = |w|`.
fn z_array(w: &[u32]) -> Vec<usize> {
    let n = w.len();
    let mut z = vec![0usize; n];
    z[0] = n;
    let (mut l, mut r) = (0usize, 0usize);
    for p in 1..n {
        let mut k = if p < r { z[p - l].min(r - p) } else { 0 };
        while p + k < n && w[k] == w[p + k] {
            k += 1;
        }
        z[p] = k;
        if p + k > r {
            (l, r) = (p, p + k);
        }
    }
    z
}

/// Static segment tree answering first/last-position-over-threshold
/// queries in logarithmic time.
struct MinMaxTree {
    size: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl MinMaxTree {
    fn new(vals: &[i64]) -> MinMaxTree {
        let size = vals.len().next_power_of_two().max(1);
        let mut lo = vec![i64::MAX; 2 * size];
        let mut hi = vec![i64::MIN; 2 * size];
        for (t, &x) in vals.iter().enumerate() {
            lo[size + t] = x;
            hi[size + t] = x;
        }
        for t in (1..size).rev() {
            lo[t] = lo[2 * t].min(lo[2 * t + 1]);
            hi[t] = hi[2 * t].max(hi[2 * t + 1]);
        }
        MinMaxTree { size, lo, hi }
    }

    fn descend(
        &self,
        node: usize,
        nl: usize,
        nr: usize,
        a: usize,
        b: usize,
        prune: &impl Fn(&MinMaxTree, usize) -> bool,
        right_first: bool,
    ) -> Option<usize> {
        if nr < a || nl > b || prune(self, node) {
            return None;
        }
        if nl == nr {
            return Some(nl);
        }
        let mid = (nl + nr) / 2;
        let go_left = |s: &Self| s.descend(2 * node, nl, mid, a, b, prune, right_first);
        let go_right = |s: &Self| s.descend(2 * node + 1, mid + 1, nr, a, b, prune, right_first);
        if right_first {
            go_right(self).or_else(|| go_left(self))
        } else {
            go_left(self).or_else(|| go_right(self))
        }
    }

    /// First index in `[a, b]` with value at least `t`.
    fn first_at_least(&self, a: usize, b: usize, t: i64) -> Option<usize> {
        if a > b {
            return None;
        }
        self.descend(1, 0, self.size - 1, a, b, &|s, u| s.hi[u] < t, false)
    }

    /// First index in `[a, b]` with value below `t`.
    fn first_below(&self, a: usize, b: usize, t: i64) -> Option<usize> {
        if a > b {
            return None;
        }
        self.descend(1, 0, self.size - 1, a, b, &|s, u| s.lo[u] >= t, false)
    }

    /// Last index in `[a, b]` with value at least `t`.
    fn last_at_least(&self, a: usize, b: usize, t: i64) -> Option<usize> {
        if a > b {
            return None;
        }
        self.descend(1, 0, self.size - 1, a, b, &|s, u| s.hi[u] < t, true)
    }
}
