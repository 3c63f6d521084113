//! Brute-force reference implementations for seed and quasigap computations.
//!
//! Everything in this crate favors obviousness over speed: naive scans,
//! definitional enumeration, quadratic tables. These functions exist so the
//! optimized crate can be checked against an independent route. None of them
//! share code with the fast implementations.

use std::collections::BTreeSet;

/// Hard cap on input length. The oracles are quadratic or worse; refusing
/// long inputs here turns an accidental misuse into a loud failure.
pub const MAX_ORACLE_LEN: usize = 4096;

fn check_len(w: &[u32]) {
    assert!(
        w.len() <= MAX_ORACLE_LEN,
        "oracle input of length {} exceeds MAX_ORACLE_LEN = {}",
        w.len(),
        MAX_ORACLE_LEN
    );
}

/// Widens a byte string into the token alphabet used across the workspace.
pub fn from_bytes(s: &str) -> Vec<u32> {
    s.bytes().map(u32::from).collect()
}

/// All start positions of `v` in `w`, in increasing order. Naive scan.
pub fn occurrences(w: &[u32], v: &[u32]) -> Vec<usize> {
    assert!(!v.is_empty(), "occurrences of the empty word are everywhere");
    if v.len() > w.len() {
        return Vec::new();
    }
    w.windows(v.len())
        .enumerate()
        .filter_map(|(p, win)| (win == v).then_some(p))
        .collect()
}

/// Largest difference between consecutive elements of a strictly increasing
/// sequence; 0 when fewer than two elements.
pub fn maxgap(positions: &[usize]) -> usize {
    debug_assert!(positions.windows(2).all(|p| p[0] < p[1]));
    positions.windows(2).map(|p| p[1] - p[0]).max().unwrap_or(0)
}

/// Does `v` cover `w`, i.e. is every position of `w` inside an occurrence?
pub fn is_cover(v: &[u32], w: &[u32]) -> bool {
    check_len(w);
    let mut covered = vec![false; w.len()];
    for p in occurrences(w, v) {
        covered[p..p + v.len()].iter_mut().for_each(|c| *c = true);
    }
    !w.is_empty() && covered.iter().all(|&c| c)
}

/// Does `v` cover the stretch of `w` spanned by its own occurrences?
pub fn is_quasiseed(v: &[u32], w: &[u32]) -> bool {
    check_len(w);
    let occ = occurrences(w, v);
    !occ.is_empty() && maxgap(&occ) <= v.len()
}

/// Is `v` a seed of `w`: a factor of `w` that covers some superstring of `w`?
///
/// Tests whether placements of `v` that may stick out on either side, each
/// agreeing with `w` wherever they overlap it, can jointly cover `w`. That is
/// equivalent to covering a superstring: among placements sticking out left
/// only the farthest-reaching one is ever needed, and symmetrically on the
/// right, so the overhangs never have to reconcile with each other.
pub fn is_seed(v: &[u32], w: &[u32]) -> bool {
    check_len(w);
    let (l, n) = (v.len() as isize, w.len() as isize);
    if l == 0 || l > n || occurrences(w, v).is_empty() {
        return false;
    }
    let agrees = |p: isize| {
        (0..l).all(|k| {
            let q = p + k;
            q < 0 || q >= n || w[q as usize] == v[k as usize]
        })
    };
    let placements: Vec<isize> = (1 - l..n).filter(|&p| agrees(p)).collect();
    // Farthest-reach greedy over the union of the placements' spans.
    let mut reach = 0isize;
    let mut idx = 0;
    while reach < n {
        let mut best = reach;
        while idx < placements.len() && placements[idx] <= reach {
            best = best.max(placements[idx] + l);
            idx += 1;
        }
        if best == reach {
            return false;
        }
        reach = best;
    }
    true
}

/// [`is_seed`] by its literal definition, for cross-checking: enumerates
/// every proper prefix of `v` as a left pad and proper suffix as a right pad
/// and asks whether `v` covers the padded word. Any covered superstring can
/// be trimmed so it starts and ends with an occurrence of `v`, which forces
/// the pads into exactly those shapes.
pub fn is_seed_by_superstring(v: &[u32], w: &[u32]) -> bool {
    check_len(w);
    if v.is_empty() || v.len() > w.len() || occurrences(w, v).is_empty() {
        return false;
    }
    let l = v.len();
    for a in 0..l {
        for b in 0..l {
            let mut u = Vec::with_capacity(a + w.len() + b);
            u.extend_from_slice(&v[..a]);
            u.extend_from_slice(w);
            u.extend_from_slice(&v[l - b..]);
            if is_cover(v, &u) {
                return true;
            }
        }
    }
    false
}

/// Fewest occurrences of `v` needed to cover `w`, if `v` covers `w` at all.
pub fn minimal_cover_count(v: &[u32], w: &[u32]) -> Option<usize> {
    if !is_cover(v, w) {
        return None;
    }
    let occ = occurrences(w, v);
    let mut count = 0;
    let mut reach = 0;
    while reach < w.len() {
        // Farthest-reaching occurrence that still touches the first
        // uncovered position. is_cover guarantees one exists.
        let next = occ
            .iter()
            .filter(|&&p| p <= reach)
            .map(|&p| p + v.len())
            .max()
            .expect("cover invariant");
        debug_assert!(next > reach);
        reach = next;
        count += 1;
    }
    Some(count)
}

/// Every distinct seed of `w`.
pub fn all_seeds(w: &[u32]) -> BTreeSet<Vec<u32>> {
    check_len(w);
    let mut factors: BTreeSet<&[u32]> = BTreeSet::new();
    for s in 0..w.len() {
        for e in s + 1..=w.len() {
            factors.insert(&w[s..e]);
        }
    }
    factors
        .into_iter()
        .filter(|f| is_seed(f, w))
        .map(<[u32]>::to_vec)
        .collect()
}

/// All shortest seeds of `w`. Nonempty for every nonempty `w` because `w`
/// is always a seed of itself.
pub fn shortest_seeds(w: &[u32]) -> BTreeSet<Vec<u32>> {
    check_len(w);
    for len in 1..=w.len() {
        let mut hits: BTreeSet<Vec<u32>> = BTreeSet::new();
        for s in 0..=w.len() - len {
            let cand = &w[s..s + len];
            if !hits.contains(cand) && is_seed(cand, w) {
                hits.insert(cand.to_vec());
            }
        }
        if !hits.is_empty() {
            return hits;
        }
    }
    BTreeSet::new()
}

/// Suffix array of `w` with a unique smallest sentinel appended, so the
/// result has `w.len() + 1` entries and starts with the sentinel suffix.
/// Slice `Ord` ranks a proper prefix before its extensions, which is exactly
/// the order the sentinel induces.
pub fn suffix_array(w: &[u32]) -> Vec<usize> {
    check_len(w);
    let mut sa: Vec<usize> = (0..w.len()).collect();
    sa.sort_by(|&a, &b| w[a..].cmp(&w[b..]));
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(w.len());
    out.extend(sa);
    out
}

/// LCP array matching [`suffix_array`]: `lcp[k]` is the longest common
/// prefix of the suffixes at ranks `k - 1` and `k`, and `lcp[0] = 0`.
pub fn lcp_array(w: &[u32], sa: &[usize]) -> Vec<usize> {
    let mut lcp = vec![0; sa.len()];
    for k in 1..sa.len() {
        lcp[k] = lce(w, sa[k - 1], sa[k]);
    }
    lcp
}

/// Length of the longest common prefix of the suffixes starting at `p` and `q`.
pub fn lce(w: &[u32], p: usize, q: usize) -> usize {
    w[p..].iter().zip(&w[q..]).take_while(|(a, b)| a == b).count()
}

/// Longest previous non-overlapping factor table: `lpnf[p]` is the longest
/// `len` such that `w[p..p + len]` also occurs at some `q` with
/// `q + len <= p`. Quadratic by definition.
pub fn lpnf(w: &[u32]) -> Vec<usize> {
    check_len(w);
    (0..w.len())
        .map(|p| (0..p).map(|q| lce(w, q, p).min(p - q)).max().unwrap_or(0))
        .collect()
}

/// Non-overlapping LZ-style factorization: each factor is the longest
/// previous non-overlapping factor at its position, or a single fresh
/// letter. Returns `(start, len)` pairs.
pub fn f_factorize(w: &[u32]) -> Vec<(usize, usize)> {
    let table = lpnf(w);
    let mut factors = Vec::new();
    let mut p = 0;
    while p < w.len() {
        let len = table[p].max(1);
        factors.push((p, len));
        p += len;
    }
    factors
}

/// Fewest factors over all valid non-overlapping factorizations of `w`.
/// At position `p` a factor may have any length in `1..=max(1, lpnf[p])`,
/// so a simple DP over positions is exact.
pub fn min_factorization_count(w: &[u32]) -> usize {
    let table = lpnf(w);
    let n = w.len();
    let mut dp = vec![usize::MAX; n + 1];
    dp[0] = 0;
    for p in 0..n {
        if dp[p] == usize::MAX {
            continue;
        }
        for len in 1..=table[p].max(1) {
            dp[p + len] = dp[p + len].min(dp[p] + 1);
        }
    }
    dp[n]
}

/// Quasigap of the equivalence class of `v` restricted to the interval
/// `[i..=j]` of `w`, or `None` when it is infinite.
///
/// Occurrences are starts of `v` in the full text that lie in the interval.
/// The class of `v` consists of its extensions sharing that occurrence set,
/// so the class floor is one more than the longest proper prefix of `v`
/// with strictly more occurrences in the interval.
pub fn quasigap_class(w: &[u32], i: usize, j: usize, v: &[u32]) -> Option<usize> {
    check_len(w);
    assert!(i <= j && j < w.len());
    let in_range = |occ: Vec<usize>| -> Vec<usize> {
        occ.into_iter().filter(|&p| i <= p && p <= j).collect()
    };
    let occ = in_range(occurrences(w, v));
    if occ.is_empty() {
        return None;
    }
    let mut parent_len = 0;
    for t in (1..v.len()).rev() {
        if in_range(occurrences(w, &v[..t])).len() > occ.len() {
            parent_len = t;
            break;
        }
    }
    let first = occ[0];
    let last = occ[occ.len() - 1];
    let m = maxgap(&occ)
        .max(first - i + 1)
        .max((j - last).div_ceil(2) + 1)
        .max(parent_len + 1);
    (m <= v.len()).then_some(m)
}

/// Shape of the subtree of the suffix tree of `w` induced by the given
/// leaves: one `(string_depth, sorted_leaves)` entry per node, sorted.
/// Leaf depths count the terminating sentinel.
///
/// Built by recursive partitioning: a node groups suffixes whose pairwise
/// common prefix exceeds the parent depth, and its own depth is the minimum
/// adjacent extension within the group.
pub fn induced_shape(w: &[u32], leaves: &[usize]) -> Vec<(usize, Vec<usize>)> {
    check_len(w);
    assert!(!leaves.is_empty());
    let mut by_rank: Vec<usize> = leaves.to_vec();
    by_rank.sort_by(|&a, &b| w[a..].cmp(&w[b..]));
    by_rank.dedup();
    let mut nodes = Vec::new();
    partition(w, &by_rank, &mut nodes);
    nodes.sort();
    nodes
}

fn partition(w: &[u32], group: &[usize], out: &mut Vec<(usize, Vec<usize>)>) {
    if group.len() == 1 {
        out.push((w.len() - group[0] + 1, group.to_vec()));
        return;
    }
    let depth = group.windows(2).map(|p| lce(w, p[0], p[1])).min().unwrap();
    let mut sorted: Vec<usize> = group.to_vec();
    sorted.sort_unstable();
    out.push((depth, sorted));
    let mut child_from = 0;
    for k in 1..=group.len() {
        if k == group.len() || lce(w, group[k - 1], group[k]) == depth {
            partition(w, &group[child_from..k], out);
            child_from = k;
        }
    }
}

/// Number of distinct nonempty factors of `w`.
pub fn distinct_factors(w: &[u32]) -> usize {
    check_len(w);
    let mut set: BTreeSet<&[u32]> = BTreeSet::new();
    for s in 0..w.len() {
        for e in s + 1..=w.len() {
            set.insert(&w[s..e]);
        }
    }
    set.len()
}

/// For each node, the maximum weight over all paths covering it, walking
/// each path `(from, to, weight)` from `from` up to the strict ancestor
/// `to`. The root is its own parent in `parent`.
pub fn tree_path_max_naive(
    parent: &[usize],
    paths: &[(usize, usize, u64)],
) -> Vec<Option<u64>> {
    let mut best = vec![None; parent.len()];
    for &(from, to, weight) in paths {
        let mut x = from;
        let mut steps = 0;
        while x != to {
            best[x] = Some(best[x].map_or(weight, |b: u64| b.max(weight)));
            assert!(x != parent[x], "path endpoint is not an ancestor");
            x = parent[x];
            steps += 1;
            assert!(steps <= parent.len(), "cycle in parent array");
        }
    }
    best
}

/// For each node, the total weight of all paths covering it, with the same
/// path convention as [`tree_path_max_naive`].
pub fn tree_path_sum_naive(parent: &[usize], paths: &[(usize, usize, u64)]) -> Vec<u64> {
    let mut sum = vec![0; parent.len()];
    for &(from, to, weight) in paths {
        let mut x = from;
        let mut steps = 0;
        while x != to {
            sum[x] += weight;
            assert!(x != parent[x], "path endpoint is not an ancestor");
            x = parent[x];
            steps += 1;
            assert!(steps <= parent.len(), "cycle in parent array");
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Vec<u32> {
        from_bytes(s)
    }

    #[test]
    fn occurrences_and_maxgap() {
        assert_eq!(occurrences(&b("banana"), &b("ana")), vec![1, 3]);
        assert_eq!(occurrences(&b("banana"), &b("x")), Vec::<usize>::new());
        assert_eq!(maxgap(&[2, 5, 6, 10]), 4);
        assert_eq!(maxgap(&[7]), 0);
    }

    #[test]
    fn covers_and_seeds() {
        assert!(is_cover(&b("aba"), &b("ababa")));
        assert!(!is_cover(&b("ab"), &b("ababa")));
        assert_eq!(minimal_cover_count(&b("aba"), &b("ababa")), Some(2));
        assert!(!is_seed(&b("ab"), &b("aab")));
        assert!(is_seed(&b("ba"), &b("ababa")));
        assert!(is_seed(&b("aab"), &b("aab")));
    }

    #[test]
    fn border_cases_around_a_quasiseed_class() {
        let w = b("aaaaaabaaabaaabaaaa");
        assert_eq!(occurrences(&w, &b("aaabaaa")), vec![3, 7, 11]);
        assert!(!is_seed(&b("aaaba"), &w));
        assert!(!is_seed(&b("aaabaa"), &w));
        assert!(is_seed(&b("aaabaaa"), &w));
        assert!(is_quasiseed(&b("aaaba"), &w));
    }

    #[test]
    fn quasigap_of_the_figure_class() {
        let w = b("aaaaaabaaabaaabaaaa");
        assert_eq!(quasigap_class(&w, 0, w.len() - 1, &b("aaabaaa")), Some(5));
    }

    #[test]
    fn shortest_seed_of_the_figure_word() {
        let w = b("aaabaabaabaaabaaba");
        let expect: BTreeSet<Vec<u32>> = [b("aaba"), b("abaa")].into_iter().collect();
        assert_eq!(shortest_seeds(&w), expect);
    }

    #[test]
    fn suffix_array_of_banana() {
        assert_eq!(suffix_array(&b("banana")), vec![6, 5, 3, 1, 0, 4, 2]);
        let w = b("aaa");
        let sa = suffix_array(&w);
        assert_eq!(sa, vec![3, 2, 1, 0]);
        assert_eq!(lcp_array(&w, &sa), vec![0, 0, 1, 2]);
    }

    #[test]
    fn lpnf_and_factorization() {
        assert_eq!(lpnf(&b("ababa")), vec![0, 0, 2, 2, 1]);
        assert_eq!(lpnf(&b("aaaa")), vec![0, 1, 2, 1]);
        assert_eq!(lpnf(&b("abc")), vec![0, 0, 0]);
        assert_eq!(f_factorize(&b("abaabab")), vec![(0, 1), (1, 1), (2, 1), (3, 3), (6, 1)]);
        assert_eq!(f_factorize(&b("aaaa")), vec![(0, 1), (1, 1), (2, 2)]);
        assert_eq!(min_factorization_count(&b("aaaa")), 3);
    }

    #[test]
    fn lce_naive() {
        assert_eq!(lce(&b("ababa"), 0, 2), 3);
        assert_eq!(lce(&b("ababa"), 0, 1), 0);
    }

    #[test]
    fn induced_shape_groups_by_common_prefix() {
        // Suffixes 1 ("baab") and 4 ("b") share "b"; suffix 2 ("aab") is
        // alone under the root at depth 0.
        let w = b("abaab");
        let shape = induced_shape(&w, &[1, 2, 4]);
        assert!(shape.contains(&(0, vec![1, 2, 4])));
        assert!(shape.contains(&(1, vec![1, 4])));
        assert!(shape.contains(&(5, vec![1]))); // |baab| + sentinel
        assert!(shape.contains(&(2, vec![4])));
        assert!(shape.contains(&(4, vec![2])));
        assert_eq!(shape.len(), 5);
    }

    #[test]
    fn tree_path_problems() {
        // r(0) - a(1) - b(2), plus c(3) under a.
        let parent = vec![0, 0, 1, 1];
        let paths = vec![(2, 0, 5), (3, 1, 3)];
        assert_eq!(
            tree_path_max_naive(&parent, &paths),
            vec![None, Some(5), Some(5), Some(3)]
        );
        assert_eq!(tree_path_sum_naive(&parent, &paths), vec![0, 5, 5, 3]);
    }

    #[test]
    fn every_word_seeds_itself() {
        for w in [b("a"), b("ab"), b("abcabc"), b("aaabaabaabaaabaaba")] {
            assert!(is_seed(&w, &w));
            assert!(all_seeds(&w).contains(&w));
        }
    }

    /// The placement-union route and the padded-superstring route must agree
    /// on every factor of every small word.
    #[test]
    fn seed_routes_agree_exhaustively() {
        let mut words: Vec<Vec<u32>> = Vec::new();
        for n in 1..=8usize {
            for mask in 0..(1u32 << n) {
                words.push((0..n).map(|i| (mask >> i) & 1).collect());
            }
        }
        for n in 1..=6usize {
            for code in 0..3u32.pow(n as u32) {
                let mut c = code;
                words.push(
                    (0..n)
                        .map(|_| {
                            let s = c % 3;
                            c /= 3;
                            s
                        })
                        .collect(),
                );
            }
        }
        for w in &words {
            for s in 0..w.len() {
                for e in s + 1..=w.len() {
                    let v = &w[s..e];
                    assert_eq!(
                        is_seed(v, w),
                        is_seed_by_superstring(v, w),
                        "divergence for factor {v:?} of {w:?}"
                    );
                }
            }
        }
    }
}
