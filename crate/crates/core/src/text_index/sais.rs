//! Suffix array construction by induced sorting.

const EMPTY: u32 = u32::MAX;

/// Suffix array of `w#` where the sentinel `#` is smaller than every symbol:
/// `w.len() + 1` entries, starting with the bare sentinel suffix.
///
/// Symbols are shifted up by one so the sentinel can be 0. A sparse alphabet
/// (max symbol not below the length) is rank-compacted first; that path pays
/// an extra `O(n log n)` but keeps bucket arrays linear in `n`.
pub(crate) fn suffix_array_with_sentinel(w: &[u32]) -> Vec<u32> {
    let n = w.len();
    let max = w.iter().copied().max().unwrap_or(0);
    let mut s: Vec<u32> = Vec::with_capacity(n + 1);
    let sigma;
    if (max as usize) < n.max(256) {
        s.extend(w.iter().map(|&c| c + 1));
        sigma = max as usize + 2;
    } else {
        let mut sorted = w.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        s.extend(
            w.iter()
                .map(|&c| sorted.partition_point(|&x| x < c) as u32 + 1),
        );
        sigma = sorted.len() + 2;
    }
    s.push(0);
    let mut sa = vec![EMPTY; n + 1];
    sais(&s, sigma, &mut sa);
    sa
}

/// Induced sorting over `s`, which must end with a unique smallest symbol 0.
/// All symbols must be below `sigma`.
fn sais(s: &[u32], sigma: usize, sa: &mut [u32]) {
    let n = s.len();
    sa.fill(EMPTY);
    if n == 1 {
        sa[0] = 0;
        return;
    }
    if n == 2 {
        sa[0] = 1;
        sa[1] = 0;
        return;
    }

    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut count = vec![0u32; sigma];
    for &c in s {
        count[c as usize] += 1;
    }

    let lms: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();

    // First induction, with LMS suffixes in arbitrary order within their
    // buckets: sorts the LMS substrings.
    let mut tails = bucket_tails(&count);
    for &p in &lms {
        let c = s[p as usize] as usize;
        sa[tails[c] as usize] = p;
        tails[c] = tails[c].wrapping_sub(1);
    }
    induce(s, &is_s, &count, sa);

    let mut sorted_lms: Vec<u32> = Vec::with_capacity(lms.len());
    for &p in sa.iter() {
        if p != EMPTY && is_lms(p as usize) {
            sorted_lms.push(p);
        }
    }
    debug_assert_eq!(sorted_lms.len(), lms.len());

    // Name the LMS substrings in their sorted order.
    let mut name_at = vec![EMPTY; n];
    let mut last_name = 0u32;
    name_at[sorted_lms[0] as usize] = 0;
    for k in 1..sorted_lms.len() {
        let (a, b) = (sorted_lms[k - 1] as usize, sorted_lms[k] as usize);
        if !lms_substring_eq(s, &is_s, a, b) {
            last_name += 1;
        }
        name_at[b] = last_name;
    }

    if (last_name as usize + 1) < lms.len() {
        // Duplicate names: recurse on the reduced word to rank LMS suffixes.
        let reduced: Vec<u32> = lms.iter().map(|&p| name_at[p as usize]).collect();
        let mut sub_sa = vec![EMPTY; reduced.len()];
        sais(&reduced, last_name as usize + 1, &mut sub_sa);
        for (i, &r) in sub_sa.iter().enumerate() {
            sorted_lms[i] = lms[r as usize];
        }
    }

    // Final induction from the fully sorted LMS suffixes. Placing from the
    // back preserves their relative order inside each bucket.
    sa.fill(EMPTY);
    let mut tails = bucket_tails(&count);
    for &p in sorted_lms.iter().rev() {
        let c = s[p as usize] as usize;
        sa[tails[c] as usize] = p;
        tails[c] = tails[c].wrapping_sub(1);
    }
    induce(s, &is_s, &count, sa);
}

/// One L-pass and one S-pass. Stale tail entries read before being
/// overwritten are harmless: they are LMS positions, whose predecessor is
/// L-type, so the S-pass ignores them.
fn induce(s: &[u32], is_s: &[bool], count: &[u32], sa: &mut [u32]) {
    let n = s.len();
    let mut heads = bucket_heads(count);
    for i in 0..n {
        let p = sa[i];
        if p != EMPTY && p > 0 {
            let j = (p - 1) as usize;
            if !is_s[j] {
                let c = s[j] as usize;
                sa[heads[c] as usize] = j as u32;
                heads[c] += 1;
            }
        }
    }
    let mut tails = bucket_tails(count);
    for i in (0..n).rev() {
        let p = sa[i];
        if p != EMPTY && p > 0 {
            let j = (p - 1) as usize;
            if is_s[j] {
                let c = s[j] as usize;
                sa[tails[c] as usize] = j as u32;
                tails[c] = tails[c].wrapping_sub(1);
            }
        }
    }
}

/// Are the LMS substrings starting at `a` and `b` equal, comparing symbols
/// and types until both hit their terminating LMS position?
fn lms_substring_eq(s: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let mut i = 0;
    loop {
        let (pa, pb) = (a + i, b + i);
        let a_end = i > 0 && (is_s[pa] && !is_s[pa - 1]);
        let b_end = i > 0 && (is_s[pb] && !is_s[pb - 1]);
        if a_end && b_end {
            return true;
        }
        if a_end != b_end || s[pa] != s[pb] || is_s[pa] != is_s[pb] {
            return false;
        }
        i += 1;
    }
}

fn bucket_heads(count: &[u32]) -> Vec<u32> {
    let mut heads = Vec::with_capacity(count.len());
    let mut acc = 0u32;
    for &c in count {
        heads.push(acc);
        acc += c;
    }
    heads
}

fn bucket_tails(count: &[u32]) -> Vec<u32> {
    let mut tails = Vec::with_capacity(count.len());
    let mut acc = 0u32;
    for &c in count {
        acc += c;
        tails.push(acc.wrapping_sub(1));
    }
    tails
}
