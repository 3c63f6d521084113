//! Longest previous non-overlapping factors and the greedy factorization
//! built from them.

use crate::text_index::{lcp_of_slice, suffix_array_of_slice};

/// Greedy left-to-right factorization of a slice: each factor is a single
/// new symbol or the longest prefix of the remainder that occurs earlier
/// without overlapping itself.
///
/// Positions are relative to the factorized slice, which inside the solver
/// is a subword of the analyzed text.
pub struct Factorization {
    factors: Vec<(u32, u32)>,
    fidx: Vec<u32>,
}

impl Factorization {
    pub fn new(w: &[u32]) -> Factorization {
        let table = lpnf(w);
        let mut factors = Vec::new();
        let mut fidx = vec![0u32; w.len()];
        let mut p = 0usize;
        while p < w.len() {
            let len = (table[p] as usize).max(1);
            for f in fidx.iter_mut().skip(p).take(len) {
                *f = factors.len() as u32;
            }
            factors.push((p as u32, len as u32));
            p += len;
        }
        Factorization { factors, fidx }
    }

    pub fn count(&self) -> usize {
        self.factors.len()
    }

    /// `(start, length)` pairs, in order, concatenating to the whole slice.
    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    /// Index of the factor containing position `p`.
    pub fn factor_index(&self, p: usize) -> usize {
        self.fidx[p] as usize
    }

    /// Factors starting and ending inside `[lo, hi]`, inclusive.
    pub fn count_within(&self, lo: usize, hi: usize) -> usize {
        self.factors
            .iter()
            .filter(|&&(s, l)| {
                let s = s as usize;
                s >= lo && s + l as usize <= hi + 1
            })
            .count()
    }

    /// Middle factor count: factors contained in the window that keeps
    /// `2 * delta` positions off the left end and `delta` off the right.
    pub fn middle_count(&self, delta: usize) -> usize {
        let n = self.fidx.len();
        if 2 * delta >= n || n < delta + 1 {
            return 0;
        }
        self.count_within(2 * delta, n - delta - 1)
    }
}

/// `lpnf[p]`: length of the longest prefix of `w[p..]` occurring at some
/// `q` with `q + length <= p`. Entry 0 is always 0.
///
/// Two suffix-order sweeps (ascending and descending rank) maintain a stack
/// of (match length, earliest start) pairs kept as a Pareto front, so both
/// components increase strictly and the best non-overlapping cut for a
/// position falls out of one binary search.
pub fn lpnf(w: &[u32]) -> Vec<u32> {
    let n = w.len();
    let sa = suffix_array_of_slice(w);
    let lcp = lcp_of_slice(w, &sa);
    let mut out = vec![0u32; n];
    sweep(&sa, &lcp, n, false, &mut out);
    sweep(&sa, &lcp, n, true, &mut out);
    out
}

fn sweep(sa: &[u32], lcp: &[u32], n: usize, reverse: bool, out: &mut [u32]) {
    let mut stack: Vec<(u32, u32)> = Vec::new();
    let total = sa.len();
    for step in 0..total {
        let r = if reverse { total - 1 - step } else { step };
        if step > 0 {
            // Crossing a rank boundary caps every standing match by the
            // neighboring LCP value.
            let h = if reverse { lcp[r + 1] } else { lcp[r] };
            fold(&mut stack, h);
        }
        let p = sa[r] as usize;
        if p == n {
            continue;
        }
        if !stack.is_empty() {
            // An entry (d, mp) yields min(d, p - mp); d rises along the
            // stack while p - mp falls, and the strictly increasing key
            // d + mp locates the crossover.
            let k = stack.partition_point(|&(d, mp)| (d + mp) as usize <= p);
            let mut best = 0u32;
            if k > 0 {
                best = stack[k - 1].0;
            }
            if k < stack.len() {
                best = best.max((p as u32).saturating_sub(stack[k].1));
            }
            if best > out[p] {
                out[p] = best;
            }
        }
        push(&mut stack, (n - p) as u32, p as u32);
    }
}

fn fold(stack: &mut Vec<(u32, u32)>, h: u32) {
    let mut pend: Option<u32> = None;
    while let Some(&(d, mp)) = stack.last() {
        if d <= h {
            break;
        }
        stack.pop();
        pend = Some(pend.map_or(mp, |x| x.min(mp)));
    }
    if let Some(pm) = pend {
        push(stack, h, pm);
    }
}

/// Push keeping the Pareto front: drop entries the newcomer dominates, and
/// drop the newcomer if an equal-length entry with an earlier start exists.
fn push(stack: &mut Vec<(u32, u32)>, d: u32, mp: u32) {
    while let Some(&(td, tmp)) = stack.last() {
        debug_assert!(td <= d);
        if tmp >= mp {
            stack.pop();
        } else {
            break;
        }
    }
    if let Some(&(td, _)) = stack.last() {
        if td == d {
            return;
        }
    }
    stack.push((d, mp));
}
