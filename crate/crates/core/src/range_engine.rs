//! Restricted quasigap evaluation: exact values inside a target range,
//! certified bounds outside it, in near-linear time per doubling window.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::induced_tree::InducedTree;
use crate::metrics::Metrics;
use crate::quasigap_core;

/// Outcome of a range-restricted quasigap query for one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictedValue {
    /// The quasigap is finite and smaller than the range.
    BelowRange,
    /// The quasigap is exactly this value, inside the range.
    Exact(usize),
    /// The quasigap exceeds the range or is infinite.
    AboveRange,
}

/// How to settle nodes whose word and occurrence gaps are both shorter than
/// the window, where telling a small finite quasigap from an infinite one
/// needs the exact maxgap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerPolicy {
    /// Sort the occurrence list and decide exactly.
    Resolve,
    /// Report such nodes as above-range. Exact values inside the range are
    /// unaffected; below-range answers may be lost. Meant for callers that
    /// only consume exact values.
    AboveBias,
}

/// Saturated maxgap standing for "larger than the window".
const GAP_HUGE: usize = usize::MAX;

/// Maxgap classes, packed: quasigaps fit in u32 so the extremes are free.
const MG_BELOW: u32 = 0;
const MG_ABOVE: u32 = u32::MAX;

fn classify(x: usize, d: usize) -> u32 {
    if x < d {
        MG_BELOW
    } else if x <= 2 * d {
        x as u32
    } else {
        MG_ABOVE
    }
}

/// Empty bucket of a packed pane; occupied buckets hold `min << 32 | max`.
const NONE64: u64 = u64::MAX;
const NO_SLOT: u32 = u32::MAX;

/// Per-bucket minima and maxima of an occurrence set over width-`d`
/// buckets, packed one word per bucket. Buffers are pooled: `data` keeps
/// the largest bucket count ever needed and stays all-empty between uses,
/// with `touched` remembering which buckets to wipe on release.
struct Pane {
    data: Vec<u64>,
    touched: Vec<u32>,
}

impl Pane {
    fn insert(&mut self, q: usize, p: u32) {
        let cur = self.data[q];
        if cur == NONE64 {
            self.data[q] = (u64::from(p) << 32) | u64::from(p);
            self.touched.push(q as u32);
        } else {
            let (mn, mx) = ((cur >> 32) as u32, cur as u32);
            self.data[q] = (u64::from(mn.min(p)) << 32) | u64::from(mx.max(p));
        }
    }

    fn release(&mut self) {
        for &q in &self.touched {
            self.data[q as usize] = NONE64;
        }
        self.touched.clear();
    }

    /// Exact maxgap as long as it is at least the bucket width: gaps inside
    /// one bucket are shorter than `d` and never surface.
    fn scan(&self, nb: usize, metrics: &mut Metrics) -> usize {
        metrics.update_bucket_ops += nb as u64;
        let mut x = 0usize;
        let mut tail: Option<u32> = None;
        for &w in &self.data[..nb] {
            if w == NONE64 {
                continue;
            }
            if let Some(t) = tail {
                x = x.max(((w >> 32) as u32 - t) as usize);
            }
            tail = Some(w as u32);
        }
        x
    }
}

/// Pooled pane buffers addressed by slot id, so per-node bookkeeping is a
/// plain u32 instead of an owning pointer.
struct PanePool {
    slots: Vec<Pane>,
    free: Vec<u32>,
    cap: usize,
}

impl PanePool {
    fn new(cap: usize) -> PanePool {
        PanePool {
            slots: Vec::new(),
            free: Vec::new(),
            cap,
        }
    }

    fn acquire(&mut self) -> u32 {
        if let Some(s) = self.free.pop() {
            return s;
        }
        self.slots.push(Pane {
            data: vec![NONE64; self.cap],
            touched: Vec::new(),
        });
        (self.slots.len() - 1) as u32
    }

    fn release(&mut self, s: u32) {
        self.slots[s as usize].release();
        self.free.push(s);
    }

    /// Folds `src` into `dst` and frees `src`.
    fn absorb(&mut self, dst: u32, src: u32, metrics: &mut Metrics) {
        let (d, s) = (dst as usize, src as usize);
        metrics.update_bucket_ops += self.slots[s].touched.len() as u64;
        let (a, b) = if d < s {
            let (lo, hi) = self.slots.split_at_mut(s);
            (&mut lo[d], &mut hi[0])
        } else {
            let (lo, hi) = self.slots.split_at_mut(d);
            (&mut hi[0], &mut lo[s])
        };
        for &q in &b.touched {
            let w = b.data[q as usize];
            a.insert(q as usize, (w >> 32) as u32);
            a.insert(q as usize, w as u32);
        }
        self.release(src);
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Front,
    Back,
    Ignored,
}

/// Bucket state of one chain of single-plausible-child nodes, replayed from
/// the active node below it. Inserts are logged so the chain can be peeled
/// top-down, restoring each intermediate occurrence set exactly. The deque
/// buffer is pooled across chains; only one chain is ever open.
struct Replay {
    deq: Vec<VecDeque<u32>>,
    dq_touched: Vec<u32>,
    log: Vec<(u32, Kind)>,
    marks: Vec<(u32, u32)>,
}

impl Replay {
    fn new(cap: usize) -> Replay {
        Replay {
            deq: vec![VecDeque::new(); cap],
            dq_touched: Vec::new(),
            log: Vec::new(),
            marks: Vec::new(),
        }
    }

    /// Seeds the deques from an active node's pane state.
    fn open(&mut self, base: &Pane) {
        debug_assert!(self.dq_touched.is_empty() && self.log.is_empty());
        for &q in &base.touched {
            let w = base.data[q as usize];
            let (mn, mx) = ((w >> 32) as u32, w as u32);
            let dq = &mut self.deq[q as usize];
            dq.push_back(mn);
            if mx != mn {
                dq.push_back(mx);
            }
            self.dq_touched.push(q);
        }
    }

    fn begin_node(&mut self, v: usize) {
        self.marks.push((v as u32, self.log.len() as u32));
    }

    fn insert(&mut self, q: usize, p: u32, metrics: &mut Metrics) {
        metrics.update_bucket_ops += 1;
        let dq = &mut self.deq[q];
        let kind = match (dq.front(), dq.back()) {
            (None, _) => {
                dq.push_back(p);
                self.dq_touched.push(q as u32);
                Kind::Back
            }
            (Some(&f), _) if p < f => {
                dq.push_front(p);
                Kind::Front
            }
            (_, Some(&b)) if p > b => {
                dq.push_back(p);
                Kind::Back
            }
            _ => Kind::Ignored,
        };
        self.log.push((p, kind));
    }

    fn rescan(&self, nb: usize, metrics: &mut Metrics) -> usize {
        metrics.update_bucket_ops += nb as u64;
        let mut x = 0usize;
        let mut tail: Option<u32> = None;
        for dq in &self.deq[..nb] {
            let (Some(&head), Some(&t)) = (dq.front(), dq.back()) else {
                continue;
            };
            if let Some(prev) = tail {
                x = x.max((head - prev) as usize);
            }
            tail = Some(t);
        }
        x
    }

    /// Largest present element below `p`, looking at most two buckets left
    /// of `q`; `None` means it is out of reach, hence over `2d` away.
    fn pred_nearby(&self, q: usize, p: u32) -> Option<u32> {
        for qq in (q.saturating_sub(2)..=q).rev() {
            if let Some(&b) = self.deq[qq].back() {
                if b < p {
                    return Some(b);
                }
            }
            if let Some(&f) = self.deq[qq].front() {
                if f < p {
                    // Between front and back; can only happen in `q` itself
                    // right after a back-pop, where the new back is present.
                    return self.deq[qq].iter().rev().find(|&&x| x < p).copied();
                }
            }
        }
        None
    }

    fn succ_nearby(&self, nb: usize, q: usize, p: u32) -> Option<u32> {
        let hi = (q + 2).min(nb - 1);
        for dq in &self.deq[q..=hi] {
            if let Some(&f) = dq.front() {
                if f > p {
                    return Some(f);
                }
            }
            if let Some(&b) = dq.back() {
                if b > p {
                    return dq.iter().find(|&&x| x > p).copied();
                }
            }
        }
        None
    }

    /// Peels the chain top-down: classify the node whose inserts are still
    /// in place, then undo them. Removing an occurrence only ever merges
    /// gaps, so the running maxgap stays exact by folding in each new gap,
    /// except near the interval ends, where the first or last occurrence
    /// can vanish and shrink the maxgap; those few removals trigger a full
    /// rescan. Leaves the buffer empty for the next chain.
    fn finish(
        &mut self,
        gamma: (usize, usize),
        d: usize,
        nb: usize,
        mg: &mut [u32],
        metrics: &mut Metrics,
    ) {
        let mut x = self.rescan(nb, metrics);
        let (i, j) = gamma;
        while let Some((v, start)) = self.marks.pop() {
            mg[v as usize] = classify(x, d);
            let mut near_end = false;
            while self.log.len() > start as usize {
                let (p, kind) = self.log.pop().unwrap();
                metrics.update_bucket_ops += 1;
                let q = (p as usize - i) / d;
                match kind {
                    Kind::Ignored => continue,
                    Kind::Front => {
                        let f = self.deq[q].pop_front();
                        debug_assert_eq!(f, Some(p));
                    }
                    Kind::Back => {
                        let b = self.deq[q].pop_back();
                        debug_assert_eq!(b, Some(p));
                    }
                }
                if (p as usize) < i + 2 * d || (p as usize) + 4 * d > j + 1 {
                    near_end = true;
                    continue;
                }
                if x == GAP_HUGE {
                    continue;
                }
                // Interior removal: the two neighbours fuse into one gap.
                match (self.pred_nearby(q, p), self.succ_nearby(nb, q, p)) {
                    (Some(a), Some(b)) => x = x.max((b - a) as usize),
                    _ => x = GAP_HUGE,
                }
            }
            if near_end {
                x = self.rescan(nb, metrics);
            }
        }
        for &q in &self.dq_touched {
            self.deq[q as usize].clear();
        }
        self.dq_touched.clear();
        self.log.clear();
    }
}

/// Node state shared by the doubling windows of one range call, so the
/// per-node buffers fault in once instead of once per window.
struct Scratch {
    /// Bit 0: plausible; bits 2..4: plausible child count, saturated at 2.
    flags: Vec<u8>,
    mg: Vec<u32>,
    carry: Vec<u32>,
    pool: PanePool,
    replay: Replay,
    /// Plausible children of the node in hand: leaf range and pane slot.
    kids: Vec<(u32, u32, u32)>,
}

const PLAUSIBLE: u8 = 1;

fn is_active(flags: &[u8], v: usize) -> bool {
    flags[v] & PLAUSIBLE != 0 && (v == InducedTree::ROOT || flags[v] >> 2 != 1)
}

impl Scratch {
    fn new(count: usize, nb_cap: usize) -> Scratch {
        Scratch {
            flags: vec![0; count],
            mg: vec![MG_ABOVE; count],
            carry: vec![NO_SLOT; count],
            pool: PanePool::new(nb_cap),
            replay: Replay::new(nb_cap),
            kids: Vec::new(),
        }
    }
}

/// Maxgap class of every plausible node for the window `[d, 2d]`, left in
/// `scratch.mg`; entries of implausible nodes are stale.
///
/// Occurrence sets are folded bottom-up over the plausible subtree as
/// per-bucket minima and maxima. Each occurrence belongs with its lowest
/// plausible ancestor; since children partition a node's leaf range in
/// order, those are exactly the rank segments between the node's plausible
/// children, read straight off the leaf table. Nodes where the subtree
/// branches are read off directly; each single-child chain is replayed once
/// and peeled. The root's own verdict is never consumed, so its pane work
/// is skipped.
fn window_maxgaps(
    tree: &InducedTree,
    gamma: (usize, usize),
    d: usize,
    scratch: &mut Scratch,
    metrics: &mut Metrics,
) {
    let (i, j) = gamma;
    let count = tree.node_count();
    let nb = (j - i) / d + 1;
    let Scratch {
        flags,
        mg,
        carry,
        pool,
        replay,
        kids,
    } = scratch;
    let positions = tree.leaf_positions();

    let mut chain_open = false;
    for v in (1..count).rev() {
        if flags[v] & PLAUSIBLE == 0 {
            continue;
        }
        kids.clear();
        for c in tree.children(v) {
            if flags[c] & PLAUSIBLE != 0 {
                let (lo, hi) = tree.leaf_range(c);
                kids.push((lo as u32, hi as u32, carry[c]));
                carry[c] = NO_SLOT;
            }
        }
        let active = is_active(flags, v);
        let acc = match kids.first() {
            Some(&(_, _, s)) => s,
            None => pool.acquire(),
        };
        for &(_, _, s) in kids.iter().skip(1) {
            pool.absorb(acc, s, metrics);
        }

        // A non-active node has exactly one plausible child; it either ends
        // an open chain coming up from below or starts one over an active
        // child.
        let on_chain = !active;
        debug_assert!(!on_chain || kids.len() == 1);

        let (lo, hi) = tree.leaf_range(v);
        if on_chain {
            if !chain_open {
                replay.open(&pool.slots[acc as usize]);
                chain_open = true;
            }
            replay.begin_node(v);
        }
        // Rank segments not covered by plausible children are this node's
        // own occurrences.
        let mut at = lo;
        let pane = &mut pool.slots[acc as usize];
        let mut flush = |a: usize, b: usize, pane: &mut Pane| {
            for &p in &positions[a..b] {
                metrics.update_bucket_ops += 1;
                let q = (p as usize - i) / d;
                pane.insert(q, p);
                if on_chain {
                    replay.insert(q, p, metrics);
                }
            }
        };
        for &(clo, chi, _) in kids.iter() {
            flush(at, clo as usize, pane);
            at = chi as usize + 1;
        }
        flush(at, hi + 1, pane);

        if on_chain {
            if is_active(flags, tree.parent(v)) {
                replay.finish(gamma, d, nb, mg, metrics);
                chain_open = false;
            }
        } else {
            mg[v] = classify(pane.scan(nb, metrics), d);
        }
        carry[v] = acc;
    }
    debug_assert!(!chain_open, "chain left open");

    // Only the root's plausible children are left unconsumed; their panes
    // are dropped without the root-level flush, whose verdict nobody reads.
    for c in tree.children(InducedTree::ROOT) {
        if carry[c] != NO_SLOT {
            pool.release(carry[c]);
            carry[c] = NO_SLOT;
        }
    }
    debug_assert!(carry.iter().all(|&s| s == NO_SLOT), "pane slot leaked");
}

/// One `[d, 2d]` window: classify maxgaps, then fold each plausible node's
/// verdict into the running exact/below state.
#[allow(clippy::too_many_arguments)]
fn window_pass(
    tree: &InducedTree,
    gamma: (usize, usize),
    d: usize,
    r: usize,
    first_window: bool,
    policy: CornerPolicy,
    scratch: &mut Scratch,
    exact: &mut [u32],
    below: &mut [bool],
    metrics: &mut Metrics,
) {
    let (i, j) = gamma;
    let count = tree.node_count();

    // Necessary conditions for a quasigap of at most 2d: an early first
    // occurrence, a late last one, enough occurrences for the span, and a
    // parent word short enough that a value over it can still fit in the
    // window. Each holds for every ancestor of a passing node except the
    // density one, so the set is closed upward to keep it a subtree.
    for v in 0..count {
        let (first, last) = (tree.occ_first(v), tree.occ_last(v));
        let ok = first < i + 2 * d
            && last + 4 * d >= j + 2
            && 2 * d * (tree.occ_count(v) - 1) >= last - first
            && tree.word_len(tree.parent(v)) < 2 * d;
        scratch.flags[v] = u8::from(ok);
    }
    for v in (1..count).rev() {
        if scratch.flags[v] & PLAUSIBLE != 0 {
            let u = tree.parent(v);
            let f = scratch.flags[u];
            let cc = (f >> 2).min(1) + 1;
            scratch.flags[u] = PLAUSIBLE | (cc << 2);
        }
    }
    // Active leaves pin disjoint occurrence sets to the 2d positions that
    // can hold a plausible first occurrence, which caps the whole set.
    debug_assert!(
        (0..count).filter(|&v| is_active(&scratch.flags, v)).count() <= 4 * d + 2
    );

    window_maxgaps(tree, gamma, d, scratch, metrics);

    for v in 1..count {
        if scratch.flags[v] & PLAUSIBLE == 0 {
            continue;
        }
        let wl = tree.word_len(v);
        let (first, last) = (tree.occ_first(v), tree.occ_last(v));
        let terms = (first - i + 1)
            .max((j - last).div_ceil(2) + 1)
            .max(tree.word_len(tree.parent(v)) + 1);
        let verdict = match scratch.mg[v] {
            MG_ABOVE => RestrictedValue::AboveRange,
            MG_BELOW if terms > 2 * d => RestrictedValue::AboveRange,
            MG_BELOW if terms >= d => {
                // The maxgap cannot reach `terms`, so the value is exact.
                if terms > wl {
                    RestrictedValue::AboveRange
                } else {
                    RestrictedValue::Exact(terms)
                }
            }
            MG_BELOW if wl >= d => RestrictedValue::BelowRange,
            MG_BELOW => {
                // Everything is under `d`, including the word itself, so
                // finite-versus-infinite hinges on the exact maxgap.
                match policy {
                    CornerPolicy::AboveBias => RestrictedValue::AboveRange,
                    CornerPolicy::Resolve if terms > wl => RestrictedValue::AboveRange,
                    CornerPolicy::Resolve => {
                        let mut occ = tree.leaf_slice(v).to_vec();
                        occ.sort_unstable();
                        metrics.corner_fallback_elems += occ.len() as u64;
                        let m = quasigap_core::maxgap(&occ).max(terms);
                        if m <= wl {
                            RestrictedValue::BelowRange
                        } else {
                            RestrictedValue::AboveRange
                        }
                    }
                }
            }
            x => {
                let m = (x as usize).max(terms);
                if m > 2 * d || m > wl {
                    RestrictedValue::AboveRange
                } else {
                    RestrictedValue::Exact(m)
                }
            }
        };
        match verdict {
            RestrictedValue::Exact(q) if q <= r => {
                debug_assert!(exact[v] == 0 || exact[v] as usize == q);
                exact[v] = q as u32;
            }
            RestrictedValue::BelowRange if first_window => below[v] = true,
            _ => {}
        }
    }
}

/// Quasigap of every node within `gamma`, exact when it falls in `[l, r]`
/// and classified as below or above otherwise.
///
/// Runs one doubling window per octave of the range; each window costs time
/// linear in the interval, so narrow ranges are cheap. The tree must be
/// induced by all positions of `gamma`.
pub fn compute_in_range(
    tree: &InducedTree,
    gamma: (usize, usize),
    l: usize,
    r: usize,
    policy: CornerPolicy,
    metrics: &mut Metrics,
) -> Result<Vec<RestrictedValue>> {
    let (i, j) = gamma;
    if l == 0 || l > r {
        return Err(Error::InvalidRange { lo: l, hi: r });
    }
    debug_assert!(i <= j && tree.occ_first(InducedTree::ROOT) >= i);
    debug_assert!(tree.occ_last(InducedTree::ROOT) <= j);
    debug_assert_eq!(tree.occ_count(InducedTree::ROOT), j - i + 1);

    let count = tree.node_count();
    // Words may run past the interval, so quasigaps can exceed its length;
    // only the longest word in the tree bounds them.
    let max_wl = (0..count).map(|v| tree.word_len(v)).max().unwrap_or(0);
    let r = r.min(max_wl.max(1));
    let mut scratch = Scratch::new(count, (j - i) / l + 1);
    let mut exact = vec![0u32; count];
    let mut below = vec![false; count];
    let mut d = l;
    loop {
        window_pass(
            tree,
            gamma,
            d,
            r,
            d == l,
            policy,
            &mut scratch,
            &mut exact,
            &mut below,
            metrics,
        );
        if 2 * d >= r {
            break;
        }
        d *= 2;
    }
    Ok((0..count)
        .map(|v| match (exact[v], below[v]) {
            (q, _) if q != 0 => RestrictedValue::Exact(q as usize),
            (_, true) => RestrictedValue::BelowRange,
            (_, false) => RestrictedValue::AboveRange,
        })
        .collect())
}
