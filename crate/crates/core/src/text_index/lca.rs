//! Constant-time lowest common ancestors from a parent array.
//!
//! Euler tour + restricted range-minimum: depths of consecutive tour entries
//! differ by exactly one, so each 16-entry block is summarized by a 15-bit
//! rise/fall pattern and in-block argmins come from a table shared by all
//! indexes in the process. Cross-block queries use a sparse table over block
//! minima.

use std::sync::LazyLock;

use crate::error::{Error, Result};

const EMPTY: u32 = u32::MAX;
const B: usize = 16;

/// Argmin offset for every window `[l, r]` of every rise/fall pattern.
/// Windows are triangularly packed, see [`tri_idx`].
static PATTERN_TABLE: LazyLock<Vec<[u8; 136]>> = LazyLock::new(|| {
    let mut table = vec![[0u8; 136]; 1 << (B - 1)];
    for (pat, entry) in table.iter_mut().enumerate() {
        let mut val = [0i8; B];
        for k in 0..B - 1 {
            val[k + 1] = val[k] + if pat >> k & 1 == 1 { 1 } else { -1 };
        }
        for l in 0..B {
            let mut best = l;
            for r in l..B {
                if val[r] < val[best] {
                    best = r;
                }
                entry[tri_idx(l, r)] = best as u8;
            }
        }
    }
    table
});

/// Packed index of the window `[l, r]`, `0 <= l <= r < 16`.
const fn tri_idx(l: usize, r: usize) -> usize {
    l * (31 - l) / 2 + r
}

pub struct LcaIndex {
    tour: Vec<u32>,
    depths: Vec<u32>,
    first_visit: Vec<u32>,
    patterns: Vec<u16>,
    /// `sparse[j][i]`: tour index of the depth minimum over blocks
    /// `[i, i + 2^j)`; level 0 holds the per-block minima.
    sparse: Vec<Vec<u32>>,
}

impl LcaIndex {
    /// Builds the index for the tree described by `parents`, where node 0 is
    /// the root and `parents[0] == 0`. Nodes unreachable from the root are
    /// tolerated but answer with [`Error::UnknownNode`].
    pub fn new(parents: &[u32]) -> Self {
        let k = parents.len();
        assert!(k > 0 && parents[0] == 0, "node 0 must be the root");

        // Children lists in CSR form, id order within each parent.
        let mut head = vec![0u32; k + 1];
        for (v, &p) in parents.iter().enumerate() {
            if v != p as usize {
                head[p as usize + 1] += 1;
            }
        }
        for i in 0..k {
            head[i + 1] += head[i];
        }
        let mut kids = vec![0u32; head[k] as usize];
        let mut cursor = head.clone();
        for (v, &p) in parents.iter().enumerate() {
            if v != p as usize {
                kids[cursor[p as usize] as usize] = v as u32;
                cursor[p as usize] += 1;
            }
        }

        let mut tour = Vec::with_capacity(2 * k - 1);
        let mut depths = Vec::with_capacity(2 * k - 1);
        let mut first_visit = vec![EMPTY; k];
        let mut stack: Vec<(u32, u32)> = Vec::new();
        stack.push((0, head[0]));
        first_visit[0] = 0;
        tour.push(0);
        depths.push(0);
        while let Some(top) = stack.last_mut() {
            let (v, cur) = *top;
            if cur < head[v as usize + 1] {
                top.1 += 1;
                let c = kids[cur as usize];
                stack.push((c, head[c as usize]));
                first_visit[c as usize] = tour.len() as u32;
                tour.push(c);
                depths.push(stack.len() as u32 - 1);
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    tour.push(p);
                    depths.push(stack.len() as u32 - 1);
                }
            }
        }

        let len = tour.len();
        let nb = len.div_ceil(B);
        let mut patterns = Vec::with_capacity(nb);
        for b in 0..nb {
            let base = b * B;
            let mut pat = 0u16;
            for kbit in 0..B - 1 {
                // Pad past the end with rises so the padding never wins.
                if base + kbit + 1 >= len || depths[base + kbit + 1] > depths[base + kbit] {
                    pat |= 1 << kbit;
                }
            }
            patterns.push(pat);
        }

        let mut index = LcaIndex {
            tour,
            depths,
            first_visit,
            patterns,
            sparse: Vec::new(),
        };
        let mut level: Vec<u32> = (0..nb)
            .map(|b| {
                let last = ((b + 1) * B).min(len) - 1;
                index.in_block(b, 0, last - b * B)
            })
            .collect();
        index.sparse.push(level.clone());
        let mut span = 1;
        while 2 * span <= nb {
            let next: Vec<u32> = (0..=nb - 2 * span)
                .map(|i| index.pick(level[i], level[i + span]))
                .collect();
            index.sparse.push(next.clone());
            level = next;
            span *= 2;
        }
        index
    }

    /// Lowest common ancestor of `a` and `b`.
    pub fn lca(&self, a: usize, b: usize) -> Result<usize> {
        let fa = self.first_visit(a)?;
        let fb = self.first_visit(b)?;
        let (l, r) = if fa <= fb { (fa, fb) } else { (fb, fa) };
        Ok(self.tour[self.range_min(l, r)] as usize)
    }

    fn first_visit(&self, v: usize) -> Result<usize> {
        match self.first_visit.get(v) {
            Some(&f) if f != EMPTY => Ok(f as usize),
            _ => Err(Error::UnknownNode(v)),
        }
    }

    /// Tour index of the depth minimum over `[l, r]`, inclusive.
    fn range_min(&self, l: usize, r: usize) -> usize {
        let (bl, br) = (l / B, r / B);
        if bl == br {
            return self.in_block(bl, l % B, r % B) as usize;
        }
        let mut best = self.pick(
            self.in_block(bl, l % B, B - 1),
            self.in_block(br, 0, r % B),
        );
        if bl + 1 <= br - 1 {
            best = self.pick(best, self.block_range_min(bl + 1, br - 1));
        }
        best as usize
    }

    /// Depth minimum over full blocks `[x, y]`, inclusive, via sparse table.
    fn block_range_min(&self, x: usize, y: usize) -> u32 {
        let j = usize::ilog2(y - x + 1) as usize;
        self.pick(self.sparse[j][x], self.sparse[j][y + 1 - (1 << j)])
    }

    fn in_block(&self, b: usize, l: usize, r: usize) -> u32 {
        let off = PATTERN_TABLE[self.patterns[b] as usize][tri_idx(l, r)];
        (b * B + off as usize) as u32
    }

    fn pick(&self, i: u32, j: u32) -> u32 {
        if self.depths[i as usize] <= self.depths[j as usize] {
            i
        } else {
            j
        }
    }
}
