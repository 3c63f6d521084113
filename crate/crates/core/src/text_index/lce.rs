//! Longest common extensions via range minima over the LCP array.

use crate::text_index::{build_lcp_array, build_suffix_array, Text};

const B: usize = 32;

/// Answers longest-common-prefix-of-suffixes queries in constant time after
/// a linear-space build: inverse suffix ranks plus a sparse table over LCP
/// block minima, with block edges scanned directly.
pub struct LceIndex {
    n: usize,
    rank: Vec<u32>,
    lcp: Vec<u32>,
    /// `sparse[j][i]`: minimum over blocks `[i, i + 2^j)`; level 0 holds the
    /// per-block minima.
    sparse: Vec<Vec<u32>>,
}

impl LceIndex {
    pub fn new(text: &Text) -> Self {
        let sa = build_suffix_array(text);
        let lcp = build_lcp_array(text, &sa);
        Self::from_parts(text.len(), &sa, lcp)
    }

    /// Builds from the `n + 1` entry suffix and LCP arrays over `w#`.
    pub fn from_parts(n: usize, sa: &[u32], lcp: Vec<u32>) -> Self {
        assert_eq!(sa.len(), n + 1);
        assert_eq!(lcp.len(), n + 1);
        let mut rank = vec![0u32; n + 1];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let nb = (n + 1).div_ceil(B);
        let mut level: Vec<u32> = (0..nb)
            .map(|b| {
                lcp[b * B..((b + 1) * B).min(n + 1)]
                    .iter()
                    .copied()
                    .min()
                    .unwrap()
            })
            .collect();
        let mut sparse = vec![level.clone()];
        let mut span = 1;
        while 2 * span <= nb {
            let next: Vec<u32> = (0..=nb - 2 * span)
                .map(|i| level[i].min(level[i + span]))
                .collect();
            sparse.push(next.clone());
            level = next;
            span *= 2;
        }
        LceIndex {
            n,
            rank,
            lcp,
            sparse,
        }
    }

    /// Length of the longest common prefix of the suffixes starting at `i`
    /// and `j`. Position `n` addresses the empty suffix.
    pub fn lce(&self, i: usize, j: usize) -> usize {
        assert!(i <= self.n && j <= self.n, "position out of range");
        if i == j {
            return self.n - i;
        }
        let (a, b) = (self.rank[i], self.rank[j]);
        let (l, r) = if a < b { (a + 1, b) } else { (b + 1, a) };
        self.range_min(l as usize, r as usize) as usize
    }

    fn range_min(&self, l: usize, r: usize) -> u32 {
        let (bl, br) = (l / B, r / B);
        if bl == br {
            return self.lcp[l..=r].iter().copied().min().unwrap();
        }
        let mut best = self.lcp[l..(bl + 1) * B].iter().copied().min().unwrap();
        best = best.min(self.lcp[br * B..=r].iter().copied().min().unwrap());
        if bl + 1 <= br - 1 {
            best = best.min(self.block_range_min(bl + 1, br - 1));
        }
        best
    }

    /// Minimum over the full blocks `[x, y]`, inclusive.
    fn block_range_min(&self, x: usize, y: usize) -> u32 {
        let j = usize::ilog2(y - x + 1) as usize;
        self.sparse[j][x].min(self.sparse[j][y + 1 - (1 << j)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn index_of(bytes: &[u8]) -> LceIndex {
        let text = Text::new(bytes.iter().map(|&b| b as u32).collect()).unwrap();
        LceIndex::new(&text)
    }

    #[test]
    fn banana_extensions() {
        let index = index_of(b"banana");
        assert_eq!(index.lce(1, 3), 3);
        assert_eq!(index.lce(3, 1), 3);
        assert_eq!(index.lce(0, 2), 0);
        assert_eq!(index.lce(2, 4), 2);
        assert_eq!(index.lce(2, 2), 4);
        assert_eq!(index.lce(6, 0), 0);
    }

    #[test]
    fn runs_of_one_letter() {
        let index = index_of(b"aaaaaaaa");
        for i in 0..=8 {
            for j in 0..=8 {
                assert_eq!(index.lce(i, j), 8 - i.max(j));
            }
        }
    }

    proptest! {
        #[test]
        fn matches_direct_comparison(w in proptest::collection::vec(0u32..4, 1..80)) {
            let text = Text::new(w.clone()).unwrap();
            let index = LceIndex::new(&text);
            for i in 0..w.len() {
                for j in 0..w.len() {
                    prop_assert_eq!(index.lce(i, j), seedex_oracle::lce(&w, i, j));
                }
            }
        }
    }
}
