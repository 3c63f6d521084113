//! Global suffix structures: suffix array, LCP table, suffix tree, and the
//! constant-time LCA / LCE indexes built on top of them.

mod lca;
mod lce;
mod sais;
mod tree;

pub use lca::LcaIndex;
pub use lce::LceIndex;
pub use tree::{build_suffix_tree, SuffixTree};

use crate::error::{Error, Result};

/// Longest supported text. Internal indexes use `u32`, and several arrays
/// need headroom above `n`, so the cap is conservative.
pub const MAX_TEXT_LEN: usize = 1 << 30;

/// An immutable word over a non-negative integer alphabet.
///
/// Positions are 0-based. The sentinel terminating the text in the suffix
/// structures is implicit: it is smaller than every symbol and is never
/// stored in `symbols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u32>,
}

impl Text {
    pub fn new(symbols: Vec<u32>) -> Result<Text> {
        if symbols.is_empty() {
            return Err(Error::EmptyText);
        }
        if symbols.len() > MAX_TEXT_LEN {
            return Err(Error::TextTooLong(symbols.len()));
        }
        Ok(Text { symbols })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Text> {
        Text::new(bytes.iter().map(|&b| u32::from(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }
}

/// Suffix array of the text followed by the implicit sentinel: `n + 1`
/// entries, the first of which is the bare sentinel suffix `n`.
pub fn build_suffix_array(text: &Text) -> Vec<u32> {
    sais::suffix_array_with_sentinel(text.symbols())
}

/// [`build_suffix_array`] over a bare slice, for interval-local structures.
pub(crate) fn suffix_array_of_slice(w: &[u32]) -> Vec<u32> {
    sais::suffix_array_with_sentinel(w)
}

/// LCP table matching [`build_suffix_array`]: `lcp[r]` is the longest common
/// prefix of the suffixes at ranks `r - 1` and `r`; `lcp[0] = 0`. The
/// sentinel never participates in a common prefix, so values are plain
/// common prefix lengths within the text.
pub fn build_lcp_array(text: &Text, sa: &[u32]) -> Vec<u32> {
    lcp_of_slice(text.symbols(), sa)
}

/// [`build_lcp_array`] over a bare slice.
pub(crate) fn lcp_of_slice(w: &[u32], sa: &[u32]) -> Vec<u32> {
    let n = w.len();
    debug_assert_eq!(sa.len(), n + 1);
    let mut rank = vec![0u32; n + 1];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    let mut lcp = vec![0u32; n + 1];
    let mut h = 0usize;
    for p in 0..n {
        let r = rank[p] as usize;
        debug_assert!(r > 0);
        let q = sa[r - 1] as usize;
        while p + h < n && q + h < n && w[p + h] == w[q + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
