/// Operation counters threaded through the solver, used to check that the
/// amount of work grows linearly with the input across the bench corpus.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    /// Bucket insertions, removals and scan steps in the range engine.
    pub update_bucket_ops: u64,
    /// Path insertions and union-find steps in the merge engine.
    pub merge_ops: u64,
    /// Leaf and node touches during subtree extraction.
    pub extract_ops: u64,
    /// Elements sorted by the exact-maxgap fallback for short-word nodes.
    pub corner_fallback_elems: u64,
    /// Leaf touches inside the brute-force base case.
    pub brute_base_elems: u64,
}

impl Metrics {
    pub fn add(&mut self, other: &Metrics) {
        self.update_bucket_ops += other.update_bucket_ops;
        self.merge_ops += other.merge_ops;
        self.extract_ops += other.extract_ops;
        self.corner_fallback_elems += other.corner_fallback_elems;
        self.brute_base_elems += other.brute_base_elems;
    }

    /// Grand total, used by the linearity checks.
    pub fn total(&self) -> u64 {
        self.update_bucket_ops
            + self.merge_ops
            + self.extract_ops
            + self.corner_fallback_elems
            + self.brute_base_elems
    }
}
