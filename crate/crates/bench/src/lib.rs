//! Shared input setup for the criterion benches.

use seedex::families::{generate, Family};
use seedex::Text;

pub const SEED: u64 = 42;

/// Generated text of the given family and size, ready for analysis.
pub fn input(family: Family, n: usize) -> Text {
    Text::new(generate(family, n, SEED)).expect("family words are non-empty")
}
