//! Seeds, covers and quasigap analysis of strings in near-linear time.
//!
//! The entry point is [`Analysis`], which builds the suffix structures for a
//! text once and then answers seed queries: the set of all seeds as per-edge
//! length ranges, a shortest seed, per-node quasigaps, and the underlying
//! f-factorization. Positions are 0-based throughout the library.
//!
//! ```
//! use seedex::{Analysis, Text};
//!
//! let text = Text::from_bytes(b"aaabaabaabaaabaaba").unwrap();
//! let analysis = Analysis::new(text);
//! let (pos, len) = analysis.shortest_seed();
//! assert_eq!(len, 4);
//! assert!(analysis.seed_word(pos, len) == b"abaa".map(u32::from));
//! ```

pub mod error;
pub mod factorization;
pub mod families;
pub mod induced_tree;
pub mod merge_engine;
pub mod metrics;
pub mod quasigap_core;
pub mod range_engine;
pub mod seed_solver;
pub mod staircase;
pub mod text_index;

pub use error::{Error, Result};
pub use metrics::Metrics;
pub use quasigap_core::QuasigapValue;
pub use range_engine::{CornerPolicy, RestrictedValue};
pub use seed_solver::{Analysis, CandidateSet, SeedRange, SeedSet};
pub use staircase::SolverConfig;
pub use text_index::Text;
