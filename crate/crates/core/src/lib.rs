//! Exact combinatorics of pattern-avoiding set partitions.
//!
//! Partitions are restricted growth words. The crate enumerates avoiders of
//! pattern sets, expands generating functions with exact rational series
//! arithmetic, checks explicit bijections exhaustively and sorts pattern
//! pairs into equivalence classes by their counting signatures.

pub mod bijections;
pub mod classify;
pub mod composition;
pub mod enumerate;
pub mod error;
pub mod partition;
pub mod pattern;
pub mod series;
pub mod triangle;

pub use composition::Composition;
pub use enumerate::{count_avoiders, count_avoiders_by_blocks, enumerate_avoiders, profile_counts};
pub use error::{Error, Result};
pub use partition::{components, fasc, from_blocks, is_noncrossing, validate_rgs, CountTable, CountVector, Rgs};
pub use pattern::{contains, leftmost_occurrence, substitute, topmost_occurrence, Occurrence, Pattern, PatternSet};
pub use series::{expand_catalog, expand_f_a, recurrence_eval, verify_all, verify_entry, BiSeries, Series};
pub use triangle::{fasc_triangle, FascTriangle, TriangleVariant};
pub use bijections::{bijection_suite, f_122_to_123, verify_composition_bijections, verify_lemma_122, BijectionReport};
pub use classify::{classify, generate_pairs, verify_table, ClassificationReport, EquivNotion, PairFamily};
