//! Consecutive ones property (C1P) testing without PQ-trees.
//!
//! A family of column subsets has the consecutive ones property when some
//! permutation of the columns makes every subset occupy consecutive
//! positions. The test runs in three stages:
//!
//! 1. [`maxcomp`] computes, for every row `R`, the largest row preceding it
//!    in decreasing-size order that overlaps it (`Max(R)`), by two passes of
//!    ordered partition refinement.
//! 2. [`overlap`] builds typed intervals over the per-column row lists and
//!    walks them to label overlap classes while emitting a *swap overlap
//!    order* for each class.
//! 3. [`refine`] refines an ordered partition of each class's columns along
//!    that order, swapping a row with its successor when the row does not cut
//!    the current partition. A class is C1P iff the refinement never fails.
//!
//! [`oracle`] holds brute-force references used by the test suites.

pub mod error;
pub mod family;
pub mod maxcomp;
pub mod oracle;
pub mod overlap;
pub mod refine;
mod relabel;
pub mod report;

pub use error::{Error, Result};
pub use family::{gen_family, parse_family, GeneratorMode, GeneratorSpec, LrOrder, SetFamily, SlLists};
pub use maxcomp::{compute_max, MaxTable};
pub use overlap::{classes_and_orders, ClassLabeling, SwapOrder};
pub use refine::{c1p_test, swap_partition_class, ClassReport, PartitionArray, RefineOutcome};
pub use report::{ClassEntry, FailInfo, FamilyReport, Stats};
