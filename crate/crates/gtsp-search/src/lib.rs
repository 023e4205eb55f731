//! Local search for the GTSP.
//!
//! Cluster Optimization (CO) picks the best vertices for a fixed cluster
//! order. TSP neighbourhoods (2-opt, restricted 3-opt, insertion, swap) are
//! lifted to the GTSP by one of five [`Adaptation`]s. Fragment
//! Optimization rearranges short windows exactly.

pub mod adapt;
pub mod bounds;
pub mod co;
pub mod fragment;
mod global;
pub mod insertion;
pub mod layers;
pub mod path_table;
pub mod swap;
pub mod three_opt;
pub mod two_opt;

pub use adapt::{Adaptation, SearchStats};
pub use bounds::{broken_cycle_lower_bound, shortest_path_lower_bound, LowerBound};
pub use co::{cluster_optimize, co_sequence, Refinements};
pub use fragment::{fragment_opt, fragment_opt_with, optimize_window, FoAlgorithm};
pub use insertion::{insertion, insertion_with};
pub use path_table::PathTable;
pub use swap::{swap, swap_with};
pub use three_opt::{three_opt, three_opt_with};
pub use two_opt::{two_opt, two_opt_with, TwoOptOptions};
