//! Construction heuristics, the linear assignment solver and local
//! searches for the multidimensional assignment problem.
//!
//! Dimensionwise searches (1DV, 2DV, sDV) re-pair whole dimension groups
//! optimally; vectorwise searches (2-opt, 3-opt, v-opt) recombine a few
//! vectors at a time. VND alternates one of each.

pub mod ap;
pub mod construct;
pub mod count;
pub mod dv;
pub mod kopt;
pub mod vnd;
pub mod vopt;

pub use ap::ap_solve;
pub use construct::{
    greedy_construct, greedy_naive, max_regret_construct, max_regret_naive, rom_construct, shift_rom_construct,
    shift_rom_naive, trivial_construct, Construction,
};
pub use dv::{dimension_sets, dv_move, dv_search, p_d, DvScope};
pub use kopt::{for_each_recombination, k_opt, k_opt_with};
pub use vnd::{vnd, LocalSearch, VndCombo, Vectorwise};
pub use vopt::{swap_sets, v_opt, v_opt_chain, ChainTrace};
