//! Metaheuristics for the multidimensional assignment problem: Chain,
//! Multichain and a memetic algorithm whose population size follows from
//! the time budget.

pub mod chain;
pub mod clock;
pub mod crossover;
pub mod ma;
pub mod perturb;
pub mod sizer;
pub mod tune;

pub use chain::{chain, multichain, ChainOutcome};
pub use clock::{Clock, Timer, DEFAULT_EVALS_PER_SEC};
pub use crossover::crossover;
pub use ma::{local_search_for, ma_run, MapMaConfig, MapMaOutcome};
pub use perturb::{chain_perturb_size, perturb, perturb_count, random_p_opt};
pub use sizer::PopulationSizer;
pub use tune::{gamma, linspace, snapped_error, tune_sizer, TuneCell, TuneResult};
