//! Multidimensional Assignment Problem (s-AP): instances, the test-bed
//! families, assignments and a probabilistic estimate of the optimum of
//! Random instances.
//!
//! Dimensions are `0..s`, coordinate values `0..n`. A vector `e` has weight
//! `w(e)`; an assignment is `n` vectors that differ in every coordinate.

pub mod assignment;
pub mod error;
pub mod family;
pub mod instance;
pub mod io;
pub mod probability;

pub use assignment::Assignment;
pub use error::{MapError, Result};
pub use family::{Family, InstanceName};
pub use instance::{generate, generate_seeded, weight_evaluations, MapInstance, MAX_DENSE_CELLS};
pub use probability::{pr_alpha_positive, AlphaBound};

/// Vector and assignment weight.
pub type Weight = i64;

/// Weight of the assignment `a`.
pub fn assignment_weight(inst: &MapInstance, a: &Assignment) -> Weight {
    a.weight(inst)
}
