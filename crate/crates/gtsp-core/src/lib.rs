//! Generalized Traveling Salesman Problem: instance model, tours, instance
//! ingestion and clustered instance generation.
//!
//! Vertices are `0..n`, clusters `0..m`. A tour visits exactly one vertex of
//! every cluster.

pub mod error;
pub mod generate;
pub mod instance;
pub mod native;
pub mod tour;
pub mod tsplib;

pub use error::{GtspError, Result};
pub use generate::{generate_clustered, random_euclidean, random_instance};
pub use instance::GtspInstance;
pub use tour::{turn, turn_delta, Tour};
pub use tsplib::{load_tsplib, Geometry, TsplibFile};

/// Edge weight. TSPLIB weights are integral.
pub type Weight = i64;

/// Reserved weight of a forbidden edge.
pub const INF: Weight = 1 << 62;

/// Saturating weight addition that never exceeds [`INF`].
#[inline]
pub fn wadd(a: Weight, b: Weight) -> Weight {
    a.saturating_add(b).min(INF)
}

/// Weight of the tour `t`.
pub fn tour_weight(inst: &GtspInstance, t: &Tour) -> Weight {
    t.weight(inst)
}
