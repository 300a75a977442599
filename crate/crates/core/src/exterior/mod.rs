//! Finite-dimensional multilinear algebra over R^n: multi-indices, k-vectors,
//! and linear maps with their grade-k lifts.

pub mod kvector;
pub mod linear_map;
pub mod multi_index;

pub use kvector::KVector;
pub use linear_map::{derivation_extension, pushforward_by_matrix, LinearMap};
pub use multi_index::{binomial, MultiIndex, DIM_CAP};
