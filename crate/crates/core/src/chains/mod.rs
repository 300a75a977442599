//! Polyhedral chains: oriented simplices, their formal sums, difference
//! cells, and integration.

pub mod difference;
pub mod poly_chain;
pub mod quadrature;
pub mod simplex;

pub use difference::{DifferenceCell, DifferenceChain};
pub use poly_chain::PolyChain;
pub use simplex::Simplex;
