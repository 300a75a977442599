//! Point-supported k-elements, their chains, and the geometric operator
//! suite: boundary, star, coboundary, Laplace, directional derivative,
//! pushforward, Lie derivative, function multiplication, and cup products.

pub mod element_chain;
pub mod transport;

pub use element_chain::{ElementChain, ElementTerm, MERGE_EPS};
pub use transport::{flow_with_jacobian, lie_derivative, pushforward};
