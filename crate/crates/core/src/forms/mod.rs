//! Differential k-forms with derivatives: polynomial (exact) and black-box
//! (finite-difference) flavors, smooth maps, vector fields, and B^r norms.

pub mod form;
pub mod norms;
pub mod poly;
pub mod smooth_map;
pub mod vector_field;

pub use form::{DifferentialForm, FormFlavor, DEFAULT_FD_STEP};
pub use norms::{
    default_translations, estimate_form_norm, exact_monomial_norm, exact_polyform_norm_upper,
    FormNormReport,
};
pub use poly::Poly;
pub use smooth_map::SmoothMap;
pub use vector_field::VectorField;
