//! Exterior algebra, polyhedral and point-supported element chains, chainlet
//! norm brackets, and dyadic quantization, with the discrete
//! Stokes/star/divergence/curl identities exact at the element level.
//!
//! All core math is generic over the scalar type via [`scalar::Scalar`]
//! (`f32` or `f64`); the crate root exports `f64` aliases, which is what the
//! experiment harness uses.

pub mod chains;
pub mod elements;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod norms;
pub mod quantize;
pub mod region;
pub mod scalar;
pub mod sign_conventions;

pub use error::{ChainletError, Result};

/// `f64` aliases for the generic core types.
pub type KVector = exterior::KVector<f64>;
pub type LinearMap = exterior::LinearMap<f64>;
pub type MultiIndex = exterior::MultiIndex;
pub type Mat = linalg::Mat<f64>;
pub type Poly = forms::Poly<f64>;
pub type DifferentialForm = forms::DifferentialForm<f64>;
pub type SmoothMap = forms::SmoothMap<f64>;
pub type VectorField = forms::VectorField<f64>;
pub type FormNormReport = forms::FormNormReport<f64>;
pub type Simplex = chains::Simplex<f64>;
pub type PolyChain = chains::PolyChain<f64>;
pub type DifferenceCell = chains::DifferenceCell<f64>;
pub type DifferenceChain = chains::DifferenceChain<f64>;
pub type ElementChain = elements::ElementChain<f64>;
pub type ElementTerm = elements::ElementTerm<f64>;
pub type AxisBox = region::AxisBox<f64>;
pub type AxisCube = quantize::AxisCube<f64>;
pub type QuantizationReport = quantize::QuantizationReport<f64>;
pub type DecompositionCert = norms::DecompositionCert<f64>;
pub type FormDictionary = norms::FormDictionary<f64>;
pub type NormBracket = norms::NormBracket<f64>;

/// Least-squares slope of `log2(values)` against the index, skipping entries
/// below `1e-14` (treated as converged to round-off). Returns `-inf` when
/// fewer than two usable points remain: everything already at round-off is
/// the steepest possible decay for acceptance purposes.
pub fn fit_log2_slope(values: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 1e-14)
        .map(|(i, &v)| (i as f64, v.log2()))
        .collect();
    if pts.len() < 2 {
        return f64::NEG_INFINITY;
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|(x, _)| x).sum();
    let sy: f64 = pts.iter().map(|(_, y)| y).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}
