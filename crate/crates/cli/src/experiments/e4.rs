//! E4: the distribution derivative `θ_{★∂A}(f) = θ_A(f′)` on the unit
//! interval: exact for the endpoint element chain, first-order convergent
//! for dyadic quantizations.

use super::ExperimentSpec;
use super::{EXACT_TOL, FIRST_ORDER_SLOPE};
use crate::table::{elapsed_secs, ExperimentTable, ResultRow};
use chainlet_core::exterior::KVector;
use chainlet_core::quantize::quantize_simplex;
use chainlet_core::{
    fit_log2_slope, DifferentialForm, ElementChain, MultiIndex, Poly, Result, Simplex,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    let mut table = ExperimentTable::new("E4", spec.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let segment = Simplex::positively_oriented(vec![vec![0.0], vec![1.0]])?;
    let interval = chainlet_core::PolyChain::from_simplex(segment.clone());
    // ∂[0,1] as the endpoint element chain {1} − {0}
    let endpoints = ElementChain::monopole(vec![1.0], KVector::scalar(1, 1.0))
        .sub(&ElementChain::monopole(vec![0.0], KVector::scalar(1, 1.0)));
    let star_endpoints = endpoints.star();

    // polynomials up to degree 5, plus the constant
    let mut polys: Vec<Poly> = vec![Poly::constant(1, rng.gen_range(-2.0..2.0))];
    for d in 1..=5u32 {
        let mut p = Poly::zero(1);
        for e in 0..=d {
            p = p.add(&Poly::monomial(1, vec![e], rng.gen_range(-2.0..2.0)));
        }
        polys.push(p);
    }
    // f = x² anchor: both sides equal 1
    polys.push(Poly::var(1, 1).pow(2));

    for f in &polys {
        let start = std::time::Instant::now();
        let f_dx = DifferentialForm::polynomial(1, 1, vec![(MultiIndex::full(1), f.clone())])?;
        let fprime_dx =
            DifferentialForm::polynomial(1, 1, vec![(MultiIndex::full(1), f.partial(1))])?;
        let lhs = star_endpoints.integrate(&f_dx)?;
        let rhs = interval.integrate(&fprime_dx)?;
        table.push(ResultRow::new(0, lhs, rhs, Some(EXACT_TOL), elapsed_secs(start)));
    }

    // quantized rows: θ_{★∂A_j}(f) converges to ∫ f′ at rate 2^{−j}
    let f = Poly::var(1, 1).pow(4);
    let f_dx = DifferentialForm::polynomial(1, 1, vec![(MultiIndex::full(1), f.clone())])?;
    let fprime_dx = DifferentialForm::polynomial(1, 1, vec![(MultiIndex::full(1), f.partial(1))])?;
    let exact = interval.integrate(&fprime_dx)?;
    let mut residuals = Vec::new();
    for j in spec.level_range() {
        let start = std::time::Instant::now();
        let (a_j, rep) = quantize_simplex(&segment, j)?;
        let lhs = a_j.boundary().star().integrate(&f_dx)?;
        // budget: ♮₁ distance of the quantization times |f′ dx|₁-style norm;
        // the Lipschitz constant of f′ = 4x³ on [0,1] is 12
        let row = ResultRow::new(
            j as i64,
            lhs,
            exact,
            Some(rep.bound * 12.0 + 1e-12),
            elapsed_secs(start),
        );
        residuals.push(row.residual);
        table.push(row);
    }
    let slope = fit_log2_slope(&residuals);
    table.require(
        slope <= FIRST_ORDER_SLOPE,
        &format!("quantized slope {} > {}", slope, FIRST_ORDER_SLOPE),
    );
    table.note(format!("quantized slope {:.3}", slope));
    Ok(table)
}
