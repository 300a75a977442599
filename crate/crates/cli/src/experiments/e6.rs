//! E6: Cartan's magic formula through element pairings. The flow-based Lie
//! derivative (RK4 + Richardson) is the left side; `d(i_X ω) + i_X dω` is
//! the independent algebraic side.

use super::data::*;
use super::{ExperimentSpec, FLOW_TOL};
use crate::table::{elapsed_secs, ExperimentTable, ResultRow};
use chainlet_core::elements::lie_derivative;
use chainlet_core::exterior::KVector;
use chainlet_core::linalg::Mat;
use chainlet_core::{ElementChain, Result, VectorField};
use rand::Rng;
use rand::SeedableRng;

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    let mut table = ExperimentTable::new("E6", spec.seed);
    let mut rng = Rng8::seed_from_u64(spec.seed);
    let n = 2usize;

    // X = 0: both sides vanish
    let start = std::time::Instant::now();
    let zero_field = VectorField::zero(n);
    let e = ElementChain::monopole(vec![0.3, 0.4], KVector::axis(2, 1));
    let w = random_form(&mut rng, n, 1, 3);
    let lhs = lie_derivative(&zero_field, &e)?.integrate(&w)?;
    table.push(ResultRow::new(0, lhs, 0.0, Some(FLOW_TOL), elapsed_secs(start)));

    // constant and constant-form row: both sides are exactly zero
    let start = std::time::Instant::now();
    let const_field = VectorField::constant(&[0.7, -0.1]);
    let const_form = chainlet_core::DifferentialForm::constant(n, &KVector::axis(2, 2));
    let lhs = lie_derivative(&const_field, &e)?.integrate(&const_form)?;
    table.push(ResultRow::new(0, lhs, 0.0, Some(FLOW_TOL), elapsed_secs(start)));

    // rotation field against x dy: analytic oracle via the Cartan formula
    let rotation = VectorField::linear(&Mat::from_rows(&[
        vec![0.0, -1.0],
        vec![1.0, 0.0],
    ]));
    let fields: Vec<(&str, VectorField)> = vec![
        ("rotation", rotation),
        (
            "linear",
            VectorField::linear(&Mat::from_rows(&[
                vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
                vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            ])),
        ),
        (
            "quadratic",
            VectorField::new(vec![
                random_poly(&mut rng, n, 2, 0.5),
                random_poly(&mut rng, n, 2, 0.5),
            ]),
        ),
    ];
    for (label, field) in &fields {
        for rep in 0..4 {
            let start = std::time::Instant::now();
            let point: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let e = ElementChain::monopole(point, random_kvector(&mut rng, n, 1));
            let w = random_form(&mut rng, n, 1, 3);
            let lhs = lie_derivative(field, &e)?.integrate(&w)?;
            let cartan = field
                .interior_product(&w)?
                .d()?
                .add(&field.interior_product(&w.d()?)?);
            let rhs = e.integrate(&cartan)?;
            let row = ResultRow::new(rep, lhs, rhs, Some(FLOW_TOL), elapsed_secs(start));
            if !row.within_bound() {
                table.note(format!("{} field case exceeded tolerance", label));
            }
            table.push(row);
        }
    }
    table.note(format!("max residual {:.3e}", table.max_residual()));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentId;

    #[test]
    fn cartan_suite_passes() {
        let spec = ExperimentSpec::new(ExperimentId::E6);
        let table = run(&spec).unwrap();
        assert!(table.pass, "notes: {:?}", table.notes);
    }

    #[test]
    fn quadratic_poly_helper_respects_scale() {
        let mut rng = Rng8::seed_from_u64(5);
        let p: chainlet_core::Poly = random_poly(&mut rng, 2, 2, 0.5);
        assert!(p.degree() <= 2);
    }
}
