//! E1: the discrete Stokes identity `∫_{∂E} ω = ∫_E dω`, both sides through
//! independent code paths (boundary-then-integrate vs d-then-integrate).

use super::data::*;
use super::{ExperimentSpec, EXACT_TOL};
use crate::table::{elapsed_secs, ExperimentTable, ResultRow};
use chainlet_core::exterior::KVector;
use chainlet_core::{DifferentialForm, ElementChain, MultiIndex, Poly, Result};
use rand::SeedableRng;
use rayon::prelude::*;

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    let mut table = ExperimentTable::new("E1", spec.seed);

    // fixed anchor rows: empty chain, and the vol element against x dy
    let start = std::time::Instant::now();
    let empty = ElementChain::empty(2, 1);
    let w = DifferentialForm::polynomial(
        2,
        1,
        vec![(MultiIndex::new(vec![2], 2)?, Poly::var(2, 1))],
    )?;
    let lhs = empty.boundary().integrate(&w)?;
    table.push(ResultRow::new(0, lhs, 0.0, Some(EXACT_TOL), elapsed_secs(start)));

    let start = std::time::Instant::now();
    let vol_elem = ElementChain::monopole(vec![0.25, -0.5], KVector::vol(2));
    let lhs = vol_elem.boundary().integrate(&w)?;
    let rhs = vol_elem.integrate(&w.d()?)?;
    table.push(ResultRow::new(0, lhs, rhs, Some(EXACT_TOL), elapsed_secs(start)));

    // randomized sweep: n ≤ 4 (or pinned), k = 1..n, term orders ≤ 2
    let dims: Vec<usize> = match spec.n {
        Some(n) => vec![n],
        None => (1..=4).collect(),
    };
    let mut cases = Vec::new();
    for &n in &dims {
        let ks: Vec<usize> = match spec.k {
            Some(k) if k >= 1 && k <= n => vec![k],
            _ => (1..=n).collect(),
        };
        for k in ks {
            for rep in 0..8u64 {
                cases.push((n, k, rep));
            }
        }
    }
    let rows: Vec<ResultRow> = cases
        .par_iter()
        .map(|&(n, k, rep)| {
            let start = std::time::Instant::now();
            let mut rng = Rng8::seed_from_u64(
                spec.seed ^ (n as u64) << 16 ^ (k as u64) << 8 ^ rep,
            );
            let e = random_element_chain(&mut rng, n, k, 2, 3);
            let w = random_form(&mut rng, n, k - 1, 4);
            let lhs = e.boundary().integrate(&w).expect("pairing");
            let rhs = e.integrate(&w.d().expect("exact d")).expect("pairing");
            ResultRow::new(rep as i64, lhs, rhs, Some(EXACT_TOL), elapsed_secs(start))
        })
        .collect();
    for row in rows {
        table.push(row);
    }
    table.note(format!("max residual {:.3e}", table.max_residual()));
    Ok(table)
}
