//! E2: the quantization rate. For the unit k-cube the ♮₁ bound gives
//! `|∫_{Ṗ_j} ω − ∫ ω| ≤ 2^{−j+1} |ω|_1` per dictionary form; the observed
//! log₂ slope must be at most −1. Triangle sources carry a deficit column in
//! their budget.

use super::ExperimentSpec;
use crate::table::{elapsed_secs, ExperimentTable, ResultRow};
use chainlet_core::norms::FormDictionary;
use chainlet_core::quantize::{quantize_cube, quantize_simplex, AxisCube};
use chainlet_core::region::AxisBox;
use chainlet_core::{fit_log2_slope, MultiIndex, Result, Simplex};

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    let mut table = ExperimentTable::new("E2", spec.seed);
    let n = spec.n.unwrap_or(2);
    let k = spec.k.unwrap_or(n);
    let region = AxisBox::unit(n);
    let dict = FormDictionary::monomials(n, k, spec.dict_degree, &region, 1)?;

    let cube = AxisCube::unit(n, k);
    let source = cube.as_poly_chain()?;
    let mut max_residuals = Vec::new();
    for j in spec.level_range() {
        let start = std::time::Instant::now();
        let (e, rep) = quantize_cube(&cube, j)?;
        let mut level_worst = (0.0f64, 0.0f64, 0.0f64, 0.0f64); // residual, lhs, rhs, bound
        for entry in dict.entries_for(k) {
            let lhs: f64 = e.integrate(&entry.form)?;
            let rhs = source.integrate(&entry.form)?;
            let residual = (lhs - rhs).abs();
            let bound = rep.bound * entry.norm_at(1);
            if residual > level_worst.0 {
                level_worst = (residual, lhs, rhs, bound);
            } else if level_worst.3 == 0.0 {
                level_worst.3 = bound;
            }
        }
        max_residuals.push(level_worst.0);
        table.push(ResultRow::new(
            j as i64,
            level_worst.1,
            level_worst.2,
            Some(level_worst.3.max(rep.bound)),
            elapsed_secs(start),
        ));
    }
    let slope = fit_log2_slope(&max_residuals);
    table.require(slope <= -1.0, &format!("cube slope {} > -1", slope));
    table.note(format!("cube residual slope {:.3}", slope));

    // constant form: residual identically zero at every level
    let const_entry = dict
        .entries_for(k)
        .find(|e| e.id.contains(&format!("x^{:?}", vec![0u32; n])))
        .expect("constant form present");
    for j in spec.level_range() {
        let start = std::time::Instant::now();
        let (e, _) = quantize_cube(&cube, j)?;
        let lhs = e.integrate(&const_entry.form)?;
        let rhs = source.integrate(&const_entry.form)?;
        table.push(ResultRow::new(j as i64, lhs, rhs, Some(1e-12), elapsed_secs(start)));
    }

    // triangle source: residual within the covered-part bound plus deficit
    if n == 2 && k == 2 {
        let tri = Simplex::positively_oriented(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ])?;
        let tri_chain = chainlet_core::PolyChain::from_simplex(tri.clone());
        let area = unit_area_form()?;
        for j in spec.level_range() {
            let start = std::time::Instant::now();
            let (e, rep) = quantize_simplex(&tri, j)?;
            let lhs = e.integrate(&area)?;
            let rhs = tri_chain.integrate(&area)?;
            let budget = rep.bound * 1.0 + rep.deficit;
            table.push(ResultRow::new(
                j as i64,
                lhs,
                rhs,
                Some(budget + 1e-12),
                elapsed_secs(start),
            ));
        }
    }
    Ok(table)
}

/// The unit area form dx∧dy, which has |ω|_1 = 1.
fn unit_area_form() -> Result<chainlet_core::DifferentialForm> {
    chainlet_core::DifferentialForm::monomial(2, MultiIndex::full(2), vec![0, 0], 1.0)
}
