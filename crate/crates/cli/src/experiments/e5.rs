//! E5: Cauchy-sequence diagnostics in the natural norms. Upper/lower brackets
//! for the shrinking weighted squares and their boundaries, staircases
//! against the diagonal, and truncated Weierstrass step-graph approximants;
//! bracket sanity and the boundary-bound ordering are the pass conditions,
//! while the Weierstrass rows are reported without a pass/fail bound.

use super::ExperimentSpec;
use crate::table::{elapsed_secs, ExperimentTable, ResultRow};
use chainlet_core::chains::{DifferenceCell, DifferenceChain};
use chainlet_core::norms::{natural_lower, natural_upper, ChainRef};
use chainlet_core::region::AxisBox;
use chainlet_core::{DecompositionCert, FormDictionary, MultiIndex, PolyChain, Result, Simplex};

fn dict_all() -> Result<FormDictionary> {
    FormDictionary::monomials_all_grades(2, 2, &AxisBox::centered(2, 2.0), 3)
}

/// `P_k = 2^{2k} σ_k` with σ_k the centered square of edge `2^{-k}`.
fn weighted_square(k: i32) -> Result<PolyChain> {
    let h = 0.5f64.powi(k);
    Ok(
        PolyChain::axis_cube(&[-h / 2.0, -h / 2.0], &MultiIndex::full(2), h)?
            .scale(4.0f64.powi(k)),
    )
}

/// `P_k − P_{k+1}` with its order-1 difference certificate: the four
/// quarters of σ_k each translate onto the centered σ_{k+1}.
fn squares_step(k: i32) -> Result<(PolyChain, DecompositionCert)> {
    let h = 0.5f64.powi(k + 1);
    let weight = 4.0f64.powi(k);
    let mut cells = Vec::new();
    for (cx, cy) in [(-h, -h), (0.0, -h), (-h, 0.0), (0.0, 0.0)] {
        let sub = PolyChain::axis_cube(&[cx, cy], &MultiIndex::full(2), h)?;
        let v = vec![-h / 2.0 - cx, -h / 2.0 - cy];
        cells.push((weight, DifferenceCell::new(sub, vec![v])));
    }
    let diff = weighted_square(k)?.sub(&weighted_square(k + 1)?);
    let cert = DecompositionCert::from_diffs(vec![
        DifferenceChain::empty(),
        DifferenceChain::new(cells),
    ]);
    Ok((diff, cert))
}

fn staircase(steps: usize) -> Result<(PolyChain, DecompositionCert)> {
    let h = 1.0 / steps as f64;
    let mut segments = Vec::with_capacity(2 * steps);
    let mut tris = Vec::with_capacity(steps);
    for i in 0..steps {
        let (x, y) = (i as f64 * h, i as f64 * h);
        segments.push((
            1.0,
            Simplex::positively_oriented(vec![vec![x, y], vec![x + h, y]])?,
        ));
        segments.push((
            1.0,
            Simplex::positively_oriented(vec![vec![x + h, y], vec![x + h, y + h]])?,
        ));
        tris.push((
            1.0,
            Simplex::positively_oriented(vec![
                vec![x, y],
                vec![x + h, y],
                vec![x + h, y + h],
            ])?,
        ));
    }
    let chain = PolyChain::new(2, 1, segments)?;
    let triangles = PolyChain::new(2, 2, tris)?;
    let diagonal = PolyChain::from_simplex(Simplex::positively_oriented(vec![
        vec![0.0, 0.0],
        vec![1.0, 1.0],
    ])?);
    let diff = chain.sub(&diagonal);
    let cert =
        DecompositionCert::boundary_of(triangles.clone(), DecompositionCert::trivial(&triangles));
    Ok((diff, cert))
}

/// Partial sums of the Weierstrass-type series `Σ 2^{-k} sin(2^{3k} x)`.
fn weierstrass_partial(m: u32, x: f64) -> f64 {
    (1..=m)
        .map(|k| 0.5f64.powi(k as i32) * (2.0f64.powi(3 * k as i32) * x).sin())
        .sum()
}

/// The step graph of the m-th partial sum on `2^{2m+3}` uniform steps
/// (horizontal segments only, as in the subgraph construction).
fn weierstrass_step_graph(m: u32, resolution: usize) -> Result<PolyChain> {
    let w = 1.0 / resolution as f64;
    let mut segments = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let x = i as f64 * w;
        let y = weierstrass_partial(m, x);
        segments.push((
            1.0,
            Simplex::positively_oriented(vec![vec![x, y], vec![x + w, y]])?,
        ));
    }
    PolyChain::new(2, 1, segments)
}

/// Order-1 certificate for the difference of consecutive step graphs on a
/// common refinement.
fn weierstrass_step_cert(m: u32) -> Result<(PolyChain, DecompositionCert)> {
    let fine = 1usize << (2 * (m + 1) + 3);
    let coarse_graph = weierstrass_step_graph(m, fine)?;
    let fine_graph = weierstrass_step_graph(m + 1, fine)?;
    let w = 1.0 / fine as f64;
    let mut cells = Vec::new();
    for i in 0..fine {
        let x = i as f64 * w;
        let y0 = weierstrass_partial(m, x);
        let y1 = weierstrass_partial(m + 1, x);
        if y0 == y1 {
            continue;
        }
        let seg = PolyChain::from_simplex(Simplex::positively_oriented(vec![
            vec![x, y0],
            vec![x + w, y0],
        ])?);
        cells.push((1.0, DifferenceCell::new(seg, vec![vec![0.0, y1 - y0]])));
    }
    let diff = coarse_graph.sub(&fine_graph);
    let cert = DecompositionCert::from_diffs(vec![
        DifferenceChain::empty(),
        DifferenceChain::new(cells),
    ]);
    Ok((diff, cert))
}

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    let mut table = ExperimentTable::new("E5", spec.seed);
    let dict = dict_all()?;

    // shrinking squares: |P_k − P_{k+1}|^{♮1} brackets decay geometrically
    let mut prev_upper = f64::INFINITY;
    let kmax = spec.levels.1.clamp(2, 6) as i32;
    for k in 0..kmax {
        let start = std::time::Instant::now();
        let (diff, cert) = squares_step(k)?;
        let upper = natural_upper(&diff, &cert, 1, &dict)?;
        let (lower, _) = natural_lower(&ChainRef::Poly(&diff), 1, &dict)?;
        table.push_checked(
            ResultRow::new(k as i64, upper, lower, None, elapsed_secs(start)),
            lower <= upper + 1e-12,
        );
        table.require(
            upper <= prev_upper * 0.55,
            &format!("squares upper at k={} did not decay geometrically", k),
        );
        prev_upper = upper;

        // boundary-bound ordering: |∂Δ|^{♮2} ≤ |Δ|^{♮1} via the transported cert
        let start = std::time::Instant::now();
        let boundary = diff.boundary();
        let transported = DecompositionCert::boundary_of(diff.clone(), cert);
        let upper2 = natural_upper(&boundary, &transported, 2, &dict)?;
        table.push_checked(
            ResultRow::new(k as i64, upper2, upper, None, elapsed_secs(start)),
            upper2 <= upper + 1e-12,
        );
    }

    // staircases: upper ≤ 1/(2n), lower bracket sane and shrinking
    let mut prev_lower = f64::INFINITY;
    for steps in [2usize, 4, 8, 16, 32] {
        let start = std::time::Instant::now();
        let (diff, cert) = staircase(steps)?;
        let upper = natural_upper(&diff, &cert, 1, &dict)?;
        let (lower, _) = natural_lower(&ChainRef::Poly(&diff), 1, &dict)?;
        table.push_checked(
            ResultRow::new(
                steps as i64,
                upper,
                lower,
                Some(0.5 / steps as f64 + 1e-12),
                elapsed_secs(start),
            ),
            lower <= upper + 1e-12,
        );
        table.require(lower <= prev_lower + 1e-12, "staircase lower bound grew");
        prev_lower = lower;
    }

    // Weierstrass partial sums: brackets only, no pass/fail bound (the
    // theory supplies no convergence rate here)
    for m in 1..=3u32 {
        let start = std::time::Instant::now();
        let (diff, cert) = weierstrass_step_cert(m)?;
        let upper = natural_upper(&diff, &cert, 1, &dict)?;
        let (lower, _) = natural_lower(&ChainRef::Poly(&diff), 1, &dict)?;
        table.push_checked(
            ResultRow::new(m as i64, upper, lower, None, elapsed_secs(start)),
            lower <= upper + 1e-12,
        );
        table.note(format!("weierstrass m={} bracket [{:.3e}, {:.3e}]", m, lower, upper));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentId;

    #[test]
    fn bracket_diagnostics_pass() {
        let spec = ExperimentSpec::new(ExperimentId::E5);
        let table = run(&spec).unwrap();
        assert!(table.pass, "notes: {:?}", table.notes);
    }

    #[test]
    fn weierstrass_upper_brackets_shrink() {
        let dict = dict_all().unwrap();
        let mut prev = f64::INFINITY;
        for m in 1..=2 {
            let (diff, cert) = weierstrass_step_cert(m).unwrap();
            let upper = natural_upper(&diff, &cert, 1, &dict).unwrap();
            assert!(upper < prev);
            prev = upper;
        }
    }
}
