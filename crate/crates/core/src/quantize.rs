//! Quantization: convert cells, polyhedral chains, and differential forms
//! into element chains on dyadic grids, with the a-priori ♮₁ error bounds the
//! construction carries.

use crate::chains::{PolyChain, Simplex};
use crate::elements::{ElementChain, ElementTerm};
use crate::error::{ChainletError, Result};
use crate::exterior::{KVector, MultiIndex};
use crate::forms::DifferentialForm;
use crate::linalg::Mat;
use crate::norms::FormDictionary;
use crate::region::AxisBox;
use crate::scalar::{vec_dot, vec_norm, vec_scale, vec_sub, Scalar};

/// An axis-aligned k-cube in R^n: corner, axis set, edge length.
#[derive(Debug, Clone)]
pub struct AxisCube<S> {
    pub corner: Vec<S>,
    pub axes: MultiIndex,
    pub edge: S,
}

impl<S: Scalar> AxisCube<S> {
    pub fn unit(n: usize, k: usize) -> Self {
        AxisCube {
            corner: vec![S::zero(); n],
            axes: MultiIndex::from_rank(0, n, k),
            edge: S::one(),
        }
    }

    pub fn mass(&self) -> S {
        self.edge.powi(self.axes.len() as i32)
    }

    pub fn as_poly_chain(&self) -> Result<PolyChain<S>> {
        PolyChain::axis_cube(&self.corner, &self.axes, self.edge)
    }
}

/// What a quantization produced and the a-priori error it carries.
#[derive(Debug, Clone)]
pub struct QuantizationReport<S> {
    pub level: u32,
    pub element_count: usize,
    pub total_mass: S,
    /// A-priori ♮₁ distance bound between the covered source and the chain.
    pub bound: S,
    /// Source mass the dyadic scan failed to cover (zero for cubes).
    pub deficit: S,
    /// Observed |∫_E ω − ∫_source ω| per dictionary form, filled by
    /// [`verify_quantization`].
    pub residuals: Vec<(String, S)>,
}

/// Subdivide an axis-aligned k-cube into `2^{kj}` subcubes and place one
/// order-0 element at each midpoint with the subcube's k-volume and
/// direction. The ♮₁ bound is `2 · subedge · M = 2^{1−j} · edge · M`.
pub fn quantize_cube<S: Scalar>(
    cube: &AxisCube<S>,
    level: u32,
) -> Result<(ElementChain<S>, QuantizationReport<S>)> {
    let n = cube.corner.len();
    let k = cube.axes.len();
    let cells_per_axis = 1usize << level;
    let sub_edge = cube.edge / S::from_us(cells_per_axis);
    let kvec_scale = sub_edge.powi(k as i32);
    let direction = KVector::basis(n, &cube.axes);

    let mut terms = Vec::with_capacity(cells_per_axis.pow(k as u32));
    let mut idx = vec![0usize; k];
    loop {
        let mut point = cube.corner.clone();
        for (slot, &axis) in cube.axes.indices().iter().enumerate() {
            point[axis - 1] += sub_edge * (S::from_us(idx[slot]) + S::from_f(0.5));
        }
        terms.push(ElementTerm {
            coeff: S::one(),
            point,
            kvec: direction.scale(kvec_scale),
            dvecs: vec![],
        });
        // odometer over the k grid axes
        let mut slot = 0;
        loop {
            if slot == k {
                break;
            }
            idx[slot] += 1;
            if idx[slot] < cells_per_axis {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
        if slot == k {
            break;
        }
    }
    let count = terms.len();
    let chain = ElementChain::new(n, k, terms)?;
    let mass = cube.mass();
    // per-subcube monopole distance is 2·subedge·(subcube mass); summed over
    // the grid this is 2·subedge·M(cube), i.e. 2^{1−j}·edge·M
    let bound = S::from_f(2.0) * sub_edge * mass;
    Ok((
        chain,
        QuantizationReport {
            level,
            element_count: count,
            total_mass: mass,
            bound,
            deficit: S::zero(),
            residuals: vec![],
        },
    ))
}

/// Quantize a k-simplex at dyadic level j.
///
/// For full-dimensional simplices (k = n) the scan walks the absolute binary
/// lattice of edge `2^{−j}` over the bounding box, keeping cells whose
/// midpoint the simplex owns (strict interior, plus a facet-ownership rule
/// that assigns shared-facet midpoints to exactly one side). For k < n the
/// scan walks the parametrizing box of the simplex's own affine frame. The
/// covered-mass deficit is reported; the ♮₁ bound on the covered part is
/// `2^{1−j} M(σ)`-shaped as for cubes.
pub fn quantize_simplex<S: Scalar>(
    simplex: &Simplex<S>,
    level: u32,
) -> Result<(ElementChain<S>, QuantizationReport<S>)> {
    let n = simplex.n();
    let k = simplex.dim();
    if k == 0 {
        let chain = ElementChain::monopole(
            simplex.vertices()[0].clone(),
            KVector::scalar(n, S::from_f(simplex.orientation() as f64)),
        );
        return Ok((
            chain,
            QuantizationReport {
                level,
                element_count: 1,
                total_mass: S::one(),
                bound: S::zero(),
                deficit: S::zero(),
                residuals: vec![],
            },
        ));
    }
    if k == n {
        quantize_simplex_ambient(simplex, level)
    } else {
        quantize_simplex_parametric(simplex, level)
    }
}

fn quantize_simplex_ambient<S: Scalar>(
    simplex: &Simplex<S>,
    level: u32,
) -> Result<(ElementChain<S>, QuantizationReport<S>)> {
    let n = simplex.n();
    let h = S::from_f(0.5).powi(level as i32);
    let owner = SimplexOwnership::new(simplex);
    // bounding lattice range per axis
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for v in simplex.vertices() {
        for i in 0..n {
            let cell = (v[i] / h).to_f().floor() as i64;
            lo[i] = lo[i].min(cell - 1);
            hi[i] = hi[i].max(cell + 1);
        }
    }
    let direction_sign = if simplex.vec().coeff(&MultiIndex::full(n)) >= S::zero() {
        S::one()
    } else {
        -S::one()
    };
    let kvec = KVector::vol(n).scale(direction_sign * h.powi(n as i32));

    let mut terms = Vec::new();
    let mut idx = lo.clone();
    'outer: loop {
        let midpoint: Vec<S> = idx
            .iter()
            .map(|&c| (S::from_f(c as f64) + S::from_f(0.5)) * h)
            .collect();
        if owner.owns(&midpoint) {
            terms.push(ElementTerm {
                coeff: S::one(),
                point: midpoint,
                kvec: kvec.clone(),
                dvecs: vec![],
            });
        }
        let mut axis = 0;
        loop {
            if axis == n {
                break 'outer;
            }
            idx[axis] += 1;
            if idx[axis] <= hi[axis] {
                break;
            }
            idx[axis] = lo[axis];
            axis += 1;
        }
    }
    let count = terms.len();
    let covered = S::from_us(count) * h.powi(n as i32);
    let mass = simplex.mass();
    let chain = ElementChain::new(n, n, terms)?;
    Ok((
        chain,
        QuantizationReport {
            level,
            element_count: count,
            total_mass: covered,
            bound: S::from_f(2.0) * h * covered,
            deficit: (mass - covered).abs(),
            residuals: vec![],
        },
    ))
}

fn quantize_simplex_parametric<S: Scalar>(
    simplex: &Simplex<S>,
    level: u32,
) -> Result<(ElementChain<S>, QuantizationReport<S>)> {
    let n = simplex.n();
    let k = simplex.dim();
    let h = S::from_f(0.5).powi(level as i32);
    let cells = 1usize << level;
    let edges = simplex.edges();
    let kvec = KVector::from_span(n, &edges)?
        .scale(S::from_f(simplex.orientation() as f64) * h.powi(k as i32));
    if kvec.is_zero() {
        return Err(ChainletError::DegenerateSpan);
    }

    let mut terms = Vec::new();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let t: Vec<S> = idx
            .iter()
            .map(|&c| (S::from_us(c) + S::from_f(0.5)) * h)
            .collect();
        let total: S = t.iter().fold(S::zero(), |acc, &x| acc + x);
        if total < S::one() {
            let mut point = simplex.vertices()[0].clone();
            for (ti, e) in t.iter().zip(&edges) {
                for (p, &c) in point.iter_mut().zip(e) {
                    *p += *ti * c;
                }
            }
            terms.push(ElementTerm {
                coeff: S::one(),
                point,
                kvec: kvec.clone(),
                dvecs: vec![],
            });
        }
        let mut axis = 0;
        loop {
            if axis == k {
                break 'outer;
            }
            idx[axis] += 1;
            if idx[axis] < cells {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
    let count = terms.len();
    let cell_mass = kvec.mass();
    let covered = S::from_us(count) * cell_mass;
    let mass = simplex.mass();
    let chain = ElementChain::new(n, k, terms)?;
    Ok((
        chain,
        QuantizationReport {
            level,
            element_count: count,
            total_mass: covered,
            bound: S::from_f(2.0) * h * covered,
            deficit: (mass - covered).abs(),
            residuals: vec![],
        },
    ))
}

/// Quantize every simplex term of a polyhedral chain and combine.
pub fn quantize_chain<S: Scalar>(
    p: &PolyChain<S>,
    level: u32,
) -> Result<(ElementChain<S>, QuantizationReport<S>)> {
    let mut acc = ElementChain::empty(p.n(), p.dim());
    let mut count = 0;
    let mut mass = S::zero();
    let mut bound = S::zero();
    let mut deficit = S::zero();
    for (a, s) in p.terms() {
        let (e, rep) = quantize_simplex(s, level)?;
        acc = acc.add(&e.scale(*a));
        count += rep.element_count;
        mass += a.abs() * rep.total_mass;
        bound += a.abs() * rep.bound;
        deficit += a.abs() * rep.deficit;
    }
    Ok((
        acc,
        QuantizationReport {
            level,
            element_count: count,
            total_mass: mass,
            bound,
            deficit,
            residuals: vec![],
        },
    ))
}

/// Membership with deterministic facet ownership: a point on a shared facet
/// belongs to the simplex whose interior lies on the negative side of the
/// facet's canonical normal (computed from lexicographically sorted facet
/// vertices), so adjacent simplices own each boundary midpoint exactly once
/// and a standalone simplex tends to under-cover rather than over-cover.
struct SimplexOwnership<S> {
    /// (normal, offset, interior_side) per facet.
    facets: Vec<(Vec<S>, S, S)>,
}

impl<S: Scalar> SimplexOwnership<S> {
    fn new(simplex: &Simplex<S>) -> Self {
        let verts = simplex.vertices();
        let k = simplex.dim();
        let mut facets = Vec::with_capacity(k + 1);
        for drop in 0..=k {
            let mut fverts: Vec<Vec<S>> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, v)| v.clone())
                .collect();
            fverts.sort_by(|a, b| {
                a.iter()
                    .zip(b)
                    .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let normal = facet_normal(&fverts);
            let offset = vec_dot(&normal, &fverts[0]);
            let interior_side = vec_dot(&normal, &verts[drop]) - offset;
            facets.push((normal, offset, interior_side));
        }
        SimplexOwnership { facets }
    }

    fn owns(&self, q: &[S]) -> bool {
        for (normal, offset, interior_side) in &self.facets {
            let side = vec_dot(normal, q) - *offset;
            if side == S::zero() {
                if *interior_side >= S::zero() {
                    return false;
                }
            } else if side * *interior_side < S::zero() {
                return false;
            }
        }
        true
    }
}

/// Canonical normal of a (k−1)-facet in R^k by the generalized cross product
/// of its sorted edge vectors.
fn facet_normal<S: Scalar>(sorted_vertices: &[Vec<S>]) -> Vec<S> {
    let k = sorted_vertices[0].len();
    if k == 1 {
        return vec![S::one()];
    }
    let edges: Vec<Vec<S>> = sorted_vertices[1..]
        .iter()
        .map(|v| vec_sub(v, &sorted_vertices[0]))
        .collect();
    let mut normal = vec![S::zero(); k];
    for (i, entry) in normal.iter_mut().enumerate() {
        // minor: drop coordinate i from every edge vector
        let minor = Mat::from_fn(k - 1, k - 1, |r, c| {
            let skip = if c >= i { c + 1 } else { c };
            edges[r][skip]
        });
        let sign = if i % 2 == 0 { S::one() } else { -S::one() };
        *entry = sign * minor.det();
    }
    normal
}

/// Grid representation `Ch_j(ω)` of a form over a box: one element per grid
/// cell, with k-vector `cell volume · Vec(ω, midpoint)`. Pairings against
/// forms converge to `∫ ⟨η, ω⟩ dV` at the midpoint-rule rate.
pub fn ch_of_form<S: Scalar>(
    w: &DifferentialForm<S>,
    region: &AxisBox<S>,
    level: u32,
) -> Result<ElementChain<S>> {
    let n = region.n();
    if w.n() != n {
        return Err(ChainletError::DimensionMismatch {
            expected: n,
            got: w.n(),
        });
    }
    let cells = 1usize << level;
    let widths = region.widths();
    let steps: Vec<S> = widths.iter().map(|&wd| wd / S::from_us(cells)).collect();
    let cell_volume = steps.iter().fold(S::one(), |acc, &s| acc * s);

    let mut terms = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mid: Vec<S> = (0..n)
            .map(|i| region.lo[i] + steps[i] * (S::from_us(idx[i]) + S::from_f(0.5)))
            .collect();
        let kvec = w.riesz_vec(&mid).scale(cell_volume);
        if !kvec.is_zero() {
            terms.push(ElementTerm {
                coeff: S::one(),
                point: mid,
                kvec,
                dvecs: vec![],
            });
        }
        let mut axis = 0;
        loop {
            if axis == n {
                break 'outer;
            }
            idx[axis] += 1;
            if idx[axis] < cells {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
    ElementChain::new(n, w.degree(), terms)
}

/// The weighted cube `Q_ℓ(p, α)`: edge `2^{−ℓ}` in the oriented k-plane
/// spanned by `span`, centered at p, with coefficient `2^{kℓ} M(α)`, so that
/// `M(Q_ℓ) = M(α)` and `Vec(Q_ℓ) = α` at every level. This is the polyhedral
/// oracle for the monopole `α_p`.
pub fn element_monopole<S: Scalar>(
    p: &[S],
    span: &[Vec<S>],
    level: u32,
) -> Result<PolyChain<S>> {
    let n = p.len();
    let k = span.len();
    let alpha = KVector::from_span(n, span)?;
    let mass = alpha.mass();
    if mass == S::zero() {
        return Err(ChainletError::DegenerateSpan);
    }
    let frame = orthonormalize(span)?;
    let edge = S::from_f(0.5).powi(level as i32);
    // corner = p − (edge/2) Σ û_i
    let mut corner = p.to_vec();
    for u in &frame {
        for (c, &ui) in corner.iter_mut().zip(u) {
            *c -= edge * ui / S::from_f(2.0);
        }
    }
    let scaled: Vec<Vec<S>> = frame.iter().map(|u| vec_scale(u, edge)).collect();
    let coeff = mass / edge.powi(k as i32);
    Ok(PolyChain::frame_cube(&corner, &scaled)?.scale(coeff))
}

fn orthonormalize<S: Scalar>(span: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let mut frame: Vec<Vec<S>> = Vec::with_capacity(span.len());
    for v in span {
        let mut u = v.clone();
        for f in &frame {
            let proj = vec_dot(&u, f);
            for (ui, &fi) in u.iter_mut().zip(f) {
                *ui -= proj * fi;
            }
        }
        let norm = vec_norm(&u);
        if norm < S::from_f(1e-12) {
            return Err(ChainletError::DegenerateSpan);
        }
        frame.push(vec_scale(&u, S::one() / norm));
    }
    Ok(frame)
}

/// Fill a quantization report's residual column: `|∫_E ω − ∫_source ω|` per
/// dictionary form, and check each against `(bound + deficit) · |ω|_1`.
pub fn verify_quantization<S: Scalar>(
    source: &PolyChain<S>,
    e: &ElementChain<S>,
    report: &mut QuantizationReport<S>,
    dict: &FormDictionary<S>,
) -> Result<bool> {
    let mut all_ok = true;
    report.residuals.clear();
    for entry in dict.entries_for(e.grade()) {
        let lhs = e.integrate(&entry.form)?;
        let rhs = source.integrate(&entry.form)?;
        let residual = (lhs - rhs).abs();
        let allowance =
            (report.bound + report.deficit) * entry.norm_at(1) + S::from_f(1e-10);
        if residual > allowance {
            all_ok = false;
        }
        report.residuals.push((entry.id.clone(), residual));
    }
    Ok(all_ok)
}
