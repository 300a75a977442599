//! Formal real-weighted sums of oriented affine k-simplices: boundary, mass,
//! Vec, translation, axis-cube construction, and integration of forms (exact
//! for polynomial coefficients, conical-product quadrature otherwise).

use crate::chains::quadrature::simplex_quadrature;
use crate::chains::simplex::{factorial, Simplex};
use crate::error::{ChainletError, Result};
use crate::exterior::{KVector, MultiIndex};
use crate::forms::{DifferentialForm, SmoothMap};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A polyhedral k-chain `P = Σ a_i σ_i`.
///
/// Canonical form merges terms whose vertex sets agree up to permutation (odd
/// permutations flip the sign), drops zero coefficients and exactly
/// degenerate simplices. Mass assumes the terms are pairwise non-overlapping,
/// which is the caller's obligation; every constructor in this crate builds
/// non-overlapping representatives.
#[derive(Debug, Clone)]
pub struct PolyChain<S> {
    n: usize,
    k: usize,
    terms: Vec<(S, Simplex<S>)>,
}

impl<S: Scalar> PolyChain<S> {
    pub fn empty(n: usize, k: usize) -> Self {
        PolyChain {
            n,
            k,
            terms: vec![],
        }
    }

    pub fn new(n: usize, k: usize, terms: Vec<(S, Simplex<S>)>) -> Result<Self> {
        for (_, s) in &terms {
            if s.n() != n {
                return Err(ChainletError::DimensionMismatch {
                    expected: n,
                    got: s.n(),
                });
            }
            if s.dim() != k {
                return Err(ChainletError::GradeMismatch {
                    expected: k,
                    got: s.dim(),
                });
            }
        }
        Ok(PolyChain { n, k, terms }.canonical())
    }

    pub fn from_simplex(s: Simplex<S>) -> Self {
        let (n, k) = (s.n(), s.dim());
        PolyChain {
            n,
            k,
            terms: vec![(S::one(), s)],
        }
    }

    /// Construction restricted to the integer coefficient group `G = Z`.
    pub fn new_integer(n: usize, k: usize, terms: Vec<(S, Simplex<S>)>) -> Result<Self> {
        for (a, _) in &terms {
            if a.fract() != S::zero() {
                return Err(ChainletError::InvalidInput(format!(
                    "coefficient {} is not an integer",
                    a
                )));
            }
        }
        PolyChain::new(n, k, terms)
    }

    /// An axis-aligned k-cube as its Kuhn triangulation into k! simplices,
    /// positively oriented along `e^{axes}`.
    pub fn axis_cube(corner: &[S], axes: &MultiIndex, edge: S) -> Result<Self> {
        let n = corner.len();
        let frame: Vec<Vec<S>> = axes
            .indices()
            .iter()
            .map(|&axis| {
                let mut v = vec![S::zero(); n];
                v[axis - 1] = edge;
                v
            })
            .collect();
        PolyChain::frame_cube(corner, &frame)
    }

    /// The parallelepiped spanned by `frame` at `corner`, Kuhn-triangulated
    /// into k! simplices whose net k-vector is `frame_1 ∧ ··· ∧ frame_k`.
    pub fn frame_cube(corner: &[S], frame: &[Vec<S>]) -> Result<Self> {
        let n = corner.len();
        let k = frame.len();
        if k == 0 {
            return Ok(PolyChain {
                n,
                k: 0,
                terms: vec![(S::one(), Simplex::point(corner.to_vec()))],
            });
        }
        let mut terms = Vec::with_capacity(factorial(k));
        for (perm, parity) in permutations_with_parity(k) {
            let mut verts = Vec::with_capacity(k + 1);
            let mut v = corner.to_vec();
            verts.push(v.clone());
            for &slot in &perm {
                for (coord, step) in v.iter_mut().zip(&frame[slot]) {
                    *coord += *step;
                }
                verts.push(v.clone());
            }
            let coeff = S::from_f(parity as f64);
            terms.push((coeff, Simplex::positively_oriented(verts)?));
        }
        PolyChain::new(n, k, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(S, Simplex<S>)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PolyChain<S>) -> PolyChain<S> {
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PolyChain {
            n: self.n,
            k: self.k,
            terms,
        }
        .canonical()
    }

    pub fn scale(&self, c: S) -> PolyChain<S> {
        if c == S::zero() {
            return PolyChain::empty(self.n, self.k);
        }
        PolyChain {
            n: self.n,
            k: self.k,
            terms: self.terms.iter().map(|(a, s)| (*a * c, s.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &PolyChain<S>) -> PolyChain<S> {
        self.add(&other.scale(-S::one()))
    }

    pub fn translate(&self, v: &[S]) -> PolyChain<S> {
        PolyChain {
            n: self.n,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(a, s)| (*a, s.translate(v)))
                .collect(),
        }
    }

    /// Canonical form: orientation and sort-parity folded into coefficients,
    /// identical vertex sets merged (sort-then-scan), zero and exactly
    /// degenerate terms dropped.
    pub fn canonical(self) -> PolyChain<S> {
        let mut keyed: Vec<(Vec<Vec<S>>, S)> = self
            .terms
            .into_iter()
            .filter_map(|(a, s)| {
                if a == S::zero() {
                    return None;
                }
                let (sign, verts) = s.sorted_with_sign();
                if verts.windows(2).any(|w| w[0] == w[1]) {
                    // repeated vertex: the zero chain for every purpose here
                    return None;
                }
                Some((verts, a * S::from_f(sign as f64)))
            })
            .collect();
        keyed.sort_by(|(a, _), (b, _)| cmp_vertex_lists(a, b));
        let mut terms: Vec<(S, Simplex<S>)> = Vec::with_capacity(keyed.len());
        let mut iter = keyed.into_iter();
        let mut current = iter.next();
        while let Some((verts, mut coeff)) = current.take() {
            for next in iter.by_ref() {
                if next.0 == verts {
                    coeff += next.1;
                } else {
                    current = Some(next);
                    break;
                }
            }
            if coeff != S::zero() {
                terms.push((
                    coeff,
                    Simplex::positively_oriented(verts).expect("canonical vertices valid"),
                ));
            }
        }
        PolyChain {
            n: self.n,
            k: self.k,
            terms,
        }
    }

    /// Alternating-face boundary, extended linearly; the empty chain for k = 0.
    pub fn boundary(&self) -> PolyChain<S> {
        if self.k == 0 {
            return PolyChain::empty(self.n, 0);
        }
        let mut terms = Vec::new();
        for (a, s) in &self.terms {
            for (sign, face) in s.boundary_faces() {
                terms.push((*a * S::from_f(sign as f64), face));
            }
        }
        PolyChain {
            n: self.n,
            k: self.k - 1,
            terms,
        }
        .canonical()
    }

    /// `M(P) = Σ |a_i| M(σ_i)` over the (assumed non-overlapping) terms.
    pub fn mass(&self) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (a, s)| acc + a.abs() * s.mass())
    }

    /// `Vec(P) = Σ a_i Vec(σ_i)`.
    pub fn vec(&self) -> KVector<S> {
        let mut acc = KVector::zero(self.n, self.k);
        for (a, s) in &self.terms {
            acc = acc.add(&s.vec().scale(*a));
        }
        acc
    }

    /// All vertices of the support.
    pub fn support_points(&self) -> Vec<&Vec<S>> {
        self.terms
            .iter()
            .flat_map(|(_, s)| s.vertices().iter())
            .collect()
    }

    /// Exact integration for polynomial forms; conical-product quadrature with
    /// 8 Gauss points per axis otherwise.
    pub fn integrate(&self, w: &DifferentialForm<S>) -> Result<S> {
        Ok(self.integrate_with_quadrature(w, 8)?.0)
    }

    /// Integration with an explicit quadrature resolution; the second return
    /// is a warning when the rule cannot be exact for a polynomial integrand.
    pub fn integrate_with_quadrature(
        &self,
        w: &DifferentialForm<S>,
        points_per_axis: usize,
    ) -> Result<(S, Option<String>)> {
        if self.is_empty() {
            return Ok((S::zero(), None));
        }
        if w.degree() != self.k {
            return Err(ChainletError::GradeMismatch {
                expected: self.k,
                got: w.degree(),
            });
        }
        if w.n() != self.n {
            return Err(ChainletError::DimensionMismatch {
                expected: self.n,
                got: w.n(),
            });
        }
        let mut acc = S::zero();
        let mut warning = None;
        for (a, s) in &self.terms {
            let (val, warn) = integrate_simplex(s, w, points_per_axis)?;
            if warning.is_none() {
                warning = warn;
            }
            acc += *a * val;
        }
        Ok((acc, warning))
    }
}

fn cmp_vertex_lists<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> std::cmp::Ordering {
    for (va, vb) in a.iter().zip(b) {
        for (x, y) in va.iter().zip(vb) {
            match x.partial_cmp(y) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(other) => return other,
            }
        }
    }
    a.len().cmp(&b.len())
}

/// Permutations of `0..k` with their parity (+1 even, −1 odd), parity read
/// off the inversion count.
fn permutations_with_parity(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::with_capacity(factorial(k));
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn recurse(
        k: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i8)>,
    ) {
        if current.len() == k {
            let mut inversions = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if current[i] > current[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((current.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                current.push(x);
                recurse(k, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    recurse(k, &mut current, &mut used, &mut out);
    out
}

/// Integral of `w` over one simplex: pull back along the affine
/// parametrization from the standard simplex and either integrate monomials
/// in closed form or apply the quadrature rule.
fn integrate_simplex<S: Scalar>(
    s: &Simplex<S>,
    w: &DifferentialForm<S>,
    points_per_axis: usize,
) -> Result<(S, Option<String>)> {
    let k = s.dim();
    let orient = S::from_f(s.orientation() as f64);
    if k == 0 {
        let val = w.eval(&s.vertices()[0], &KVector::scalar(s.n(), S::one()))?;
        return Ok((orient * val, None));
    }
    let edges = s.edges();
    let a = Mat::from_fn(s.n(), k, |i, j| edges[j][i]);
    let phi = SmoothMap::affine(a, s.vertices()[0].clone());
    let pulled = w.pullback(&phi)?;
    let full = MultiIndex::full(k);

    if let Some(map) = pulled.polynomial_terms() {
        let mut acc = S::zero();
        if let Some(poly) = map.get(&full) {
            for (exps, &c) in poly.terms() {
                acc += c * monomial_simplex_integral::<S>(k, exps);
            }
        }
        return Ok((orient * acc, None));
    }

    let rule = simplex_quadrature::<S>(k, points_per_axis);
    let mut acc = S::zero();
    for (t, weight) in &rule {
        acc += *weight * pulled.coeff(t, &full);
    }
    let warning = if w.is_polynomial() {
        // the pullback stayed black-box (non-affine map); GL with q points is
        // exact to axis degree 2q−1, which we cannot verify here
        Some("quadrature used for a polynomial form under a non-affine map".to_string())
    } else {
        None
    };
    Ok((orient * acc, warning))
}

/// `∫_{Δ_k} Π t_i^{a_i} dt = Π a_i! / (k + Σ a_i)!` by the Dirichlet formula.
fn monomial_simplex_integral<S: Scalar>(k: usize, exps: &[u32]) -> S {
    let total: u32 = exps.iter().sum();
    let mut num = 1.0_f64;
    for &e in exps {
        num *= factorial(e as usize) as f64;
    }
    let den = factorial(k + total as usize) as f64;
    S::from_f(num / den)
}
