//! Differential k-forms as covector fields: a coefficient function `a_H(p)`
//! per basis covector. The polynomial flavor supports exact exterior
//! derivative, star, wedge, directional derivative and affine pullback; the
//! black-box flavor differentiates by central finite differences up to its
//! declared order.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{ChainletError, Result};
use crate::exterior::{KVector, MultiIndex};
use crate::forms::poly::Poly;
use crate::forms::smooth_map::SmoothMap;
use crate::scalar::Scalar;

type CoeffFn<S> = Arc<dyn Fn(&[S], &MultiIndex) -> S + Send + Sync>;

#[derive(Clone)]
pub enum FormFlavor<S> {
    /// Sparse polynomial coefficient per multi-index; derivatives of any order
    /// are exact.
    Polynomial(BTreeMap<MultiIndex, Poly<S>>),
    /// Coefficient evaluator with a declared derivative order and a
    /// finite-difference base step.
    BlackBox {
        order: usize,
        coeff: CoeffFn<S>,
        step: S,
    },
}

/// A differential k-form on R^n.
#[derive(Clone)]
pub struct DifferentialForm<S> {
    n: usize,
    k: usize,
    flavor: FormFlavor<S>,
}

/// Default finite-difference base step for black-box coefficients.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

impl<S: Scalar> DifferentialForm<S> {
    pub fn zero(n: usize, k: usize) -> Self {
        DifferentialForm {
            n,
            k,
            flavor: FormFlavor::Polynomial(BTreeMap::new()),
        }
    }

    /// Polynomial form from `(H, coefficient)` pairs.
    pub fn polynomial(n: usize, k: usize, terms: Vec<(MultiIndex, Poly<S>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (h, p) in terms {
            if h.len() != k {
                return Err(ChainletError::GradeMismatch {
                    expected: k,
                    got: h.len(),
                });
            }
            if p.n() != n {
                return Err(ChainletError::DimensionMismatch {
                    expected: n,
                    got: p.n(),
                });
            }
            if !p.is_zero() {
                let entry = map.entry(h).or_insert_with(|| Poly::zero(n));
                *entry = entry.add(&p);
            }
        }
        map.retain(|_, p: &mut Poly<S>| !p.is_zero());
        Ok(DifferentialForm {
            n,
            k,
            flavor: FormFlavor::Polynomial(map),
        })
    }

    /// Constant form with the covector read off a fixed k-vector.
    pub fn constant(n: usize, covector: &KVector<S>) -> Self {
        let terms = covector
            .terms()
            .into_iter()
            .map(|(h, c)| (h, Poly::constant(n, c)))
            .collect();
        DifferentialForm::polynomial(n, covector.grade(), terms).expect("shapes agree")
    }

    /// A single monomial-coefficient form `c · x^exps dx^H`.
    pub fn monomial(n: usize, h: MultiIndex, exps: Vec<u32>, c: S) -> Result<Self> {
        let k = h.len();
        DifferentialForm::polynomial(n, k, vec![(h, Poly::monomial(n, exps, c))])
    }

    /// A 0-form (function) from a polynomial.
    pub fn function(p: Poly<S>) -> Self {
        let n = p.n();
        DifferentialForm::polynomial(n, 0, vec![(MultiIndex::empty(), p)]).expect("grade 0")
    }

    pub fn black_box(
        n: usize,
        k: usize,
        order: usize,
        coeff: impl Fn(&[S], &MultiIndex) -> S + Send + Sync + 'static,
    ) -> Self {
        DifferentialForm {
            n,
            k,
            flavor: FormFlavor::BlackBox {
                order,
                coeff: Arc::new(coeff),
                step: S::from_f(DEFAULT_FD_STEP),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Highest derivative order available; the polynomial flavor is exact at
    /// every order.
    pub fn order(&self) -> usize {
        match &self.flavor {
            FormFlavor::Polynomial(_) => usize::MAX,
            FormFlavor::BlackBox { order, .. } => *order,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.flavor, FormFlavor::Polynomial(_))
    }

    pub fn polynomial_terms(&self) -> Option<&BTreeMap<MultiIndex, Poly<S>>> {
        match &self.flavor {
            FormFlavor::Polynomial(map) => Some(map),
            FormFlavor::BlackBox { .. } => None,
        }
    }

    /// Coefficient accessor `a_H(p)`.
    pub fn coeff(&self, p: &[S], h: &MultiIndex) -> S {
        debug_assert_eq!(h.len(), self.k);
        match &self.flavor {
            FormFlavor::Polynomial(map) => map.get(h).map(|poly| poly.eval(p)).unwrap_or_else(S::zero),
            FormFlavor::BlackBox { coeff, .. } => coeff(p, h),
        }
    }

    /// `ω(p, α) = Σ_H a_H(p) · α_H`, linear in α.
    pub fn eval(&self, p: &[S], a: &KVector<S>) -> Result<S> {
        if a.grade() != self.k {
            return Err(ChainletError::GradeMismatch {
                expected: self.k,
                got: a.grade(),
            });
        }
        let mut acc = S::zero();
        for (h, c) in a.terms() {
            acc += self.coeff(p, &h) * c;
        }
        Ok(acc)
    }

    /// Riesz k-vector `Vec(ω, p)`: by orthonormality of `{e^H}` its
    /// coefficients are exactly `a_H(p)`.
    pub fn riesz_vec(&self, p: &[S]) -> KVector<S> {
        let mut v = KVector::zero(self.n, self.k);
        for h in MultiIndex::all(self.n, self.k) {
            let c = self.coeff(p, &h);
            if c != S::zero() {
                v.set_coeff(&h, c);
            }
        }
        v
    }

    /// Exterior derivative `dω = Σ_H Σ_i ∂_i a_H dx^i ∧ dx^H`.
    pub fn d(&self) -> Result<DifferentialForm<S>> {
        if self.k >= self.n {
            return Ok(DifferentialForm::zero(self.n, self.n.min(self.k + 1)));
        }
        match &self.flavor {
            FormFlavor::Polynomial(map) => {
                let mut terms: Vec<(MultiIndex, Poly<S>)> = Vec::new();
                for (h, a) in map {
                    for i in 1..=self.n {
                        if h.contains(i) {
                            continue;
                        }
                        let axis = MultiIndex::new(vec![i], self.n).expect("in range");
                        let (sign, merged) = axis.merge(h).expect("disjoint");
                        let da = a.partial(i);
                        let signed = if sign > 0 { da } else { da.scale(-S::one()) };
                        terms.push((merged, signed));
                    }
                }
                DifferentialForm::polynomial(self.n, self.k + 1, terms)
            }
            FormFlavor::BlackBox { order, coeff, step } => {
                if *order < 1 {
                    return Err(ChainletError::InsufficientOrder {
                        available: *order,
                        needed: 1,
                    });
                }
                let n = self.n;
                let coeff = coeff.clone();
                let step = *step;
                let k = self.k;
                let new_coeff = move |p: &[S], hp: &MultiIndex| -> S {
                    debug_assert_eq!(hp.len(), k + 1);
                    let mut acc = S::zero();
                    for (pos, &i) in hp.indices().iter().enumerate() {
                        // sign of dx^i ∧ dx^{H'∖i} relative to dx^{H'}
                        let sign = if pos % 2 == 0 { S::one() } else { -S::one() };
                        let rest = hp.remove_at(pos);
                        let h = central_step(p, i, step);
                        let hi = coeff(&h.0, &rest);
                        let lo = coeff(&h.1, &rest);
                        acc += sign * (hi - lo) / h.2;
                    }
                    acc
                };
                Ok(DifferentialForm {
                    n,
                    k: k + 1,
                    flavor: FormFlavor::BlackBox {
                        order: order - 1,
                        coeff: Arc::new(new_coeff),
                        step,
                    },
                })
            }
        }
    }

    /// Hodge star applied coefficientwise: `Vec(★ω, p) = ★Vec(ω, p)`.
    ///
    /// With this convention `∫_{★A} ★ω = ∫_A ω` holds exactly on element
    /// chains and `★★ω = (-1)^{k(n-k)} ω`.
    pub fn star(&self) -> DifferentialForm<S> {
        let n = self.n;
        match &self.flavor {
            FormFlavor::Polynomial(map) => {
                let mut terms = Vec::new();
                for (h, a) in map {
                    let hc = h.complement(n);
                    let (sign, _) = h.merge(&hc).expect("complement disjoint");
                    let signed = if sign > 0 { a.clone() } else { a.scale(-S::one()) };
                    terms.push((hc, signed));
                }
                DifferentialForm::polynomial(n, n - self.k, terms).expect("complement grade")
            }
            FormFlavor::BlackBox { order, coeff, step } => {
                let coeff = coeff.clone();
                let new_coeff = move |p: &[S], g: &MultiIndex| -> S {
                    let h = g.complement(n);
                    let (sign, _) = h.merge(g).expect("complement disjoint");
                    let s = if sign > 0 { S::one() } else { -S::one() };
                    s * coeff(p, &h)
                };
                DifferentialForm {
                    n,
                    k: n - self.k,
                    flavor: FormFlavor::BlackBox {
                        order: *order,
                        coeff: Arc::new(new_coeff),
                        step: *step,
                    },
                }
            }
        }
    }

    /// Pointwise wedge of covector values.
    pub fn wedge(&self, other: &DifferentialForm<S>) -> DifferentialForm<S> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let grade = (self.k + other.k).min(n + 1);
        if self.k + other.k > n {
            return DifferentialForm::zero(n, n);
        }
        match (&self.flavor, &other.flavor) {
            (FormFlavor::Polynomial(ma), FormFlavor::Polynomial(mb)) => {
                let mut terms = Vec::new();
                for (h, a) in ma {
                    for (l, b) in mb {
                        if let Some((sign, merged)) = h.merge(l) {
                            let prod = a.mul(b);
                            let signed = if sign > 0 { prod } else { prod.scale(-S::one()) };
                            terms.push((merged, signed));
                        }
                    }
                }
                DifferentialForm::polynomial(n, grade, terms).expect("grades agree")
            }
            _ => {
                let fa = self.clone();
                let fb = other.clone();
                let j = self.k;
                let order = self.order().min(other.order());
                let step = S::from_f(DEFAULT_FD_STEP);
                let new_coeff = move |p: &[S], m: &MultiIndex| -> S {
                    // sum over splittings of M into (H, L) with |H| = j
                    let mut acc = S::zero();
                    for h in sub_multi_indices(m, j) {
                        let l_indices: Vec<usize> = m
                            .indices()
                            .iter()
                            .copied()
                            .filter(|i| !h.contains(*i))
                            .collect();
                        let l = MultiIndex::new(l_indices, fa.n).expect("subset");
                        let (sign, _) = h.merge(&l).expect("disjoint");
                        let s = if sign > 0 { S::one() } else { -S::one() };
                        acc += s * fa.coeff(p, &h) * fb.coeff(p, &l);
                    }
                    acc
                };
                DifferentialForm {
                    n,
                    k: grade,
                    flavor: FormFlavor::BlackBox {
                        order,
                        coeff: Arc::new(new_coeff),
                        step,
                    },
                }
            }
        }
    }

    /// Directional derivative `∇_v ω`, applied coefficientwise.
    pub fn dir_deriv(&self, v: &[S]) -> Result<DifferentialForm<S>> {
        debug_assert_eq!(v.len(), self.n);
        match &self.flavor {
            FormFlavor::Polynomial(map) => {
                let terms = map
                    .iter()
                    .map(|(h, a)| (h.clone(), a.dir_deriv(v)))
                    .collect();
                DifferentialForm::polynomial(self.n, self.k, terms)
            }
            FormFlavor::BlackBox { order, coeff, step } => {
                if *order < 1 {
                    return Err(ChainletError::InsufficientOrder {
                        available: *order,
                        needed: 1,
                    });
                }
                let coeff = coeff.clone();
                let v = v.to_vec();
                let step = *step;
                let new_coeff = move |p: &[S], h: &MultiIndex| -> S {
                    let scale = p
                        .iter()
                        .fold(S::one(), |acc, &x| acc.max(x.abs()));
                    let hstep = step * scale;
                    let hi: Vec<S> = p.iter().zip(&v).map(|(&x, &vi)| x + hstep * vi).collect();
                    let lo: Vec<S> = p.iter().zip(&v).map(|(&x, &vi)| x - hstep * vi).collect();
                    (coeff(&hi, h) - coeff(&lo, h)) / (hstep + hstep)
                };
                Ok(DifferentialForm {
                    n: self.n,
                    k: self.k,
                    flavor: FormFlavor::BlackBox {
                        order: order - 1,
                        coeff: Arc::new(new_coeff),
                        step,
                    },
                })
            }
        }
    }

    /// Iterated directional derivative along a list of vectors.
    pub fn dir_deriv_many(&self, vs: &[Vec<S>]) -> Result<DifferentialForm<S>> {
        let mut w = self.clone();
        for v in vs {
            w = w.dir_deriv(v)?;
        }
        Ok(w)
    }

    /// Pullback `f*ω(p, α) = ω(f(p), Λ^k(Df_p)(α))`. Exact polynomial result
    /// for affine `f` and polynomial `ω`; otherwise an evaluation-only
    /// black-box form of order 0.
    pub fn pullback(&self, f: &SmoothMap<S>) -> Result<DifferentialForm<S>> {
        if self.n != f.n_out() {
            return Err(ChainletError::DimensionMismatch {
                expected: f.n_out(),
                got: self.n,
            });
        }
        let n_src = f.n_in();
        if self.k > n_src {
            return Err(ChainletError::GradeMismatch {
                expected: n_src,
                got: self.k,
            });
        }
        if let (Some((a, b)), FormFlavor::Polynomial(map)) = (f.affine_parts(), &self.flavor) {
            let mut terms: Vec<(MultiIndex, Poly<S>)> = Vec::new();
            for l in MultiIndex::all(n_src, self.k) {
                // Λ^k(A) e^L expanded over target multi-indices
                let img = crate::exterior::pushforward_by_matrix(a, &KVector::basis(n_src, &l));
                let mut acc = Poly::zero(n_src);
                for (h, minor) in img.terms() {
                    if let Some(ah) = map.get(&h) {
                        acc = acc.add(&ah.compose_affine(a, b).scale(minor));
                    }
                }
                if !acc.is_zero() {
                    terms.push((l, acc));
                }
            }
            return DifferentialForm::polynomial(n_src, self.k, terms);
        }
        let w = self.clone();
        let f = f.clone();
        let new_coeff = move |p: &[S], l: &MultiIndex| -> S {
            let q = f.eval(p);
            let img = f.pushforward_kvector(p, &KVector::basis(f.n_in(), l));
            w.eval(&q, &img).expect("grades agree")
        };
        Ok(DifferentialForm {
            n: n_src,
            k: self.k,
            flavor: FormFlavor::BlackBox {
                order: 0,
                coeff: Arc::new(new_coeff),
                step: S::from_f(DEFAULT_FD_STEP),
            },
        })
    }

    /// Structurally zero: a polynomial flavor with no terms. Such forms act
    /// as the zero of any grade in sums, so grade bookkeeping at the top of
    /// the complex (`d` of an n-form) stays painless.
    pub fn is_structurally_zero(&self) -> bool {
        matches!(&self.flavor, FormFlavor::Polynomial(map) if map.is_empty())
    }

    pub fn add(&self, other: &DifferentialForm<S>) -> DifferentialForm<S> {
        if self.is_structurally_zero() && self.k != other.k {
            return other.clone();
        }
        if other.is_structurally_zero() && self.k != other.k {
            return self.clone();
        }
        assert_eq!((self.n, self.k), (other.n, other.k));
        match (&self.flavor, &other.flavor) {
            (FormFlavor::Polynomial(ma), FormFlavor::Polynomial(mb)) => {
                let mut terms: Vec<(MultiIndex, Poly<S>)> =
                    ma.iter().map(|(h, p)| (h.clone(), p.clone())).collect();
                terms.extend(mb.iter().map(|(h, p)| (h.clone(), p.clone())));
                DifferentialForm::polynomial(self.n, self.k, terms).expect("same shape")
            }
            _ => {
                let fa = self.clone();
                let fb = other.clone();
                let order = self.order().min(other.order());
                DifferentialForm {
                    n: self.n,
                    k: self.k,
                    flavor: FormFlavor::BlackBox {
                        order,
                        coeff: Arc::new(move |p: &[S], h: &MultiIndex| {
                            fa.coeff(p, h) + fb.coeff(p, h)
                        }),
                        step: S::from_f(DEFAULT_FD_STEP),
                    },
                }
            }
        }
    }

    pub fn scale(&self, c: S) -> DifferentialForm<S> {
        match &self.flavor {
            FormFlavor::Polynomial(map) => {
                let terms = map.iter().map(|(h, p)| (h.clone(), p.scale(c))).collect();
                DifferentialForm::polynomial(self.n, self.k, terms).expect("same shape")
            }
            FormFlavor::BlackBox { order, coeff, step } => {
                let coeff = coeff.clone();
                DifferentialForm {
                    n: self.n,
                    k: self.k,
                    flavor: FormFlavor::BlackBox {
                        order: *order,
                        coeff: Arc::new(move |p: &[S], h: &MultiIndex| c * coeff(p, h)),
                        step: *step,
                    },
                }
            }
        }
    }

    pub fn sub(&self, other: &DifferentialForm<S>) -> DifferentialForm<S> {
        self.add(&other.scale(-S::one()))
    }
}

impl<S: Scalar> std::fmt::Debug for DifferentialForm<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.flavor {
            FormFlavor::Polynomial(map) => f
                .debug_struct("DifferentialForm")
                .field("n", &self.n)
                .field("k", &self.k)
                .field("terms", &map.len())
                .finish(),
            FormFlavor::BlackBox { order, .. } => f
                .debug_struct("DifferentialForm")
                .field("n", &self.n)
                .field("k", &self.k)
                .field("black_box_order", order)
                .finish(),
        }
    }
}

fn central_step<S: Scalar>(p: &[S], axis_1based: usize, step: S) -> (Vec<S>, Vec<S>, S) {
    let scale = p.iter().fold(S::one(), |acc, &x| acc.max(x.abs()));
    let h = step * scale;
    let mut hi = p.to_vec();
    let mut lo = p.to_vec();
    hi[axis_1based - 1] += h;
    lo[axis_1based - 1] -= h;
    (hi, lo, h + h)
}

/// All sub-multi-indices of `m` with `j` entries.
fn sub_multi_indices(m: &MultiIndex, j: usize) -> Vec<MultiIndex> {
    let idx = m.indices();
    let mut out = Vec::new();
    let count = idx.len();
    if j > count {
        return out;
    }
    // iterate bitmasks with popcount j; multi-index lengths are tiny
    for mask in 0u32..(1 << count) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let chosen: Vec<usize> = (0..count).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
        out.push(MultiIndex::new(chosen, idx.last().copied().unwrap_or(1)).expect("increasing"));
    }
    out
}
