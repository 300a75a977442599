//! Point-supported k-elements and their chains. A term `(a, p, α, [u_1..u_s])`
//! is the order-s element supported at p: the iterated directional difference
//! limit of the monopole `α_p`, pairing with a form ω as
//! `a · (∇_{u_1} ··· ∇_{u_s} ω)(p; α)`.
//!
//! ## Sign conventions
//!
//! See [`crate::sign_conventions`] for the full table. In brief: ∇ pairs as
//! the forward directional derivative; boundary is the alternating formula
//! `∂(e^H)_p = Σ_i (−1)^{i−1} ∇_{e_{h_i}}((e^{H∖h_i})_p)`, the unique linear
//! operator dual to the coordinate exterior derivative; star acts on the
//! k-vector only, and the coefficientwise star on forms makes
//! `∫_{★E} ★ω = ∫_E ω` exact.

use crate::error::{ChainletError, Result};
use crate::exterior::KVector;
use crate::forms::DifferentialForm;
use crate::scalar::{vec_norm, Scalar};

/// Coefficients with magnitude below this drop during canonical merging.
pub const MERGE_EPS: f64 = 1e-14;

/// One point-supported term of an element chain.
#[derive(Debug, Clone)]
pub struct ElementTerm<S> {
    pub coeff: S,
    pub point: Vec<S>,
    pub kvec: KVector<S>,
    pub dvecs: Vec<Vec<S>>,
}

impl<S: Scalar> ElementTerm<S> {
    pub fn order(&self) -> usize {
        self.dvecs.len()
    }
}

/// A finite sum of k-elements of mixed orders (the direct-sum grading), all of
/// one grade k.
#[derive(Debug, Clone)]
pub struct ElementChain<S> {
    n: usize,
    k: usize,
    terms: Vec<ElementTerm<S>>,
}

impl<S: Scalar> ElementChain<S> {
    pub fn empty(n: usize, k: usize) -> Self {
        ElementChain {
            n,
            k,
            terms: vec![],
        }
    }

    pub fn new(n: usize, k: usize, terms: Vec<ElementTerm<S>>) -> Result<Self> {
        for t in &terms {
            if t.point.len() != n {
                return Err(ChainletError::DimensionMismatch {
                    expected: n,
                    got: t.point.len(),
                });
            }
            if t.kvec.grade() != k || t.kvec.n() != n {
                return Err(ChainletError::GradeMismatch {
                    expected: k,
                    got: t.kvec.grade(),
                });
            }
            for u in &t.dvecs {
                if u.len() != n {
                    return Err(ChainletError::DimensionMismatch {
                        expected: n,
                        got: u.len(),
                    });
                }
            }
        }
        Ok(ElementChain { n, k, terms }.canonical())
    }

    /// The order-0 monopole `α_p`.
    pub fn monopole(point: Vec<S>, kvec: KVector<S>) -> Self {
        let (n, k) = (kvec.n(), kvec.grade());
        debug_assert_eq!(point.len(), n);
        ElementChain {
            n,
            k,
            terms: vec![ElementTerm {
                coeff: S::one(),
                point,
                kvec,
                dvecs: vec![],
            }],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[ElementTerm<S>] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.order()).max().unwrap_or(0)
    }

    /// Canonical form: the coefficient folds into the k-vector, dvec lists
    /// sort as multisets (derivatives commute), terms with bit-identical
    /// support and dvecs merge, and components below [`MERGE_EPS`] drop.
    /// A term with a zero dvec is the zero element and drops too.
    pub fn canonical(self) -> ElementChain<S> {
        type Keyed<S> = Vec<(Vec<S>, Vec<Vec<S>>, KVector<S>)>;
        let (n, k) = (self.n, self.k);
        let mut keyed: Keyed<S> = self
            .terms
            .into_iter()
            .filter_map(|t| {
                if t.dvecs.iter().any(|u| vec_norm(u) == S::zero()) {
                    return None;
                }
                let mut dvecs = t.dvecs;
                dvecs.sort_by(|a, b| cmp_coords(a, b));
                Some((t.point, dvecs, t.kvec.scale(t.coeff)))
            })
            .collect();
        keyed.sort_by(|a, b| cmp_coords(&a.0, &b.0).then_with(|| cmp_dvec_lists(&a.1, &b.1)));

        let eps = S::from_f(MERGE_EPS);
        let mut terms: Vec<ElementTerm<S>> = Vec::with_capacity(keyed.len());
        let mut iter = keyed.into_iter();
        let mut current = iter.next();
        while let Some((point, dvecs, mut kvec)) = current.take() {
            for next in iter.by_ref() {
                if next.0 == point && next.1 == dvecs {
                    kvec = kvec.add(&next.2);
                } else {
                    current = Some(next);
                    break;
                }
            }
            let coeffs: Vec<S> = kvec
                .coeffs()
                .iter()
                .map(|&c| if c.abs() < eps { S::zero() } else { c })
                .collect();
            let kvec = KVector::from_coeffs(n, k, coeffs).expect("shape preserved");
            if !kvec.is_zero() {
                terms.push(ElementTerm {
                    coeff: S::one(),
                    point,
                    kvec,
                    dvecs,
                });
            }
        }
        ElementChain { n, k, terms }
    }

    pub fn add(&self, other: &ElementChain<S>) -> ElementChain<S> {
        // empty chains act as the zero of any grade, so compositions like
        // ∂◇ + ◇∂ stay well-typed at the grade boundaries
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ElementChain {
            n: self.n,
            k: self.k,
            terms,
        }
        .canonical()
    }

    pub fn scale(&self, c: S) -> ElementChain<S> {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out.canonical()
    }

    pub fn sub(&self, other: &ElementChain<S>) -> ElementChain<S> {
        self.add(&other.scale(-S::one()))
    }

    pub fn translate(&self, v: &[S]) -> ElementChain<S> {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.point = t.point.iter().zip(v).map(|(&x, &d)| x + d).collect();
        }
        out
    }

    /// Net k-vector: the order-0 part's mass-and-direction aggregate
    /// (difference elements of order ≥ 1 have `Vec = 0`).
    pub fn vec(&self) -> KVector<S> {
        let mut acc = KVector::zero(self.n, self.k);
        for t in &self.terms {
            if t.order() == 0 {
                acc = acc.add(&t.kvec.scale(t.coeff));
            }
        }
        acc
    }

    /// `∫_E ω = Σ a_i (∇_{u_1} ··· ∇_{u_s} ω)(p_i; α_i)`; exact for
    /// polynomial forms. Requires ω to support the highest term order.
    pub fn integrate(&self, w: &DifferentialForm<S>) -> Result<S> {
        if self.is_empty() {
            return Ok(S::zero());
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
        let needed = self.max_order();
        if w.order() < needed {
            return Err(ChainletError::InsufficientOrder {
                available: w.order(),
                needed,
            });
        }
        let mut acc = S::zero();
        for t in &self.terms {
            let derived = w.dir_deriv_many(&t.dvecs)?;
            acc += t.coeff * derived.eval(&t.point, &t.kvec)?;
        }
        Ok(acc)
    }

    /// Geometric boundary: on a basis term,
    /// `∂(e^H)_p = Σ_i (−1)^{i−1} ∇_{e_{h_i}}((e^{H∖h_i})_p)`,
    /// extended linearly over the k-vector coefficients. Dual to the exterior
    /// derivative: `∫_{∂E} ω = ∫_E dω` exactly; `∂∂ = 0` in canonical form.
    pub fn boundary(&self) -> ElementChain<S> {
        if self.k == 0 {
            return ElementChain::empty(self.n, 0);
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            for (h, c) in t.kvec.terms() {
                for (pos, &axis) in h.indices().iter().enumerate() {
                    let sign = if pos % 2 == 0 { S::one() } else { -S::one() };
                    let face = h.remove_at(pos);
                    let mut unit = vec![S::zero(); self.n];
                    unit[axis - 1] = S::one();
                    let mut dvecs = t.dvecs.clone();
                    dvecs.push(unit);
                    terms.push(ElementTerm {
                        coeff: t.coeff * sign * c,
                        point: t.point.clone(),
                        kvec: KVector::basis(self.n, &face),
                        dvecs,
                    });
                }
            }
        }
        ElementChain {
            n: self.n,
            k: self.k - 1,
            terms,
        }
        .canonical()
    }

    /// Geometric star: termwise `α ↦ ★α`, derivative vectors untouched.
    /// Mass-preserving and adjoint to the coefficientwise star on forms:
    /// `∫_{★E} ★ω = ∫_E ω` exactly.
    pub fn star(&self) -> ElementChain<S> {
        let terms = self
            .terms
            .iter()
            .map(|t| ElementTerm {
                coeff: t.coeff,
                point: t.point.clone(),
                kvec: t.kvec.hodge_star(),
                dvecs: t.dvecs.clone(),
            })
            .collect();
        ElementChain {
            n: self.n,
            k: self.n - self.k,
            terms,
        }
        .canonical()
    }

    /// Geometric coboundary `◇ = ★∂★`; nilpotent, raises grade by one and
    /// order by one.
    pub fn coboundary(&self) -> ElementChain<S> {
        self.star().boundary().star()
    }

    /// Geometric Laplace operator `Δ = ∂◇ + ◇∂`; preserves grade, raises
    /// order by two.
    pub fn laplace(&self) -> ElementChain<S> {
        let a = self.coboundary().boundary();
        let b = self.boundary().coboundary();
        a.add(&b)
    }

    /// Geometric directional derivative: order s → s + 1 by appending v.
    /// Pairs as the forward directional derivative: `∫_{∇_v E} ω = ∫_E ∇_v ω`.
    pub fn nabla(&self, v: &[S]) -> ElementChain<S> {
        debug_assert_eq!(v.len(), self.n);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut dvecs = t.dvecs.clone();
                dvecs.push(v.to_vec());
                ElementTerm {
                    coeff: t.coeff,
                    point: t.point.clone(),
                    kvec: t.kvec.clone(),
                    dvecs,
                }
            })
            .collect();
        ElementChain {
            n: self.n,
            k: self.k,
            terms,
        }
        .canonical()
    }

    /// Multiplication by a function: `f α_p = f(p) α_p`, order-0 terms only
    /// (the product-rule transport for higher orders is out of scope).
    pub fn multiply_function(&self, f: &DifferentialForm<S>) -> Result<ElementChain<S>> {
        if f.degree() != 0 {
            return Err(ChainletError::GradeMismatch {
                expected: 0,
                got: f.degree(),
            });
        }
        if self.max_order() > 0 {
            return Err(ChainletError::Unsupported(
                "function multiplication needs order-0 terms".into(),
            ));
        }
        let unit = KVector::scalar(self.n, S::one());
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= f.eval(&t.point, &unit)?;
        }
        Ok(out.canonical())
    }

    /// Cup product with a degree-j form: order-0 terms wedge their k-vector
    /// with the form's Riesz vector at the support point; an order-s term
    /// distributes its derivatives over the product by the Leibniz rule,
    /// summing over the subsets of dvecs that fall on the form. Exact for
    /// polynomial forms. Grade overflow yields the empty chain.
    pub fn cup_with_form(&self, w: &DifferentialForm<S>) -> Result<ElementChain<S>> {
        if w.n() != self.n {
            return Err(ChainletError::DimensionMismatch {
                expected: self.n,
                got: w.n(),
            });
        }
        let grade = self.k + w.degree();
        if grade > self.n {
            return Ok(ElementChain::empty(self.n, self.n));
        }
        if w.order() < self.max_order() {
            return Err(ChainletError::InsufficientOrder {
                available: w.order(),
                needed: self.max_order(),
            });
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            let s = t.order();
            for mask in 0u32..(1 << s) {
                let onto_form: Vec<Vec<S>> = (0..s)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| t.dvecs[b].clone())
                    .collect();
                let remaining: Vec<Vec<S>> = (0..s)
                    .filter(|b| mask >> b & 1 == 0)
                    .map(|b| t.dvecs[b].clone())
                    .collect();
                let derived = w.dir_deriv_many(&onto_form)?;
                let rv = derived.riesz_vec(&t.point);
                let wedged = t.kvec.wedge(&rv);
                if wedged.is_zero() {
                    continue;
                }
                terms.push(ElementTerm {
                    coeff: t.coeff,
                    point: t.point.clone(),
                    kvec: wedged,
                    dvecs: remaining,
                });
            }
        }
        ElementChain::new(self.n, grade, terms)
    }
}

fn cmp_coords<S: Scalar>(a: &[S], b: &[S]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(other) => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn cmp_dvec_lists<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let c = cmp_coords(x, y);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MultiIndex;
    use crate::forms::Poly;

    type Chain = ElementChain<f64>;
    type Form = DifferentialForm<f64>;

    fn x_dy() -> Form {
        Form::polynomial(
            2,
            1,
            vec![(MultiIndex::new(vec![2], 2).unwrap(), Poly::var(2, 1))],
        )
        .unwrap()
    }

    fn x_dxdy() -> Form {
        Form::polynomial(2, 2, vec![(MultiIndex::full(2), Poly::var(2, 1))]).unwrap()
    }

    #[test]
    fn integrate_examples() {
        // vol element at (2,5) against x dx∧dy → 2
        let e = Chain::monopole(vec![2.0, 5.0], KVector::<f64>::vol(2));
        assert_eq!(e.integrate(&x_dxdy()).unwrap(), 2.0);
        // order-1 term (1, p, e^2, [e_1]) against x dy → ∇_{e1}(x) = 1
        let e = Chain::monopole(vec![7.0, -3.0], KVector::<f64>::axis(2, 2)).nabla(&[1.0, 0.0]);
        assert_eq!(e.integrate(&x_dy()).unwrap(), 1.0);
        // empty chain → 0
        assert_eq!(Chain::empty(2, 1).integrate(&x_dy()).unwrap(), 0.0);
    }

    #[test]
    fn boundary_is_dual_to_d() {
        // ∂(e^1∧e^2)_p paired with x dy equals d(x dy)(p; e^1∧e^2) = 1
        let e = Chain::monopole(vec![0.3, 0.9], KVector::<f64>::vol(2));
        let b = e.boundary();
        assert_eq!(b.grade(), 1);
        assert_eq!(b.terms().len(), 2);
        let lhs = b.integrate(&x_dy()).unwrap();
        let rhs = e.integrate(&x_dy().d().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, 1.0);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for (n, h) in [(2, vec![1, 2]), (3, vec![1, 2, 3]), (4, vec![1, 3, 4])] {
            let kv = KVector::<f64>::basis(n, &MultiIndex::new(h, n).unwrap());
            let e = Chain::monopole(vec![0.5; n], kv).nabla(&vec![0.25; n]);
            assert!(e.boundary().boundary().is_empty());
        }
    }

    #[test]
    fn boundary_of_interval_element_is_derivative_pairing() {
        // k = 1 in R^1: ∂(e^1)_p pairs f to f'(p)
        let e = Chain::monopole(vec![0.4], KVector::<f64>::axis(1, 1));
        let f = Form::function(Poly::var(1, 1).pow(3)); // f = x³
        let b = e.boundary();
        let got = b.integrate(&f).unwrap();
        assert!((got - 3.0 * 0.4f64.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn star_examples() {
        let e = Chain::monopole(vec![1.0, 2.0], KVector::<f64>::axis(2, 1));
        let s = e.star();
        assert_eq!(s.grade(), 1);
        assert_eq!(s.terms()[0].kvec, KVector::<f64>::axis(2, 2));
        // ★★ = (−1)^{k(n−k)}
        let ss = e.star().star();
        assert_eq!(ss.terms()[0].kvec, KVector::<f64>::axis(2, 1).scale(-1.0));
        // ∫_{★E} ★ω = ∫_E ω, on a pairing that is nonzero
        let e2 = Chain::monopole(vec![1.0, 2.0], KVector::<f64>::axis(2, 2));
        let w = x_dy();
        let lhs = e2.star().integrate(&w.star()).unwrap();
        let rhs = e2.integrate(&w).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, 1.0);
    }

    #[test]
    fn coboundary_dipole_in_r1() {
        // ◇ of a 0-element in R¹ is a first-order interval element whose
        // pairing with f dx is f′(p)
        let e = Chain::monopole(vec![0.7], KVector::<f64>::scalar(1, 1.0));
        let cb = e.coboundary();
        assert_eq!(cb.grade(), 1);
        assert_eq!(cb.max_order(), 1);
        let fdx = Form::polynomial(
            1,
            1,
            vec![(MultiIndex::full(1), Poly::var(1, 1).pow(2))],
        )
        .unwrap();
        let got = cb.integrate(&fdx).unwrap();
        // δ(f dx) = ★d★(f dx) = ★df = f′ with our conventions; the pairing
        // sign (−1)^{n+1} = +1 in R¹
        assert!((got - 2.0 * 0.7).abs() < 1e-15);
        // ◇◇ = 0
        assert!(cb.coboundary().is_empty());
        // ◇(vol element) = 0 through ∂(0-element) = 0
        let vol = Chain::monopole(vec![0.0, 0.0], KVector::<f64>::vol(2));
        assert!(vol.coboundary().is_empty());
    }

    #[test]
    fn laplace_in_r1_is_second_derivative() {
        let e = Chain::monopole(vec![0.2], KVector::<f64>::scalar(1, 1.0));
        let lap = e.laplace();
        let f = Form::function(Poly::var(1, 1).pow(3));
        let got = lap.integrate(&f).unwrap();
        // ∫_{ΔA} ω = (−1)^{n−1} ∫_A □ω; in R¹ the sign is +1 and □f = f″
        assert!((got - 6.0 * 0.2).abs() < 1e-15, "got {}", got);
        assert!(Chain::empty(1, 0).laplace().is_empty());
    }

    #[test]
    fn laplace_annihilates_harmonic_pairing() {
        // □(x dy) = 0, so ∫_{ΔE} x dy = 0 for any 1-element chain E
        let e = Chain::monopole(vec![0.3, -0.8], KVector::<f64>::axis(2, 1));
        let got = e.laplace().integrate(&x_dy()).unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn nabla_examples() {
        let p = vec![1.0, 1.0];
        let e = Chain::monopole(p, KVector::<f64>::axis(2, 2));
        // against a constant form the derivative pairing vanishes
        let c = Form::constant(2, &KVector::<f64>::axis(2, 2));
        assert_eq!(e.nabla(&[1.0, 0.0]).integrate(&c).unwrap(), 0.0);
        // ∇_{e1}((e^2)_p) against x dy → 1
        assert_eq!(e.nabla(&[1.0, 0.0]).integrate(&x_dy()).unwrap(), 1.0);
        // zero direction is the zero chain
        assert!(e.nabla(&[0.0, 0.0]).is_empty());
    }

    #[test]
    fn nabla_is_limit_of_difference_elements() {
        // 2^i (T_{v/2^i} α_p − α_p) converges to ∇_v α_p at rate O(2^{-i})
        let p = vec![0.5, 0.25];
        let v = [0.3, -0.4];
        let w = Form::polynomial(
            2,
            1,
            vec![(
                MultiIndex::new(vec![2], 2).unwrap(),
                Poly::var(2, 1).pow(2).mul(&Poly::var(2, 2)),
            )],
        )
        .unwrap();
        let e = Chain::monopole(p.clone(), KVector::<f64>::axis(2, 2));
        let exact = e.nabla(&v).integrate(&w).unwrap();
        let mut prev_err = f64::INFINITY;
        for i in 1..=12 {
            let h = 0.5f64.powi(i);
            let shifted = e.translate(&[v[0] * h, v[1] * h]);
            let approx = shifted.sub(&e).scale(1.0 / h).integrate(&w).unwrap();
            let err = (approx - exact).abs();
            assert!(err < prev_err.max(1e-9) * 0.75, "i={} err={}", i, err);
            prev_err = err;
        }
    }

    #[test]
    fn multiply_function_examples() {
        let e = Chain::monopole(vec![2.0, 5.0], KVector::<f64>::vol(2));
        let one = Form::function(Poly::constant(2, 1.0));
        let same = e.multiply_function(&one).unwrap();
        assert_eq!(same.integrate(&x_dxdy()).unwrap(), 2.0);
        let fx = Form::function(Poly::var(2, 1));
        let scaled = e.multiply_function(&fx).unwrap();
        assert_eq!(scaled.terms()[0].kvec.coeffs()[0], 2.0);
        // pairing identity ∫_{fE} ω = ∫_E fω
        let fw = fx.wedge(&x_dxdy());
        assert_eq!(
            scaled.integrate(&x_dxdy()).unwrap(),
            e.integrate(&fw).unwrap()
        );
        // order ≥ 1 unsupported
        assert!(e.nabla(&[1.0, 0.0]).multiply_function(&fx).is_err());
    }

    #[test]
    fn cup_examples() {
        // (e^1)_p ∪ dy = (e^1∧e^2)_p with unit scale
        let p = vec![0.4, 0.6];
        let e = Chain::monopole(p.clone(), KVector::<f64>::axis(2, 1));
        let dy = Form::constant(2, &KVector::<f64>::axis(2, 2));
        let cup = e.cup_with_form(&dy).unwrap();
        assert_eq!(cup.grade(), 2);
        assert_eq!(cup.terms()[0].kvec, KVector::<f64>::vol(2));
        // cup with a 0-form reduces to multiply_function
        let fx = Form::function(Poly::var(2, 1));
        let via_cup = e.cup_with_form(&fx).unwrap();
        let via_mul = e.multiply_function(&fx).unwrap();
        assert_eq!(
            via_cup.integrate(&x_dy()).unwrap(),
            via_mul.integrate(&x_dy()).unwrap()
        );
        // grade overflow is the empty chain
        let vol = Chain::monopole(p, KVector::<f64>::vol(2));
        assert!(vol.cup_with_form(&dy).unwrap().is_empty());
    }

    #[test]
    fn cup_leibniz_on_order_one_terms() {
        // pairing of (∇_v E) ∪ w against η equals d/dv of the cup pairing:
        // check against finite differences of the order-0 cup
        let v = [0.2, 0.7];
        let base = Chain::monopole(vec![0.1, 0.3], KVector::<f64>::axis(2, 1));
        let w = x_dy(); // degree 1
        let eta = x_dxdy();
        let lhs = base
            .nabla(&v)
            .cup_with_form(&w)
            .unwrap()
            .integrate(&eta)
            .unwrap();
        let g = |t: f64| -> f64 {
            base.translate(&[v[0] * t, v[1] * t])
                .cup_with_form(&w)
                .unwrap()
                .integrate(&eta)
                .unwrap()
        };
        let h = 1e-6;
        let fd = (g(h) - g(-h)) / (2.0 * h);
        assert!((lhs - fd).abs() < 1e-8, "{} vs {}", lhs, fd);
    }

    #[test]
    fn integrate_signals_insufficient_black_box_order() {
        let e = Chain::monopole(vec![0.0, 0.0], KVector::axis(2, 2)).nabla(&[1.0, 0.0]);
        let bb = Form::black_box(2, 1, 0, |p, h| if h.contains(2) { p[0] } else { 0.0 });
        assert!(matches!(
            e.integrate(&bb),
            Err(crate::error::ChainletError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn net_kvector_ignores_higher_orders() {
        let a = Chain::monopole(vec![0.0, 0.0], KVector::axis(2, 1).scale(2.0));
        let b = Chain::monopole(vec![1.0, 1.0], KVector::axis(2, 2));
        let dipole = Chain::monopole(vec![0.5, 0.5], KVector::axis(2, 1)).nabla(&[1.0, 0.0]);
        let chain = a.add(&b).add(&dipole);
        let v = chain.vec();
        assert_eq!(v.coeffs(), &[2.0, 1.0]);
    }

    #[test]
    fn discrete_stokes_holds_in_f32() {
        // the generic stack composes at reduced precision too
        let e = ElementChain::<f32>::monopole(vec![0.25, -0.5], KVector::<f32>::vol(2));
        let w = DifferentialForm::<f32>::polynomial(
            2,
            1,
            vec![(
                MultiIndex::new(vec![2], 2).unwrap(),
                crate::forms::Poly::<f32>::var(2, 1),
            )],
        )
        .unwrap();
        let lhs = e.boundary().integrate(&w).unwrap();
        let rhs = e.integrate(&w.d().unwrap()).unwrap();
        assert!((lhs - rhs).abs() < 1e-6);
        assert!((lhs - 1.0).abs() < 1e-6);
    }

    #[test]
    fn canonical_merges_and_drops() {
        let p = vec![1.0, 2.0];
        let a = Chain::monopole(p.clone(), KVector::<f64>::axis(2, 1));
        let b = Chain::monopole(p, KVector::<f64>::axis(2, 1)).scale(-1.0);
        assert!(a.add(&b).is_empty());
        // dvec multisets merge regardless of insertion order
        let u = [1.0, 0.0];
        let v = [0.0, 1.0];
        let t1 = a.nabla(&u).nabla(&v);
        let t2 = a.nabla(&v).nabla(&u);
        assert!(t1.sub(&t2).is_empty());
    }
}
