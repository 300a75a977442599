//! Polynomial vector fields: exact jacobians, interior products, and the
//! classical Lie derivative of forms used as a test oracle.

use crate::error::Result;
use crate::exterior::MultiIndex;
use crate::forms::form::DifferentialForm;
use crate::forms::poly::Poly;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A vector field on R^n with polynomial components.
#[derive(Debug, Clone)]
pub struct VectorField<S> {
    n: usize,
    comps: Vec<Poly<S>>,
}

impl<S: Scalar> VectorField<S> {
    pub fn new(comps: Vec<Poly<S>>) -> Self {
        assert!(!comps.is_empty());
        let n = comps[0].n();
        for c in &comps {
            assert_eq!(c.n(), n);
        }
        assert_eq!(comps.len(), n, "vector field must have n components on R^n");
        VectorField { n, comps }
    }

    pub fn constant(v: &[S]) -> Self {
        let n = v.len();
        VectorField::new(v.iter().map(|&c| Poly::constant(n, c)).collect())
    }

    /// `X(x) = M x`.
    pub fn linear(m: &Mat<S>) -> Self {
        assert_eq!(m.rows, m.cols);
        let n = m.rows;
        let comps = (0..n)
            .map(|i| {
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p = p.add(&Poly::var(n, j + 1).scale(m[(i, j)]));
                }
                p
            })
            .collect();
        VectorField::new(comps)
    }

    pub fn zero(n: usize) -> Self {
        VectorField::new((0..n).map(|_| Poly::zero(n)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Poly<S>] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Affine fields flow exactly through their jacobian at a point.
    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn eval(&self, p: &[S]) -> Vec<S> {
        self.comps.iter().map(|c| c.eval(p)).collect()
    }

    /// Exact jacobian `(∂X_i/∂x_j)`.
    pub fn jacobian_at(&self, p: &[S]) -> Mat<S> {
        Mat::from_fn(self.n, self.n, |i, j| self.comps[i].partial(j + 1).eval(p))
    }

    /// Interior product `i_X ω`: the (k−1)-form with
    /// `(i_X ω)(p, β) = ω(p, X(p) ∧ β)`. Exact for polynomial forms.
    pub fn interior_product(&self, w: &DifferentialForm<S>) -> Result<DifferentialForm<S>> {
        let n = self.n;
        let k = w.degree();
        if k == 0 {
            return Ok(DifferentialForm::zero(n, 0));
        }
        if let Some(map) = w.polynomial_terms() {
            let mut terms: Vec<(MultiIndex, Poly<S>)> = Vec::new();
            for g in MultiIndex::all(n, k - 1) {
                let mut acc = Poly::zero(n);
                for i in 1..=n {
                    if g.contains(i) {
                        continue;
                    }
                    let axis = MultiIndex::new(vec![i], n).expect("in range");
                    let (sign, merged) = axis.merge(&g).expect("disjoint");
                    if let Some(a) = map.get(&merged) {
                        let contrib = a.mul(&self.comps[i - 1]);
                        acc = acc.add(&if sign > 0 {
                            contrib
                        } else {
                            contrib.scale(-S::one())
                        });
                    }
                }
                if !acc.is_zero() {
                    terms.push((g, acc));
                }
            }
            return DifferentialForm::polynomial(n, k - 1, terms);
        }
        // black-box fallback: contract the Riesz vector pointwise
        let field = self.clone();
        let w = w.clone();
        Ok(DifferentialForm::black_box(
            n,
            k - 1,
            w.order(),
            move |p: &[S], g: &MultiIndex| {
                let xv = crate::exterior::KVector::from_vector(&field.eval(p));
                let beta = crate::exterior::KVector::basis(field.n, g);
                w.eval(p, &xv.wedge(&beta)).expect("grades agree")
            },
        ))
    }

    /// Classical Lie derivative of a form via Cartan's formula
    /// `L_X ω = d(i_X ω) + i_X(dω)`; exact for polynomial data.
    pub fn lie_derivative_form(&self, w: &DifferentialForm<S>) -> Result<DifferentialForm<S>> {
        let di = self.interior_product(w)?.d()?;
        let id = self.interior_product(&w.d()?)?;
        Ok(di.add(&id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::KVector;

    #[test]
    fn interior_product_contracts_first_slot() {
        // i_{e1} (dx∧dy) = dy
        let w = DifferentialForm::constant(2, &KVector::vol(2));
        let x = VectorField::constant(&[1.0, 0.0]);
        let iw = x.interior_product(&w).unwrap();
        assert_eq!(iw.eval(&[0.0, 0.0], &KVector::axis(2, 2)).unwrap(), 1.0);
        assert_eq!(iw.eval(&[0.0, 0.0], &KVector::axis(2, 1)).unwrap(), 0.0);
    }

    #[test]
    fn lie_derivative_of_x_dy_under_translation() {
        // L_{e1}(x dy) = dy
        let w = DifferentialForm::polynomial(
            2,
            1,
            vec![(MultiIndex::new(vec![2], 2).unwrap(), Poly::var(2, 1))],
        )
        .unwrap();
        let x = VectorField::constant(&[1.0, 0.0]);
        let lw = x.lie_derivative_form(&w).unwrap();
        for p in [[0.0, 0.0], [2.0, -1.0]] {
            assert_eq!(lw.eval(&p, &KVector::axis(2, 2)).unwrap(), 1.0);
            assert_eq!(lw.eval(&p, &KVector::axis(2, 1)).unwrap(), 0.0);
        }
    }

    #[test]
    fn lie_derivative_matches_flow_difference() {
        // rotation field X = (−y, x), ω = x dy; compare against the flow
        // pullback difference quotient at a point
        let m = Mat::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let x = VectorField::linear(&m);
        let w = DifferentialForm::polynomial(
            2,
            1,
            vec![(MultiIndex::new(vec![2], 2).unwrap(), Poly::var(2, 1))],
        )
        .unwrap();
        let lw = x.lie_derivative_form(&w).unwrap();

        let p = [0.7, -0.2];
        let alpha = KVector::from_coeffs(2, 1, vec![0.3, 0.9]).unwrap();
        let t = 1e-6;
        let flow = |s: f64, q: &[f64]| -> Vec<f64> {
            vec![
                q[0] * s.cos() - q[1] * s.sin(),
                q[0] * s.sin() + q[1] * s.cos(),
            ]
        };
        let rot = |s: f64| Mat::from_rows(&[vec![s.cos(), -s.sin()], vec![s.sin(), s.cos()]]);
        let pull = |s: f64| -> f64 {
            let q = flow(s, &p);
            let img = crate::exterior::pushforward_by_matrix(&rot(s), &alpha);
            w.eval(&q, &img).unwrap()
        };
        let fd = (pull(t) - pull(-t)) / (2.0 * t);
        let exact = lw.eval(&p, &alpha).unwrap();
        assert!((fd - exact).abs() < 1e-8, "{} vs {}", fd, exact);
    }
}
