//! Transport of element chains: pushforward under smooth maps and the Lie
//! derivative along vector fields (exact for affine fields, flow-based with
//! Richardson extrapolation otherwise).

use crate::elements::element_chain::{ElementChain, ElementTerm};
use crate::error::{ChainletError, Result};
use crate::exterior::derivation_extension;
use crate::forms::{SmoothMap, VectorField};
use crate::linalg::Mat;
use crate::scalar::{vec_norm, Scalar};

/// Pushforward `f_*`: support points map through f, k-vectors through
/// `Λ^k(Df_p)`, derivative vectors through `Df_p` (first-order transport; the
/// change-of-variables pairing is exact for order-0 terms and affine maps).
/// Terms whose k-vector collapses under a degenerate jacobian drop.
pub fn pushforward<S: Scalar>(f: &SmoothMap<S>, e: &ElementChain<S>) -> Result<ElementChain<S>> {
    if f.n_in() != e.n() {
        return Err(ChainletError::DimensionMismatch {
            expected: e.n(),
            got: f.n_in(),
        });
    }
    let m = f.n_out();
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            let jac = f.jacobian_at(&t.point);
            ElementTerm {
                coeff: t.coeff,
                point: f.eval(&t.point),
                kvec: crate::exterior::pushforward_by_matrix(&jac, &t.kvec),
                dvecs: t.dvecs.iter().map(|u| jac.matvec(u)).collect(),
            }
        })
        .collect();
    ElementChain::new(m, e.grade().min(m), terms)
}

/// Lie derivative of an order-0 element chain along a vector field, dual to
/// the classical Lie derivative of forms: `∫_{L_X E} ω = ∫_E L_X ω`.
///
/// Affine fields are computed exactly: each monopole `α_p` maps to the
/// transport dipole `∇_{X(p)} α_p` plus the rotation term given by the
/// derivation extension of `DX(p)` on α. General fields go through the flow:
/// RK4 time stepping (16 substeps), central pushforward differences at
/// `t = 1e-2`, Richardson-extrapolated against `t = 5e-3`.
pub fn lie_derivative<S: Scalar>(
    field: &VectorField<S>,
    e: &ElementChain<S>,
) -> Result<ElementChain<S>> {
    if field.n() != e.n() {
        return Err(ChainletError::DimensionMismatch {
            expected: e.n(),
            got: field.n(),
        });
    }
    if e.max_order() > 0 {
        return Err(ChainletError::Unsupported(
            "lie derivative expects an order-0 chain".into(),
        ));
    }
    if field.is_affine() {
        let mut terms = Vec::new();
        for t in e.terms() {
            let jac = field.jacobian_at(&t.point);
            terms.push(ElementTerm {
                coeff: t.coeff,
                point: t.point.clone(),
                kvec: derivation_extension(&jac, &t.kvec),
                dvecs: vec![],
            });
            let xv = field.eval(&t.point);
            if vec_norm(&xv) > S::zero() {
                terms.push(ElementTerm {
                    coeff: t.coeff,
                    point: t.point.clone(),
                    kvec: t.kvec.clone(),
                    dvecs: vec![xv],
                });
            }
        }
        return ElementChain::new(e.n(), e.grade(), terms);
    }

    let t1 = S::from_f(1e-2);
    let t2 = S::from_f(5e-3);
    let d1 = central_flow_difference(field, e, t1)?;
    let d2 = central_flow_difference(field, e, t2)?;
    // Richardson: the O(t²) truncation cancels in (4 D(t/2) − D(t)) / 3
    let four_thirds = S::from_f(4.0 / 3.0);
    let third = S::from_f(1.0 / 3.0);
    Ok(d2.scale(four_thirds).sub(&d1.scale(third)))
}

/// `(f_{t*} E − f_{−t*} E) / (2t)` with f the flow of the field.
fn central_flow_difference<S: Scalar>(
    field: &VectorField<S>,
    e: &ElementChain<S>,
    t: S,
) -> Result<ElementChain<S>> {
    let fwd = flow_pushforward(field, e, t)?;
    let bwd = flow_pushforward(field, e, -t)?;
    Ok(fwd.sub(&bwd).scale(S::one() / (t + t)))
}

fn flow_pushforward<S: Scalar>(
    field: &VectorField<S>,
    e: &ElementChain<S>,
    t: S,
) -> Result<ElementChain<S>> {
    let terms = e
        .terms()
        .iter()
        .map(|term| {
            let (point, jac) = flow_with_jacobian(field, &term.point, t)?;
            Ok(ElementTerm {
                coeff: term.coeff,
                point,
                kvec: crate::exterior::pushforward_by_matrix(&jac, &term.kvec),
                dvecs: term.dvecs.iter().map(|u| jac.matvec(u)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ElementChain::new(e.n(), e.grade(), terms)
}

/// Integrate `x' = X(x)` together with the variational equation
/// `J' = DX(x) J` from `p` over time `t` by RK4 with 16 fixed substeps.
pub fn flow_with_jacobian<S: Scalar>(
    field: &VectorField<S>,
    p: &[S],
    t: S,
) -> Result<(Vec<S>, Mat<S>)> {
    const SUBSTEPS: usize = 16;
    let n = p.len();
    let h = t / S::from_us(SUBSTEPS);
    let mut x = p.to_vec();
    let mut jac = Mat::identity(n);

    let deriv = |x: &[S], j: &Mat<S>| -> (Vec<S>, Mat<S>) {
        (field.eval(x), field.jacobian_at(x).matmul(j))
    };
    let half = S::from_f(0.5);
    let sixth = S::from_f(1.0 / 6.0);
    let two = S::from_f(2.0);

    for _ in 0..SUBSTEPS {
        let (k1x, k1j) = deriv(&x, &jac);
        let x2: Vec<S> = x.iter().zip(&k1x).map(|(&a, &b)| a + half * h * b).collect();
        let j2 = jac.add(&k1j.scale(half * h));
        let (k2x, k2j) = deriv(&x2, &j2);
        let x3: Vec<S> = x.iter().zip(&k2x).map(|(&a, &b)| a + half * h * b).collect();
        let j3 = jac.add(&k2j.scale(half * h));
        let (k3x, k3j) = deriv(&x3, &j3);
        let x4: Vec<S> = x.iter().zip(&k3x).map(|(&a, &b)| a + h * b).collect();
        let j4 = jac.add(&k3j.scale(h));
        let (k4x, k4j) = deriv(&x4, &j4);

        for i in 0..n {
            x[i] += h * sixth * (k1x[i] + two * k2x[i] + two * k3x[i] + k4x[i]);
        }
        jac = jac.add(
            &k1j.add(&k2j.scale(two))
                .add(&k3j.scale(two))
                .add(&k4j)
                .scale(h * sixth),
        );
        if x.iter().any(|v| !v.is_finite()) {
            return Err(ChainletError::FlowFailure(format!(
                "state became non-finite integrating from {:?} over t = {}",
                p.iter().map(|v| v.to_f()).collect::<Vec<_>>(),
                t.to_f()
            )));
        }
    }
    Ok((x, jac))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::element_chain::ElementChain;
    use crate::exterior::{KVector, MultiIndex};
    use crate::forms::{DifferentialForm, Poly};

    type Chain = ElementChain<f64>;

    fn x_dy() -> DifferentialForm<f64> {
        DifferentialForm::polynomial(
            2,
            1,
            vec![(MultiIndex::new(vec![2], 2).unwrap(), Poly::var(2, 1))],
        )
        .unwrap()
    }

    #[test]
    fn pushforward_examples() {
        let e = Chain::monopole(vec![1.0, -1.0], KVector::<f64>::vol(2));
        // identity
        let id = SmoothMap::identity(2);
        let same = pushforward(&id, &e).unwrap();
        assert_eq!(same.terms()[0].kvec, KVector::<f64>::vol(2));
        // scaling by 2 quadruples the area element and moves the point
        let twice = SmoothMap::linear(Mat::diagonal(&[2.0, 2.0]));
        let scaled = pushforward(&twice, &e).unwrap();
        assert_eq!(scaled.terms()[0].point, vec![2.0, -2.0]);
        assert_eq!(scaled.terms()[0].kvec, KVector::<f64>::vol(2).scale(4.0));
    }

    #[test]
    fn change_of_variables_for_affine_maps() {
        // ∫_{f_* E} ω = ∫_E f*ω exactly for order-0 chains and affine f
        let f = SmoothMap::affine(
            Mat::from_rows(&[vec![2.0, 1.0], vec![0.0, -1.0]]),
            vec![0.3, 0.7],
        );
        let e = Chain::monopole(vec![0.2, 0.4], KVector::<f64>::axis(2, 1))
            .add(&Chain::monopole(vec![-1.0, 0.5], KVector::<f64>::axis(2, 2).scale(2.0)));
        let w = x_dy();
        let lhs = pushforward(&f, &e).unwrap().integrate(&w).unwrap();
        let rhs = e.integrate(&w.pullback(&f).unwrap()).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn degenerate_jacobian_drops_terms() {
        let f = SmoothMap::linear(Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]));
        let e = Chain::monopole(vec![0.0, 0.0], KVector::<f64>::vol(2));
        assert!(pushforward(&f, &e).unwrap().is_empty());
    }

    #[test]
    fn lie_derivative_rejects_higher_order_input() {
        let x = VectorField::constant(&[1.0, 0.0]);
        let e = Chain::monopole(vec![0.0, 0.0], KVector::axis(2, 1)).nabla(&[0.0, 1.0]);
        assert!(lie_derivative(&x, &e).is_err());
    }

    #[test]
    fn lie_derivative_of_zero_field_is_zero() {
        let x = VectorField::zero(2);
        let e = Chain::monopole(vec![0.5, 0.5], KVector::<f64>::axis(2, 1));
        assert!(lie_derivative(&x, &e).unwrap().is_empty());
    }

    #[test]
    fn constant_field_reduces_to_nabla() {
        let v = [0.4, -0.2];
        let x = VectorField::constant(&v);
        let e = Chain::monopole(vec![0.1, 0.9], KVector::<f64>::axis(2, 2));
        let lie = lie_derivative(&x, &e).unwrap();
        let nab = e.nabla(&v);
        let w = x_dy();
        assert_eq!(lie.integrate(&w).unwrap(), nab.integrate(&w).unwrap());
    }

    #[test]
    fn linear_rotation_matches_cartan_oracle() {
        // L_X pairing matches d(i_X ω) + i_X dω for the rotation field
        let m = Mat::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let x = VectorField::linear(&m);
        let e = Chain::monopole(vec![0.7, -0.2], KVector::<f64>::axis(2, 1));
        let w = x_dy();
        let lhs = lie_derivative(&x, &e).unwrap().integrate(&w).unwrap();
        let rhs = e.integrate(&x.lie_derivative_form(&w).unwrap()).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn flow_path_agrees_with_exact_path_on_linear_fields() {
        // route the same linear field through the RK4 flow machinery by
        // disguising it as a quadratic with zero quadratic part
        let m = Mat::from_rows(&[vec![0.1, -0.9], vec![0.8, 0.2]]);
        let exact_field = VectorField::linear(&m);
        let comps: Vec<Poly<f64>> = exact_field
            .components()
            .iter()
            .map(|c| c.add(&Poly::var(2, 1).pow(2).scale(0.0)))
            .collect();
        let e = Chain::monopole(vec![0.3, 0.4], KVector::<f64>::axis(2, 1));
        let w = x_dy();
        let exact = lie_derivative(&exact_field, &e)
            .unwrap()
            .integrate(&w)
            .unwrap();
        // same components, but degree reports ≤ 1 after the zero-scale prune,
        // so force the flow path directly
        let flowed = {
            let f = VectorField::new(comps);
            let d1 = central_flow_difference(&f, &e, 1e-2).unwrap();
            let d2 = central_flow_difference(&f, &e, 5e-3).unwrap();
            d2.scale(4.0 / 3.0).sub(&d1.scale(1.0 / 3.0))
        };
        let approx = flowed.integrate(&w).unwrap();
        assert!((exact - approx).abs() < 1e-9, "{} vs {}", exact, approx);
    }

    #[test]
    fn quadratic_field_matches_cartan_oracle() {
        // X = (x², xy): genuinely nonlinear, flow-based path
        let x = VectorField::new(vec![
            Poly::var(2, 1).pow(2),
            Poly::var(2, 1).mul(&Poly::var(2, 2)),
        ]);
        let e = Chain::monopole(vec![0.3, 0.5], KVector::<f64>::axis(2, 1));
        let w = x_dy();
        let lhs = lie_derivative(&x, &e).unwrap().integrate(&w).unwrap();
        let rhs = e.integrate(&x.lie_derivative_form(&w).unwrap()).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "{} vs {}", lhs, rhs);
    }
}
