//! Gauss–Legendre quadrature and the conical product rule on the standard
//! simplex, for integrating black-box forms.

use crate::scalar::Scalar;

/// Gauss–Legendre nodes and weights on [0, 1], computed by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre_unit<S: Scalar>(q: usize) -> Vec<(S, S)> {
    let qf = q as f64;
    let mut out = Vec::with_capacity(q);
    for i in 1..=q {
        // initial guess on [-1, 1]
        let mut x = S::from_f((std::f64::consts::PI * (i as f64 - 0.25) / (qf + 0.5)).cos());
        let mut dp = S::one();
        for _ in 0..64 {
            let (p, d) = legendre(q, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < S::from_f(1e-16) {
                break;
            }
        }
        let w = S::from_f(2.0) / ((S::one() - x * x) * dp * dp);
        // map from [-1, 1] to [0, 1]
        out.push(((x + S::one()) / S::from_f(2.0), w / S::from_f(2.0)));
    }
    out
}

/// Legendre polynomial P_q and its derivative at x.
fn legendre<S: Scalar>(q: usize, x: S) -> (S, S) {
    let mut p0 = S::one();
    let mut p1 = x;
    if q == 0 {
        return (p0, S::zero());
    }
    for j in 2..=q {
        let jf = S::from_us(j);
        let p2 = ((S::from_f(2.0) * jf - S::one()) * x * p1 - (jf - S::one()) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = S::from_us(q) * (x * p1 - p0) / (x * x - S::one());
    (p1, d)
}

/// Quadrature nodes `(t, weight)` for the standard k-simplex
/// `{t ≥ 0, Σ t_i ≤ 1}` via the conical product map `t_i = u_i · R_i`,
/// `R_i = Π_{j<i} (1 − u_j)`, whose triangular jacobian is `Π_i R_i`.
pub fn simplex_quadrature<S: Scalar>(k: usize, points_per_axis: usize) -> Vec<(Vec<S>, S)> {
    if k == 0 {
        return vec![(vec![], S::one())];
    }
    let line = gauss_legendre_unit::<S>(points_per_axis);
    // (coordinates so far, accumulated weight, remaining budget R)
    let mut nodes: Vec<(Vec<S>, S, S)> = vec![(vec![], S::one(), S::one())];
    for _ in 0..k {
        let mut next = Vec::with_capacity(nodes.len() * line.len());
        for (t, w, remaining) in &nodes {
            for &(u, wu) in &line {
                let mut tv = t.clone();
                tv.push(u * *remaining);
                next.push((tv, *w * wu * *remaining, *remaining * (S::one() - u)));
            }
        }
        nodes = next;
    }
    nodes.into_iter().map(|(t, w, _)| (t, w)).collect()
}
