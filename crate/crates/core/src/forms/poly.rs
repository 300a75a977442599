//! Sparse multivariate polynomials with exact exponent arithmetic; these back
//! the polynomial flavor of differential forms so that d, ∇_v, wedge and
//! affine pullback are exact.

use std::collections::BTreeMap;

use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A polynomial in `n` variables: exponent tuple → coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    n: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut p = Poly::zero(n);
        if c != S::zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    /// The coordinate variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n);
        let mut exps = vec![0u32; n];
        exps[i - 1] = 1;
        let mut p = Poly::zero(n);
        p.terms.insert(exps, S::one());
        p
    }

    /// A single monomial `c · x^exps`.
    pub fn monomial(n: usize, exps: Vec<u32>, c: S) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Poly::zero(n);
        if c != S::zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, exps: Vec<u32>, c: S) {
        if c == S::zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(S::zero);
        *entry += c;
        if *entry == S::zero() {
            // remove exact cancellations so equality tests stay structural
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| **v == S::zero())
                .map(|(k, _)| k.clone())
                .expect("just inserted");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly<S>) -> Poly<S> {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly<S>) -> Poly<S> {
        self.add(&other.scale(-S::one()))
    }

    pub fn scale(&self, c: S) -> Poly<S> {
        if c == S::zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, &v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<S>) -> Poly<S> {
        debug_assert_eq!(self.n, other.n);
        let mut out = Poly::zero(self.n);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly<S> {
        let mut acc = Poly::constant(self.n, S::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_i` (1-based).
    pub fn partial(&self, i: usize) -> Poly<S> {
        assert!(i >= 1 && i <= self.n);
        let mut out = Poly::zero(self.n);
        for (e, &c) in &self.terms {
            let p = e[i - 1];
            if p == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i - 1] = p - 1;
            out.insert(exps, c * S::from_us(p as usize));
        }
        out
    }

    /// Directional derivative `Σ_i v_i ∂_i`.
    pub fn dir_deriv(&self, v: &[S]) -> Poly<S> {
        let mut out = Poly::zero(self.n);
        for (i, &vi) in v.iter().enumerate() {
            if vi != S::zero() {
                out = out.add(&self.partial(i + 1).scale(vi));
            }
        }
        out
    }

    pub fn eval(&self, p: &[S]) -> S {
        debug_assert_eq!(p.len(), self.n);
        let mut acc = S::zero();
        for (e, &c) in &self.terms {
            let mut term = c;
            for (x, &pw) in p.iter().zip(e) {
                for _ in 0..pw {
                    term *= *x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact composition with an affine map `x = b + A·t`; the result is a
    /// polynomial in the `t` variables (A is n × m).
    pub fn compose_affine(&self, a: &Mat<S>, b: &[S]) -> Poly<S> {
        debug_assert_eq!(a.rows, self.n);
        debug_assert_eq!(b.len(), self.n);
        let m = a.cols;
        // the i-th coordinate as a degree-1 polynomial in t
        let coords: Vec<Poly<S>> = (0..self.n)
            .map(|i| {
                let mut p = Poly::constant(m, b[i]);
                for j in 0..m {
                    p = p.add(&Poly::var(m, j + 1).scale(a[(i, j)]));
                }
                p
            })
            .collect();
        let mut out = Poly::zero(m);
        for (e, &c) in &self.terms {
            let mut term = Poly::constant(m, c);
            for (i, &pw) in e.iter().enumerate() {
                if pw > 0 {
                    term = term.mul(&coords[i].pow(pw));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_fodder() {
        // d/dx (x^2 y) = 2xy
        let p = Poly::<f64>::var(2, 1).pow(2).mul(&Poly::var(2, 2));
        let dx = p.partial(1);
        assert_eq!(dx.eval(&[3.0, 5.0]), 30.0);
        let dy = p.partial(2);
        assert_eq!(dy.eval(&[3.0, 5.0]), 9.0);
    }

    #[test]
    fn compose_with_affine_map() {
        // p(x, y) = x y, x = 1 + 2t, y = -t  =>  -t(1 + 2t) = -t - 2t^2
        let p = Poly::<f64>::var(2, 1).mul(&Poly::var(2, 2));
        let a = Mat::from_rows(&[vec![2.0], vec![-1.0]]);
        let q = p.compose_affine(&a, &[1.0, 0.0]);
        for t in [-1.0, 0.0, 0.5, 2.0] {
            assert_eq!(q.eval(&[t]), -t - 2.0 * t * t);
        }
    }

    #[test]
    fn exact_cancellation_drops_terms() {
        let p = Poly::<f64>::var(3, 2);
        assert!(p.sub(&p).is_zero());
    }
}
