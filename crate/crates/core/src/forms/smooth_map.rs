//! Smooth maps between Euclidean spaces, carried as evaluator + jacobian
//! closures, with an exact affine fast path.

use std::sync::Arc;

use crate::error::{ChainletError, Result};
use crate::exterior::{pushforward_by_matrix, KVector};
use crate::forms::poly::Poly;
use crate::linalg::Mat;
use crate::scalar::Scalar;

type ForwardFn<S> = Arc<dyn Fn(&[S]) -> Vec<S> + Send + Sync>;
type JacobianFn<S> = Arc<dyn Fn(&[S]) -> Mat<S> + Send + Sync>;

/// A map `f: R^n → R^m` with jacobian, and optionally an inverse and an exact
/// affine representation `f(x) = b + A x`.
#[derive(Clone)]
pub struct SmoothMap<S> {
    n_in: usize,
    n_out: usize,
    forward: ForwardFn<S>,
    jacobian: JacobianFn<S>,
    inverse: Option<ForwardFn<S>>,
    affine: Option<(Mat<S>, Vec<S>)>,
}

impl<S: Scalar> SmoothMap<S> {
    /// General constructor. The jacobian is spot-checked against a central
    /// finite difference of `forward` at `probe` (relative tolerance 1e-5).
    pub fn new(
        n_in: usize,
        n_out: usize,
        forward: impl Fn(&[S]) -> Vec<S> + Send + Sync + 'static,
        jacobian: impl Fn(&[S]) -> Mat<S> + Send + Sync + 'static,
        probe: &[S],
    ) -> Result<Self> {
        let map = SmoothMap {
            n_in,
            n_out,
            forward: Arc::new(forward),
            jacobian: Arc::new(jacobian),
            inverse: None,
            affine: None,
        };
        map.check_jacobian(probe)?;
        Ok(map)
    }

    /// `f(x) = b + A x`, exact.
    pub fn affine(a: Mat<S>, b: Vec<S>) -> Self {
        assert_eq!(a.rows, b.len());
        let (fa, fb) = (a.clone(), b.clone());
        let ja = a.clone();
        SmoothMap {
            n_in: a.cols,
            n_out: a.rows,
            forward: Arc::new(move |x: &[S]| {
                let ax = fa.matvec(x);
                ax.iter().zip(&fb).map(|(&u, &v)| u + v).collect()
            }),
            jacobian: Arc::new(move |_: &[S]| ja.clone()),
            inverse: None,
            affine: Some((a, b)),
        }
    }

    pub fn linear(a: Mat<S>) -> Self {
        let b = vec![S::zero(); a.rows];
        SmoothMap::affine(a, b)
    }

    pub fn identity(n: usize) -> Self {
        SmoothMap::linear(Mat::identity(n))
    }

    /// A map with polynomial component functions; jacobian is exact.
    pub fn from_polys(n_in: usize, comps: Vec<Poly<S>>) -> Self {
        let n_out = comps.len();
        for c in &comps {
            assert_eq!(c.n(), n_in);
        }
        let partials: Vec<Vec<Poly<S>>> = comps
            .iter()
            .map(|c| (1..=n_in).map(|i| c.partial(i)).collect())
            .collect();
        let ev = comps.clone();
        SmoothMap {
            n_in,
            n_out,
            forward: Arc::new(move |x: &[S]| ev.iter().map(|c| c.eval(x)).collect()),
            jacobian: Arc::new(move |x: &[S]| {
                Mat::from_fn(n_out, n_in, |i, j| partials[i][j].eval(x))
            }),
            inverse: None,
            affine: None,
        }
    }

    pub fn with_inverse(
        mut self,
        inverse: impl Fn(&[S]) -> Vec<S> + Send + Sync + 'static,
    ) -> Self {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn eval(&self, p: &[S]) -> Vec<S> {
        debug_assert_eq!(p.len(), self.n_in);
        (self.forward)(p)
    }

    pub fn jacobian_at(&self, p: &[S]) -> Mat<S> {
        (self.jacobian)(p)
    }

    pub fn inverse_at(&self, q: &[S]) -> Option<Vec<S>> {
        self.inverse.as_ref().map(|inv| inv(q))
    }

    /// Exact affine data `(A, b)` when available.
    pub fn affine_parts(&self) -> Option<(&Mat<S>, &[S])> {
        self.affine.as_ref().map(|(a, b)| (a, b.as_slice()))
    }

    /// Pushforward of a k-vector: `D^k f_p(α) = Λ^k(Df_p)(α)`.
    pub fn pushforward_kvector(&self, p: &[S], a: &KVector<S>) -> KVector<S> {
        pushforward_by_matrix(&self.jacobian_at(p), a)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &SmoothMap<S>) -> SmoothMap<S> {
        assert_eq!(other.n_out, self.n_in);
        if let (Some((a1, b1)), Some((a2, b2))) = (&self.affine, &other.affine) {
            let a = a1.matmul(a2);
            let ab = a1.matvec(b2);
            let b = ab.iter().zip(b1).map(|(&x, &y)| x + y).collect();
            return SmoothMap::affine(a, b);
        }
        let f = self.forward.clone();
        let g = other.forward.clone();
        let jf = self.jacobian.clone();
        let jg = other.jacobian.clone();
        let g2 = other.forward.clone();
        SmoothMap {
            n_in: other.n_in,
            n_out: self.n_out,
            forward: Arc::new(move |x: &[S]| f(&g(x))),
            jacobian: Arc::new(move |x: &[S]| jf(&g2(x)).matmul(&jg(x))),
            inverse: None,
            affine: None,
        }
    }

    fn check_jacobian(&self, probe: &[S]) -> Result<()> {
        let jac = self.jacobian_at(probe);
        let h = S::from_f(1e-5);
        let mut worst = S::zero();
        for j in 0..self.n_in {
            let mut hi = probe.to_vec();
            let mut lo = probe.to_vec();
            hi[j] += h;
            lo[j] -= h;
            let fhi = self.eval(&hi);
            let flo = self.eval(&lo);
            for i in 0..self.n_out {
                let fd = (fhi[i] - flo[i]) / (h + h);
                let denom = S::one().max(jac[(i, j)].abs());
                let rel = (fd - jac[(i, j)]).abs() / denom;
                worst = worst.max(rel);
            }
        }
        if worst > S::from_f(1e-5) {
            return Err(ChainletError::JacobianMismatch(format!(
                "relative deviation {:.3e} at probe",
                worst.to_f()
            )));
        }
        Ok(())
    }
}

impl<S> std::fmt::Debug for SmoothMap<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothMap")
            .field("n_in", &self.n_in)
            .field("n_out", &self.n_out)
            .field("affine", &self.affine.is_some())
            .finish()
    }
}
