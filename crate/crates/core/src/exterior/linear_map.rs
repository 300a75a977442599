//! Linear maps on R^n and their grade-k lifts acting on k-vectors.

use std::sync::OnceLock;

use crate::exterior::kvector::KVector;
use crate::exterior::multi_index::{binomial, MultiIndex};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Push a k-vector through a (possibly rectangular) matrix: basis elements map
/// to the wedge of the corresponding image columns.
pub fn pushforward_by_matrix<S: Scalar>(matrix: &Mat<S>, a: &KVector<S>) -> KVector<S> {
    let m = matrix.rows;
    debug_assert_eq!(matrix.cols, a.n());
    let k = a.grade();
    if k > m {
        return KVector::zero(m, m);
    }
    let mut out = KVector::zero(m, k);
    for (h, c) in a.terms() {
        let mut img = KVector::scalar(m, S::one());
        for &axis in h.indices() {
            img = img.wedge(&KVector::from_vector(&matrix.col(axis - 1)));
        }
        out = out.add(&img.scale(c));
    }
    out
}

/// A square linear transformation of R^n with its grade-k lifts cached on
/// demand. The lift of the identity is the identity on every grade.
pub struct LinearMap<S> {
    matrix: Mat<S>,
    lifts: Vec<OnceLock<Mat<S>>>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(matrix: Mat<S>) -> Self {
        assert_eq!(matrix.rows, matrix.cols, "linear map must be square");
        let n = matrix.rows;
        LinearMap {
            matrix,
            lifts: (0..=n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(Mat::identity(n))
    }

    pub fn n(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.matrix
    }

    pub fn compose(&self, other: &LinearMap<S>) -> LinearMap<S> {
        LinearMap::new(self.matrix.matmul(&other.matrix))
    }

    /// The grade-k lift as a C(n,k) × C(n,k) matrix over the lexicographic basis.
    pub fn lift(&self, k: usize) -> &Mat<S> {
        let n = self.n();
        assert!(k <= n);
        self.lifts[k].get_or_init(|| {
            let dim = binomial(n, k);
            let mut lift = Mat::zeros(dim, dim);
            for (col, h) in MultiIndex::all(n, k).iter().enumerate() {
                let img = pushforward_by_matrix(&self.matrix, &KVector::basis(n, h));
                for (row, &c) in img.coeffs().iter().enumerate() {
                    lift[(row, col)] = c;
                }
            }
            lift
        })
    }

    /// Apply the grade-k lift: `Λ^k T (α) = T(α_1) ∧ ··· ∧ T(α_k)` extended linearly.
    pub fn pushforward(&self, a: &KVector<S>) -> KVector<S> {
        let lift = self.lift(a.grade());
        let coeffs = lift.matvec(a.coeffs());
        KVector::from_coeffs(self.n(), a.grade(), coeffs).expect("lift preserves shape")
    }

    /// Determinant, read off as the action on the volume element.
    pub fn det(&self) -> S {
        self.matrix.det()
    }
}

/// Derivation extension of a square matrix M to grade k:
/// `D(M)(α_1∧···∧α_k) = Σ_j α_1 ∧ ··· ∧ Mα_j ∧ ··· ∧ α_k`.
///
/// This is the generator of `t ↦ Λ^k(exp(tM))` and drives the exact Lie
/// derivative of elements under linear vector fields.
pub fn derivation_extension<S: Scalar>(matrix: &Mat<S>, a: &KVector<S>) -> KVector<S> {
    let n = a.n();
    debug_assert_eq!(matrix.rows, n);
    let mut out = KVector::zero(n, a.grade());
    for (h, c) in a.terms() {
        for (pos, &axis) in h.indices().iter().enumerate() {
            let mut img = KVector::scalar(n, S::one());
            for (j, &other) in h.indices().iter().enumerate() {
                let factor = if j == pos {
                    KVector::from_vector(&matrix.col(axis - 1))
                } else {
                    KVector::axis(n, other)
                };
                img = img.wedge(&factor);
            }
            out = out.add(&img.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_lift_is_identity() {
        let id = LinearMap::<f64>::identity(4);
        for k in 0..=4 {
            for h in MultiIndex::all(4, k) {
                let v = KVector::basis(4, &h);
                assert_eq!(id.pushforward(&v), v);
            }
        }
    }

    #[test]
    fn diag_scales_vol_by_det() {
        let t = LinearMap::new(Mat::diagonal(&[2.0, 3.0]));
        let pushed = t.pushforward(&KVector::vol(2));
        assert_eq!(pushed, KVector::vol(2).scale(6.0));
        assert_eq!(t.det(), 6.0);
    }

    #[test]
    fn rotation_on_grade_one() {
        let theta = 0.7f64;
        let rot = LinearMap::new(Mat::from_rows(&[
            vec![theta.cos(), -theta.sin()],
            vec![theta.sin(), theta.cos()],
        ]));
        let img = rot.pushforward(&KVector::axis(2, 1));
        assert!((img.coeffs()[0] - theta.cos()).abs() < 1e-15);
        assert!((img.coeffs()[1] - theta.sin()).abs() < 1e-15);
        // rotations preserve the area form
        let vol = rot.pushforward(&KVector::vol(2));
        assert!((vol.coeffs()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivation_extension_matches_difference_quotient() {
        let m = Mat::from_rows(&[vec![0.3, -1.2, 0.0], vec![0.7, 0.1, 0.4], vec![0.0, 0.5, -0.2]]);
        let a = KVector::<f64>::from_span(3, &[vec![1.0, 2.0, 0.5], vec![-0.3, 1.0, 1.0]]).unwrap();
        let gen = derivation_extension(&m, &a);
        // compare with (Λ²(I+hM)α − α)/h
        let h = 1e-6;
        let perturbed = LinearMap::new(Mat::identity(3).add(&m.scale(h)));
        let fd = perturbed.pushforward(&a).sub(&a).scale(1.0 / h);
        for (x, y) in gen.coeffs().iter().zip(fd.coeffs()) {
            assert!((x - y).abs() < 1e-5, "{} vs {}", x, y);
        }
    }
}
