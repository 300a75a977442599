//! Dense k-vectors over the lexicographic basis `{e^H}` of the grade-k slice
//! of the exterior algebra, with the Euclidean inner product structure:
//! wedge, inner product, mass, Hodge star, interior (contraction) and cap
//! products, and spans of 1-vectors.

use crate::error::{ChainletError, Result};
use crate::exterior::multi_index::{binomial, MultiIndex, DIM_CAP};
use crate::scalar::Scalar;

/// A grade-k vector in R^n, stored densely over the lexicographic basis.
///
/// `{e^H}` is orthonormal, so the inner product is the dot product of
/// coefficient vectors and the mass is their Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct KVector<S> {
    n: usize,
    k: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> KVector<S> {
    pub fn zero(n: usize, k: usize) -> Self {
        debug_assert!(n <= DIM_CAP && k <= n);
        KVector {
            n,
            k,
            coeffs: vec![S::zero(); binomial(n, k)],
        }
    }

    /// Checked constructor from a full coefficient vector in lexicographic order.
    pub fn from_coeffs(n: usize, k: usize, coeffs: Vec<S>) -> Result<Self> {
        if n > DIM_CAP {
            return Err(ChainletError::DimensionCap { n, cap: DIM_CAP });
        }
        if k > n {
            return Err(ChainletError::GradeMismatch { expected: n, got: k });
        }
        if coeffs.len() != binomial(n, k) {
            return Err(ChainletError::InvalidInput(format!(
                "expected {} coefficients for grade {} in R^{}, got {}",
                binomial(n, k),
                k,
                n,
                coeffs.len()
            )));
        }
        Ok(KVector { n, k, coeffs })
    }

    /// The basis element `e^H`.
    pub fn basis(n: usize, h: &MultiIndex) -> Self {
        let mut v = KVector::zero(n, h.len());
        v.coeffs[h.rank(n)] = S::one();
        v
    }

    /// A single basis axis `e_i` (1-based) as a 1-vector.
    pub fn axis(n: usize, i: usize) -> Self {
        Self::basis(n, &MultiIndex::new(vec![i], n).expect("axis in range"))
    }

    /// A grade-0 scalar.
    pub fn scalar(n: usize, value: S) -> Self {
        KVector {
            n,
            k: 0,
            coeffs: vec![value],
        }
    }

    /// The volume element `e^1 ∧ e^2 ∧ ··· ∧ e^n`.
    pub fn vol(n: usize) -> Self {
        Self::basis(n, &MultiIndex::full(n))
    }

    /// A 1-vector from coordinates.
    pub fn from_vector(v: &[S]) -> Self {
        KVector {
            n: v.len(),
            k: 1,
            coeffs: v.to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `e^H`.
    pub fn coeff(&self, h: &MultiIndex) -> S {
        debug_assert_eq!(h.len(), self.k);
        self.coeffs[h.rank(self.n)]
    }

    pub fn set_coeff(&mut self, h: &MultiIndex, value: S) {
        let r = h.rank(self.n);
        self.coeffs[r] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == S::zero())
    }

    /// Nonzero terms as `(H, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> Vec<(MultiIndex, S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != S::zero())
            .map(|(r, c)| (MultiIndex::from_rank(r, self.n, self.k), *c))
            .collect()
    }

    pub fn scale(&self, c: S) -> Self {
        KVector {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &KVector<S>) -> Self {
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        KVector {
            n: self.n,
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &KVector<S>) -> Self {
        self.add(&other.scale(-S::one()))
    }

    /// Exterior product. Grade overflow `j + k > n` yields the canonical zero
    /// vector of grade n, since the corresponding slice is trivial.
    pub fn wedge(&self, other: &KVector<S>) -> Self {
        debug_assert_eq!(self.n, other.n);
        let grade = self.k + other.k;
        if grade > self.n {
            return KVector::zero(self.n, self.n);
        }
        let mut out = KVector::zero(self.n, grade);
        for (h, a) in self.terms() {
            for (l, b) in other.terms() {
                if let Some((sign, merged)) = h.merge(&l) {
                    let r = merged.rank(self.n);
                    let s = if sign > 0 { S::one() } else { -S::one() };
                    out.coeffs[r] += s * a * b;
                }
            }
        }
        out
    }

    /// Inner product `⟨α, β⟩ = det(⟨α_i, β_j⟩)`; on the orthonormal basis this
    /// is the dot product of coefficient vectors.
    pub fn inner(&self, other: &KVector<S>) -> Result<S> {
        if self.k != other.k {
            return Err(ChainletError::GradeMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        debug_assert_eq!(self.n, other.n);
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(S::zero(), |acc, (&a, &b)| acc + a * b))
    }

    /// Mass `M(α) = sqrt(⟨α, α⟩)`.
    pub fn mass(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, &c| acc + c * c)
            .sqrt()
    }

    /// Hodge star, determined by `α ∧ ★α = M(α)² vol` with the standard basis
    /// fixed as the positive orientation: `★e^H = ε e^{H^c}` where ε is the
    /// merge sign of `e^H ∧ e^{H^c}`.
    pub fn hodge_star(&self) -> Self {
        let mut out = KVector::zero(self.n, self.n - self.k);
        for (h, a) in self.terms() {
            let hc = h.complement(self.n);
            let (sign, _) = h.merge(&hc).expect("complement is disjoint");
            let s = if sign > 0 { S::one() } else { -S::one() };
            out.coeffs[hc.rank(self.n)] += s * a;
        }
        out
    }

    /// Interior product `α ⌊ β`: the unique grade `k - j` vector with
    /// `⟨α ⌊ β, γ⟩ = ⟨α, β ∧ γ⟩` for all γ. Requires `grade(β) <= grade(α)`.
    pub fn contract(&self, other: &KVector<S>) -> Result<Self> {
        if other.k > self.k {
            return Err(ChainletError::GradeMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        let grade = self.k - other.k;
        let mut out = KVector::zero(self.n, grade);
        for (r, g) in MultiIndex::all(self.n, grade).iter().enumerate() {
            let wedge = other.wedge(&KVector::basis(self.n, g));
            out.coeffs[r] = self.inner(&wedge)?;
        }
        Ok(out)
    }

    /// Cap product `α ∩ β`: the unique grade `k - j` vector with
    /// `⟨η, α ∩ β⟩ = ⟨η ∧ α, β⟩` for all η. Requires `grade(α) < grade(β)`.
    pub fn cap(&self, other: &KVector<S>) -> Result<Self> {
        if self.k >= other.k {
            return Err(ChainletError::GradeMismatch {
                expected: other.k,
                got: self.k,
            });
        }
        let grade = other.k - self.k;
        let mut out = KVector::zero(self.n, grade);
        for (r, g) in MultiIndex::all(self.n, grade).iter().enumerate() {
            let wedge = KVector::basis(self.n, g).wedge(self);
            out.coeffs[r] = wedge.inner(other)?;
        }
        Ok(out)
    }

    /// Iterated wedge of 1-vectors; dependent vectors yield zero.
    pub fn from_span(n: usize, vectors: &[Vec<S>]) -> Result<Self> {
        if n > DIM_CAP {
            return Err(ChainletError::DimensionCap { n, cap: DIM_CAP });
        }
        if vectors.len() > n {
            return Err(ChainletError::GradeMismatch {
                expected: n,
                got: vectors.len(),
            });
        }
        let mut acc = KVector::scalar(n, S::one());
        for v in vectors {
            if v.len() != n {
                return Err(ChainletError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            acc = acc.wedge(&KVector::from_vector(v));
        }
        Ok(acc)
    }

    /// Exact simplicity test for grade 2 (`α ∧ α = 0`); grades 0, 1, n-1 and n
    /// are always simple. Other grades are unsupported.
    pub fn is_simple(&self) -> Result<bool> {
        match self.k {
            0 | 1 => Ok(true),
            k if k == self.n || k + 1 == self.n => Ok(true),
            2 => Ok(self.wedge(self).is_zero()),
            k => Err(ChainletError::UnsupportedGrade { grade: k }),
        }
    }
}

impl<S: Scalar> std::fmt::Display for KVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(h, c)| format!("{}·{}", c, h))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
