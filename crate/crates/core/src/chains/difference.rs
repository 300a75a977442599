//! Difference cells: iterated translation differences of a generating cell,
//! `σ^{j+1} = σ^j − T_{v_{j+1}} σ^j`, with their exact product-formula norms.

use crate::chains::poly_chain::PolyChain;
use crate::scalar::{vec_add, vec_norm, Scalar};

/// A j-difference k-cell: generating chain plus translation vectors.
#[derive(Debug, Clone)]
pub struct DifferenceCell<S> {
    pub base: PolyChain<S>,
    pub vectors: Vec<Vec<S>>,
}

impl<S: Scalar> DifferenceCell<S> {
    pub fn new(base: PolyChain<S>, vectors: Vec<Vec<S>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), base.n());
        }
        DifferenceCell { base, vectors }
    }

    pub fn order(&self) -> usize {
        self.vectors.len()
    }

    /// Expansion into `2^j` signed translates by inclusion-exclusion.
    pub fn expand(&self) -> PolyChain<S> {
        let j = self.order();
        let mut acc = PolyChain::empty(self.base.n(), self.base.dim());
        for mask in 0u32..(1 << j) {
            let mut shift = vec![S::zero(); self.base.n()];
            let mut sign = S::one();
            for (bit, v) in self.vectors.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    shift = vec_add(&shift, v);
                    sign = -sign;
                }
            }
            acc = acc.add(&self.base.translate(&shift).scale(sign));
        }
        acc
    }

    /// `‖σ^j‖_j = M(σ^0) |v_1| ··· |v_j|`; order 0 is the mass.
    pub fn norm(&self) -> S {
        self.vectors
            .iter()
            .fold(self.base.mass(), |acc, v| acc * vec_norm(v))
    }
}

/// A weighted sum of difference cells of a common order.
#[derive(Debug, Clone)]
pub struct DifferenceChain<S> {
    pub cells: Vec<(S, DifferenceCell<S>)>,
}

impl<S: Scalar> DifferenceChain<S> {
    pub fn new(cells: Vec<(S, DifferenceCell<S>)>) -> Self {
        if let Some((_, first)) = cells.first() {
            let order = first.order();
            for (_, c) in &cells {
                assert_eq!(c.order(), order, "mixed orders in one difference chain");
            }
        }
        DifferenceChain { cells }
    }

    pub fn empty() -> Self {
        DifferenceChain { cells: vec![] }
    }

    pub fn order(&self) -> Option<usize> {
        self.cells.first().map(|(_, c)| c.order())
    }

    /// `‖D^j‖_j = Σ |a_i| ‖σ_i^j‖_j`.
    pub fn norm(&self) -> S {
        self.cells
            .iter()
            .fold(S::zero(), |acc, (a, c)| acc + a.abs() * c.norm())
    }

    pub fn expand(&self, n: usize, k: usize) -> PolyChain<S> {
        let mut acc = PolyChain::empty(n, k);
        for (a, c) in &self.cells {
            acc = acc.add(&c.expand().scale(*a));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MultiIndex;

    fn unit_square() -> PolyChain<f64> {
        PolyChain::axis_cube(&[0.0, 0.0], &MultiIndex::full(2), 1.0).unwrap()
    }

    #[test]
    fn order_zero_expands_to_base() {
        let d = DifferenceCell::new(unit_square(), vec![]);
        let e = d.expand();
        assert!((e.mass() - 1.0).abs() < 1e-15);
        assert!((d.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_one_is_base_minus_translate() {
        let d = DifferenceCell::new(unit_square(), vec![vec![3.0, 0.0]]);
        let e = d.expand();
        // disjoint translate: total mass 2, net Vec = 0
        assert!((e.mass() - 2.0).abs() < 1e-15);
        assert!(e.vec().mass() < 1e-15);
        // ‖σ¹‖₁ = M(σ⁰)·|v| with v = (0.25, 0): 0.25
        let d = DifferenceCell::new(unit_square(), vec![vec![0.25, 0.0]]);
        assert!((d.norm() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn repeated_vector_gives_second_difference() {
        // order 2 with v1 = v2 = v: σ − 2T_vσ + T_{2v}σ
        let v = vec![5.0, 0.0];
        let d = DifferenceCell::new(unit_square(), vec![v.clone(), v]);
        let e = d.expand();
        assert!((e.mass() - 4.0).abs() < 1e-15, "1 + 2 + 1 copies by mass");
        assert_eq!(e.terms().len(), 6, "three squares, two triangles each");
    }

    #[test]
    fn weighted_difference_norm() {
        // coefficient −3, base mass 2, |v1| = 0.5, |v2| = 0.1 → 0.3
        let base = PolyChain::axis_cube(&[0.0, 0.0], &MultiIndex::full(2), 2.0_f64.sqrt())
            .unwrap();
        let cell = DifferenceCell::new(base, vec![vec![0.5, 0.0], vec![0.0, 0.1]]);
        let chain = DifferenceChain::new(vec![(-3.0, cell)]);
        assert!((chain.norm() - 0.3).abs() < 1e-12);
    }
}
