//! Oriented affine k-simplices in R^n.

use crate::error::{ChainletError, Result};
use crate::exterior::KVector;
use crate::linalg::gram;
use crate::scalar::{vec_sub, Scalar};

/// Tolerance on the edge Gram determinant below which a simplex counts as
/// degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// An oriented k-simplex: k+1 vertices and an orientation sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex<S> {
    vertices: Vec<Vec<S>>,
    orientation: i8,
}

impl<S: Scalar> Simplex<S> {
    pub fn new(vertices: Vec<Vec<S>>, orientation: i8) -> Result<Self> {
        if vertices.is_empty() {
            return Err(ChainletError::InvalidInput("simplex needs vertices".into()));
        }
        let n = vertices[0].len();
        if vertices.len() > n + 1 {
            return Err(ChainletError::InvalidInput(format!(
                "{}-simplex does not fit in R^{}",
                vertices.len() - 1,
                n
            )));
        }
        for v in &vertices {
            if v.len() != n {
                return Err(ChainletError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if orientation != 1 && orientation != -1 {
            return Err(ChainletError::InvalidInput("orientation must be ±1".into()));
        }
        Ok(Simplex {
            vertices,
            orientation,
        })
    }

    pub fn positively_oriented(vertices: Vec<Vec<S>>) -> Result<Self> {
        Simplex::new(vertices, 1)
    }

    /// A 0-simplex (a point).
    pub fn point(p: Vec<S>) -> Self {
        Simplex {
            vertices: vec![p],
            orientation: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn flip(&self) -> Simplex<S> {
        Simplex {
            vertices: self.vertices.clone(),
            orientation: -self.orientation,
        }
    }

    /// Edge vectors `v_i − v_0`.
    pub fn edges(&self) -> Vec<Vec<S>> {
        self.vertices[1..]
            .iter()
            .map(|v| vec_sub(v, &self.vertices[0]))
            .collect()
    }

    /// k-volume `sqrt(det Gram(edges)) / k!`; 0-simplices have mass 1.
    pub fn mass(&self) -> S {
        let k = self.dim();
        if k == 0 {
            return S::one();
        }
        let g = gram(&self.edges()).det().max(S::zero());
        g.sqrt() / S::from_us(factorial(k))
    }

    /// Degenerate when the edge Gram determinant vanishes within tolerance.
    pub fn is_degenerate(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return false;
        }
        let edges = self.edges();
        let scale = edges
            .iter()
            .flat_map(|e| e.iter())
            .fold(S::one(), |acc, &x| acc.max(x.abs()));
        let g = gram(&edges).det();
        g <= S::from_f(DEGENERACY_TOL) * scale.powi(2 * k as i32)
    }

    /// The simple k-vector with the simplex's mass and oriented direction:
    /// `Vec(σ) = orientation · (edge_1 ∧ ··· ∧ edge_k) / k!`.
    pub fn vec(&self) -> KVector<S> {
        let k = self.dim();
        if k == 0 {
            return KVector::scalar(self.n(), S::from_f(self.orientation as f64));
        }
        let wedge = KVector::from_span(self.n(), &self.edges()).expect("edges fit ambient");
        wedge.scale(S::from_f(self.orientation as f64) / S::from_us(factorial(k)))
    }

    /// Alternating-face boundary as `(sign, face)` pairs; empty for k = 0.
    pub fn boundary_faces(&self) -> Vec<(i8, Simplex<S>)> {
        let k = self.dim();
        if k == 0 {
            return vec![];
        }
        (0..=k)
            .map(|drop| {
                let verts: Vec<Vec<S>> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, v)| v.clone())
                    .collect();
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                (
                    sign * self.orientation,
                    Simplex {
                        vertices: verts,
                        orientation: 1,
                    },
                )
            })
            .collect()
    }

    pub fn translate(&self, v: &[S]) -> Simplex<S> {
        Simplex {
            vertices: self
                .vertices
                .iter()
                .map(|p| p.iter().zip(v).map(|(&x, &d)| x + d).collect())
                .collect(),
            orientation: self.orientation,
        }
    }

    /// Vertices sorted lexicographically with the permutation parity folded
    /// into a sign; the canonical key for chain merging.
    pub fn sorted_with_sign(&self) -> (i8, Vec<Vec<S>>) {
        let mut verts = self.vertices.clone();
        // insertion sort, counting swaps for the parity
        let mut swaps = 0usize;
        for i in 1..verts.len() {
            let mut j = i;
            while j > 0 && lex_less(&verts[j], &verts[j - 1]) {
                verts.swap(j, j - 1);
                swaps += 1;
                j -= 1;
            }
        }
        let parity = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (parity * self.orientation, verts)
    }
}

pub(crate) fn factorial(k: usize) -> usize {
    (1..=k).product::<usize>().max(1)
}

fn lex_less<S: Scalar>(a: &[S], b: &[S]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_triangle_mass_and_vec() {
        let t = Simplex::<f64>::positively_oriented(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        assert!((t.mass() - 0.5).abs() < 1e-15);
        let v = t.vec();
        assert!((v.coeffs()[0] - 0.5).abs() < 1e-15);
        assert!(!t.is_degenerate());
    }

    #[test]
    fn degenerate_detection() {
        let t = Simplex::<f64>::positively_oriented(vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![2.0, 2.0],
        ])
        .unwrap();
        assert!(t.is_degenerate());
        assert!(t.mass().abs() < 1e-7);
    }

    #[test]
    fn boundary_of_segment() {
        let seg = Simplex::<f64>::positively_oriented(vec![vec![0.0], vec![1.0]]).unwrap();
        let faces = seg.boundary_faces();
        assert_eq!(faces.len(), 2);
        // {b} − {a}
        assert_eq!(faces[0].0, 1);
        assert_eq!(faces[0].1.vertices()[0], vec![1.0]);
        assert_eq!(faces[1].0, -1);
        assert_eq!(faces[1].1.vertices()[0], vec![0.0]);
    }

    #[test]
    fn parity_of_vertex_sort() {
        let t = Simplex::<f64>::positively_oriented(vec![
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        // [(1,0),(0,0),(0,1)] sorts to [(0,0),(0,1),(1,0)] by a 3-cycle: even
        let (sign, verts) = t.sorted_with_sign();
        assert_eq!(sign, 1);
        assert_eq!(verts[0], vec![0.0, 0.0]);
    }
}
