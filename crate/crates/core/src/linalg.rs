//! Minimal dense matrix helpers; the dimensions here never exceed the ambient cap.

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(d: &[S]) -> Self {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Column `j` as a coordinate vector.
    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| acc + self[(i, j)] * v[j])
            })
            .collect()
    }

    pub fn matmul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, l| acc + self[(i, l)] * other[(l, j)])
        })
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: S) -> Mat<S> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * c)
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    /// Determinant via LU with partial pivoting. Square matrices only.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut pivot = col;
            for row in col + 1..n {
                if a[(row, col)].abs() > a[(pivot, col)].abs() {
                    pivot = row;
                }
            }
            if a[(pivot, col)] == S::zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(pivot, j)];
                    a[(pivot, j)] = tmp;
                }
                det = -det;
            }
            det *= a[(col, col)];
            for row in col + 1..n {
                let factor = a[(row, col)] / a[(col, col)];
                for j in col..n {
                    let sub = factor * a[(col, j)];
                    a[(row, j)] -= sub;
                }
            }
        }
        det
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Gram matrix of a set of coordinate vectors.
pub fn gram<S: Scalar>(vectors: &[Vec<S>]) -> Mat<S> {
    Mat::from_fn(vectors.len(), vectors.len(), |i, j| {
        crate::scalar::vec_dot(&vectors[i], &vectors[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_diagonal() {
        let m = Mat::diagonal(&[2.0, 3.0, -4.0]);
        assert_eq!(m.det(), -24.0);
    }

    #[test]
    fn det_needs_pivot() {
        let m = Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(m.det(), -1.0);
    }

    #[test]
    fn matmul_identity() {
        let m = Mat::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let id = Mat::identity(2);
        assert_eq!(m.matmul(&id), m);
    }
}
