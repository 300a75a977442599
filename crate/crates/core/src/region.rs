//! Axis-aligned boxes used as sampling regions and quantization sources.

use crate::error::{ChainletError, Result};
use crate::scalar::Scalar;

/// The box `[lo_1, hi_1] × ··· × [lo_n, hi_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisBox<S> {
    pub lo: Vec<S>,
    pub hi: Vec<S>,
}

impl<S: Scalar> AxisBox<S> {
    pub fn new(lo: Vec<S>, hi: Vec<S>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(ChainletError::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        for (a, b) in lo.iter().zip(&hi) {
            if a > b {
                return Err(ChainletError::InvalidInput(
                    "box has lo > hi on some axis".into(),
                ));
            }
        }
        Ok(AxisBox { lo, hi })
    }

    /// The unit cube `[0, 1]^n`.
    pub fn unit(n: usize) -> Self {
        AxisBox {
            lo: vec![S::zero(); n],
            hi: vec![S::one(); n],
        }
    }

    /// The centered cube `[-r, r]^n`.
    pub fn centered(n: usize, r: S) -> Self {
        AxisBox {
            lo: vec![-r; n],
            hi: vec![r; n],
        }
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &[S]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (a, b))| x >= a && x <= b)
    }

    pub fn widths(&self) -> Vec<S> {
        self.lo.iter().zip(&self.hi).map(|(&a, &b)| b - a).collect()
    }

    pub fn volume(&self) -> S {
        self.widths().iter().fold(S::one(), |acc, &w| acc * w)
    }

    /// The corner of largest coordinate magnitudes, axis by axis. Products of
    /// `|x_i|` powers over the box attain their maximum here.
    pub fn max_abs_corner(&self) -> Vec<S> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&a, &b)| if a.abs() > b.abs() { a } else { b })
            .collect()
    }

    /// Grid of sample points with roughly `per_axis` points per axis,
    /// endpoints included.
    pub fn sample_grid(&self, per_axis: usize) -> Vec<Vec<S>> {
        let n = self.n();
        let per_axis = per_axis.max(2);
        let mut points = Vec::new();
        let total = per_axis.pow(n as u32);
        for flat in 0..total {
            let mut rest = flat;
            let mut p = Vec::with_capacity(n);
            for i in 0..n {
                let idx = rest % per_axis;
                rest /= per_axis;
                let t = S::from_us(idx) / S::from_us(per_axis - 1);
                p.push(self.lo[i] + (self.hi[i] - self.lo[i]) * t);
            }
            points.push(p);
        }
        points
    }
}
