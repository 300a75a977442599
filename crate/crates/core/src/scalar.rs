//! Scalar abstraction: the whole library is generic over the floating type.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating scalar the library computes with (`f32` or `f64` in practice).
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, for literals and tolerances.
    fn from_f(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert")
    }

    /// Conversion to `f64`, for reporting.
    fn to_f(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }

    fn from_us(x: usize) -> Self {
        Self::from_usize(x).expect("usize must convert")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Euclidean norm of a coordinate vector.
pub fn vec_norm<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |acc, &x| acc + x * x).sqrt()
}

/// Component-wise difference `a - b`.
pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Component-wise sum `a + b`.
pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

/// Scale a coordinate vector.
pub fn vec_scale<S: Scalar>(a: &[S], c: S) -> Vec<S> {
    a.iter().map(|&x| x * c).collect()
}

/// Dot product of coordinate vectors.
pub fn vec_dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}
