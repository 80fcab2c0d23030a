//! Floating-point abstraction shared by the numeric modules.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Real scalar usable by the labeling, spectral and dynamics code.
///
/// Implemented for `f32` and `f64`. Double precision is what the default
/// tolerances assume; `f32` works with proportionally looser tolerances.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Convert a literal, panicking only if the target cannot represent it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `n!` in the scalar type.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize_lossy(k))
}

/// The threshold constant `√5 − 2`.
pub fn beta_star<T: Scalar>() -> T {
    T::lit(5.0).sqrt() - T::lit(2.0)
}
