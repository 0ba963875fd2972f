use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Field-like scalar used by the polynomial and spectrum kernels.
///
/// Implemented for `f32`, `f64` and exact rationals (`BigRational`), which lets
/// the same code produce floating-point values and exact oracle values.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = T> + FromPrimitive + ToPrimitive
{
}

/// Floating-point scalar for everything that needs transcendental functions.
pub trait Real: Scalar + Float + Copy + Display + Send + Sync + 'static {
    /// Converts an `f64` literal; every constant in this crate is representable.
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 literal is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
