//! Coefficient scalars shared by the series kernels.
//!
//! Everything numeric in the pipeline runs over `Complex<f64>`; the exact
//! identity suites instantiate the same generic code with `BigRational` so
//! that the operator and convolution laws can be checked without rounding.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssignOps};
use std::fmt::Debug;
use std::ops::Neg;

/// Double-precision complex scalar used by the numeric pipeline.
pub type C64 = Complex<f64>;

/// Exact rational scalar used by the identity suites.
pub type Rat = BigRational;

/// Field-like scalar the truncated-series kernels are generic over.
pub trait Scalar:
    Num + NumAssignOps + Neg<Output = Self> + Clone + PartialEq + FromPrimitive + Debug
{
}

impl<T> Scalar for T where
    T: Num + NumAssignOps + Neg<Output = T> + Clone + PartialEq + FromPrimitive + Debug
{
}

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
