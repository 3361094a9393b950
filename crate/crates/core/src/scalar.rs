//! Scalar abstraction shared by every numeric stage of the simulator.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Floating point type usable by the DSP chain: `f32` or `f64`.
pub trait Real: Float + FloatConst + FftNum + Display + Debug + Sum + Default {
    /// Lossy conversion from an `f64` literal or configuration value.
    fn lit(x: f64) -> Self;
    /// Widening conversion used for statistics and reporting.
    fn as_f64(self) -> f64;
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

/// Complex sample over the chosen scalar.
pub type Cpx<T> = num_complex::Complex<T>;

