//! Floating-point scalar abstraction.
//!
//! All linear algebra in this crate is generic over a real scalar type so the
//! same code runs in `f64` (the default, and the precision every shipped
//! tolerance is stated for) or `f32`. The per-type tolerance constants scale
//! with the arithmetic: IEEE doubles resolve the stated `1e-10`-class
//! thresholds, single precision cannot, so its thresholds are widened.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar underlying amplitudes, axes, and every derived quantity.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance for constructor-time validation: state
    /// normalization, hermiticity and unitarity detection, unit-axis checks.
    fn validation_tol() -> Self;

    /// Norm below which a projected branch counts as zero-probability.
    fn branch_tol() -> Self;

    /// Threshold on `|a x b|` below which observable axes count as parallel.
    fn axis_tol() -> Self;

    /// Most negative variance accepted from rounding before `std_dev`
    /// reports numerical corruption; anything in `[-floor, 0)` clamps to 0.
    fn variance_floor() -> Self;

    /// Bracket width at which the boundary line search stops.
    fn bracket_tol() -> Self;

    /// Converts an `f64` literal into this scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal must be representable")
    }
}

impl Real for f64 {
    fn validation_tol() -> Self {
        1e-10
    }
    fn branch_tol() -> Self {
        1e-12
    }
    fn axis_tol() -> Self {
        1e-10
    }
    fn variance_floor() -> Self {
        1e-12
    }
    fn bracket_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn validation_tol() -> Self {
        1e-5
    }
    fn branch_tol() -> Self {
        1e-6
    }
    fn axis_tol() -> Self {
        1e-5
    }
    fn variance_floor() -> Self {
        1e-6
    }
    fn bracket_tol() -> Self {
        1e-6
    }
}
