//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// The associated tolerances are the slack used when validating states and
/// matrices built from this scalar. The `f64` values are the working
/// tolerances of the crate; the `f32` ones are scaled to its precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation from Hermiticity and from unit trace.
    const STRUCTURE_TOL: f64;
    /// Eigenvalues down to `-PSD_TOL` still count as non-negative.
    const PSD_TOL: f64;
    /// Off-diagonal norm at which the Jacobi sweeps stop.
    const JACOBI_TOL: f64;

    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const STRUCTURE_TOL: f64 = 1e-12;
    const PSD_TOL: f64 = 1e-10;
    const JACOBI_TOL: f64 = 1e-13;
}

impl Real for f32 {
    const STRUCTURE_TOL: f64 = 1e-5;
    const PSD_TOL: f64 = 1e-5;
    const JACOBI_TOL: f64 = 1e-6;
}
