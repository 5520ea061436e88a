//! Floating-point abstraction for the simulation kernels.
//!
//! Everything that touches amplitudes, gradients, or Fisher matrices is
//! generic over [`Scalar`] so the whole stack can run in `f32` or `f64`.
//! Problem data (graph weights, couplings) stays `f64` and is converted at
//! the boundary.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable for statevector simulation.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Send
    + Sync
    + Debug
    + Display
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` constant into the active scalar type.
///
/// Panics only if the target type cannot represent any `f64`, which cannot
/// happen for the two implementors.
#[inline]
pub fn cast<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert to the scalar type")
}
