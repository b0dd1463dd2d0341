//! Scalar abstractions shared by the numeric parts of the crate.

use num_traits::{Float, FromPrimitive, NumAssign, Signed, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating point type the flow, root finder and integrator are generic over.
pub trait Real:
    Float
    + Signed
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64` (exact for `f64` itself).
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
