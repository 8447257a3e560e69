//! Scalar abstraction: the whole toolkit is generic over the coordinate type.

use std::fmt::{Debug, Display};

/// Floating-point scalar for coordinates, distances and angles: f32 or f64.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + num_traits::FloatConst
    + Debug
    + Display
    + Default
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from an f64 literal.
    fn from_f64_lit(v: f64) -> Self {
        num_traits::FromPrimitive::from_f64(v).expect("finite f64 literal")
    }

    /// Geometric tolerance for incidence tests, in coordinate units.
    ///
    /// Environments are expected to be normalized so the bounding-box
    /// diagonal is O(1)..O(100); one fixed tolerance keeps every predicate
    /// auditable.
    fn geom_eps() -> Self {
        Self::from_f64_lit(1e-9)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Total order for finite scalars. Panics on NaN, which the environment
/// invariants exclude.
pub fn cmp_finite<S: Real>(a: S, b: S) -> std::cmp::Ordering {
    a.partial_cmp(&b).expect("scalar values are finite")
}
