//! Scalar abstraction for the real-valued side of the model.
//!
//! Fitness values, operator probabilities, and aggregate statistics are
//! generic over [`Real`], which is satisfied by `f32` and `f64`. Concrete
//! aliases for the main configuration types live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, NumCast};

/// Floating-point scalar used for fitness and probability arithmetic.
pub trait Real: Float + Sum<Self> + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` constant into the scalar type.
    fn of(value: f64) -> Self {
        <Self as NumCast>::from(value).expect("constant must be representable")
    }

    /// Converts a count into the scalar type.
    fn from_count(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("count must be representable")
    }

    /// Widens to `f64` for probability draws and reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must widen to f64")
    }

    /// Clamps into the unit interval.
    fn clamp_unit(self) -> Self {
        self.max(Self::zero()).min(Self::one())
    }

    /// True when the value is a valid probability (finite, within `[0, 1]`).
    fn is_probability(self) -> bool {
        self >= Self::zero() && self <= Self::one()
    }
}

impl Real for f32 {}
impl Real for f64 {}
