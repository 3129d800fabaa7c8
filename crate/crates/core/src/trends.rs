//! Movement and symmetry signals extracted from an action.
//!
//! The fitness function and the knowledge-based operators both consume these
//! two signals. They are computed directly from the action structure; the
//! [`TrendDetector`] trait is the seam through which a learned detector could
//! be substituted.

use crate::domain::{Action, BodyPart};

/// The two trend signals of an action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrendSignals {
    /// Count of non-stationary parts, `0..=6`.
    pub movement: u8,
    /// Count of limb pairs moving in opposite directions, `0..=2`.
    pub symmetry: u8,
}

impl TrendSignals {
    pub fn of(action: &Action) -> TrendSignals {
        TrendSignals {
            movement: movement_activation(action),
            symmetry: symmetry_activation(action),
        }
    }
}

/// How many of the six parts are moving.
pub fn movement_activation(action: &Action) -> u8 {
    action
        .states()
        .iter()
        .filter(|state| state.is_moving())
        .count() as u8
}

/// How many limb pairs (arms, legs) move in opposite directions. Head and
/// hips are unpaired and never contribute.
pub fn symmetry_activation(action: &Action) -> u8 {
    let pairs = [
        (BodyPart::LeftArm, BodyPart::RightArm),
        (BodyPart::LeftLeg, BodyPart::RightLeg),
    ];
    pairs
        .iter()
        .filter(|&&(a, b)| {
            let (sa, sb) = (action.state(a), action.state(b));
            sa.is_moving() && sb == sa.mirrored()
        })
        .count() as u8
}

/// Source of trend signals for an action.
pub trait TrendDetector {
    fn signals(&self, action: &Action) -> TrendSignals;
}

/// Default detector: computes the signals straight from the action.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectTrends;

impl TrendDetector for DirectTrends {
    fn signals(&self, action: &Action) -> TrendSignals {
        TrendSignals::of(action)
    }
}
