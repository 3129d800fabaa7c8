//! Core value types: body parts, part states, and the six-part action.
//!
//! An action assigns one of three states to each of six body parts, giving a
//! discrete space of 3^6 = 729 actions. Actions carry a canonical base-3
//! integer encoding (part 0 is the least significant digit) so diversity
//! counts and CSV output are comparable across runs.

use crate::error::{Error, Result};

/// Number of body parts in an action.
pub const PART_COUNT: usize = 6;

/// One of the six body parts, in canonical index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BodyPart {
    LeftArm = 0,
    RightArm = 1,
    LeftLeg = 2,
    RightLeg = 3,
    Head = 4,
    Hips = 5,
}

impl BodyPart {
    pub const ALL: [BodyPart; PART_COUNT] = [
        BodyPart::LeftArm,
        BodyPart::RightArm,
        BodyPart::LeftLeg,
        BodyPart::RightLeg,
        BodyPart::Head,
        BodyPart::Hips,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The opposite limb of a pair; `None` for head and hips.
    pub fn partner(self) -> Option<BodyPart> {
        match self {
            BodyPart::LeftArm => Some(BodyPart::RightArm),
            BodyPart::RightArm => Some(BodyPart::LeftArm),
            BodyPart::LeftLeg => Some(BodyPart::RightLeg),
            BodyPart::RightLeg => Some(BodyPart::LeftLeg),
            BodyPart::Head | BodyPart::Hips => None,
        }
    }
}

/// Placement of a single body part: at rest, or moving left or right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PartState {
    #[default]
    Stationary = 0,
    Left = 1,
    Right = 2,
}

impl PartState {
    pub fn is_moving(self) -> bool {
        self != PartState::Stationary
    }

    /// Swaps left and right; stationary is unchanged.
    pub fn mirrored(self) -> PartState {
        match self {
            PartState::Stationary => PartState::Stationary,
            PartState::Left => PartState::Right,
            PartState::Right => PartState::Left,
        }
    }

    fn digit(self) -> u16 {
        self as u16
    }

    fn from_digit(digit: u16) -> PartState {
        match digit {
            0 => PartState::Stationary,
            1 => PartState::Left,
            2 => PartState::Right,
            _ => unreachable!("base-3 digit"),
        }
    }
}

/// A six-part posture/movement assignment: the unit that agents implement,
/// observe, and imitate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Action {
    states: [PartState; PART_COUNT],
}

impl Action {
    /// Size of the action space.
    pub const COUNT: usize = 729;

    pub fn new(states: [PartState; PART_COUNT]) -> Self {
        Action { states }
    }

    /// The all-stationary action every agent starts with.
    pub fn immobile() -> Self {
        Action::default()
    }

    pub fn state(&self, part: BodyPart) -> PartState {
        self.states[part.index()]
    }

    pub fn set_state(&mut self, part: BodyPart, state: PartState) {
        self.states[part.index()] = state;
    }

    pub fn states(&self) -> &[PartState; PART_COUNT] {
        &self.states
    }

    /// Canonical base-3 index in `0..=728`, part 0 least significant.
    pub fn encode(&self) -> u16 {
        let mut code = 0u16;
        for part in BodyPart::ALL.iter().rev() {
            code = code * 3 + self.states[part.index()].digit();
        }
        code
    }

    /// Inverse of [`Action::encode`]; rejects indices outside `0..=728`.
    pub fn decode(encoding: u16) -> Result<Self> {
        if encoding as usize >= Self::COUNT {
            return Err(Error::EncodingOutOfRange(encoding as u32));
        }
        let mut rest = encoding;
        let mut states = [PartState::Stationary; PART_COUNT];
        for state in states.iter_mut() {
            *state = PartState::from_digit(rest % 3);
            rest /= 3;
        }
        Ok(Action { states })
    }

    /// Iterates over the full action space in encoding order.
    pub fn all() -> impl Iterator<Item = Action> {
        (0..Self::COUNT as u16).map(|code| Action::decode(code).expect("in-range encoding"))
    }

    /// The action with every left/right assignment exchanged.
    pub fn mirrored(&self) -> Action {
        let mut states = self.states;
        for state in states.iter_mut() {
            *state = state.mirrored();
        }
        Action { states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn immobile_encodes_to_zero() {
        assert_eq!(Action::immobile().encode(), 0);
    }

    #[test]
    fn unit_digit_is_left_arm() {
        let mut action = Action::immobile();
        action.set_state(BodyPart::LeftArm, PartState::Left);
        assert_eq!(action.encode(), 1);
        assert_eq!(Action::decode(1).unwrap(), action);
    }

    #[test]
    fn highest_digit_is_hips() {
        // 2 * 3^5
        let mut action = Action::immobile();
        action.set_state(BodyPart::Hips, PartState::Right);
        assert_eq!(action.encode(), 486);
    }

    #[test]
    fn last_encoding_is_all_right() {
        let action = Action::decode(728).unwrap();
        assert!(action
            .states()
            .iter()
            .all(|&state| state == PartState::Right));
    }

    #[test]
    fn out_of_range_encoding_rejected() {
        assert_eq!(
            Action::decode(729).unwrap_err(),
            Error::EncodingOutOfRange(729)
        );
    }

    #[test]
    fn exhaustive_round_trip() {
        for code in 0..Action::COUNT as u16 {
            assert_eq!(Action::decode(code).unwrap().encode(), code);
        }
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        let encodings: HashSet<u16> = Action::all().map(|action| action.encode()).collect();
        assert_eq!(encodings.len(), Action::COUNT);
    }

    #[test]
    fn mirror_is_an_involution() {
        for action in Action::all() {
            assert_eq!(action.mirrored().mirrored(), action);
        }
    }

    #[test]
    fn partner_pairs_are_symmetric() {
        for part in BodyPart::ALL {
            match part.partner() {
                Some(partner) => assert_eq!(partner.partner(), Some(part)),
                None => assert!(matches!(part, BodyPart::Head | BodyPart::Hips)),
            }
        }
    }
}
