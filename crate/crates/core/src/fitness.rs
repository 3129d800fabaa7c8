//! The mating-display fitness of an action.
//!
//! Fitness rewards the two trend signals linearly: each moving part is worth
//! `movement` and each opposite-direction limb pair is worth `symmetry`. The
//! pair reward is what couples limbs together — moving one arm is worth the
//! movement weight alone, but completes a pair worth the symmetry weight on
//! top when the other arm already moves the opposite way.

use crate::domain::Action;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::trends::TrendSignals;

/// Weights of the two fitness terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessWeights<R: Real> {
    /// Reward per moving part.
    pub movement: R,
    /// Reward per opposite-direction limb pair.
    pub symmetry: R,
}

impl<R: Real> Default for FitnessWeights<R> {
    /// Movement 1, symmetry 5: symmetry dominates raw movement, so the
    /// highest-fitness actions move everything and complete both pairs.
    fn default() -> Self {
        FitnessWeights {
            movement: R::one(),
            symmetry: R::of(5.0),
        }
    }
}

impl<R: Real> FitnessWeights<R> {
    pub fn new(movement: R, symmetry: R) -> Self {
        FitnessWeights { movement, symmetry }
    }

    /// Both weights must be finite and non-negative.
    pub fn validate(&self) -> Result<()> {
        if !(self.movement >= R::zero() && self.movement.is_finite()) {
            return Err(Error::invalid("w_move", "must be a finite value >= 0"));
        }
        if !(self.symmetry >= R::zero() && self.symmetry.is_finite()) {
            return Err(Error::invalid("w_sym", "must be a finite value >= 0"));
        }
        Ok(())
    }

    /// Fitness of an action: the mental-simulation oracle agents use before
    /// implementing an idea.
    pub fn evaluate(&self, action: &Action) -> R {
        self.evaluate_signals(TrendSignals::of(action))
    }

    pub fn evaluate_signals(&self, signals: TrendSignals) -> R {
        self.movement * R::from_count(signals.movement as usize)
            + self.symmetry * R::from_count(signals.symmetry as usize)
    }

    /// Largest fitness any action can reach under these weights.
    pub fn maximum(&self) -> R {
        self.movement * R::of(6.0) + self.symmetry * R::of(2.0)
    }
}

/// One row of the exhaustive fitness table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessTableRow<R: Real> {
    pub encoding: u16,
    pub movement: u8,
    pub symmetry: u8,
    pub fitness: R,
}

/// Evaluates every one of the 729 actions, in encoding order.
///
/// This is the enumeration oracle behind convergence checks and the
/// `fitness-table` CLI subcommand.
pub fn enumerate_fitness_table<R: Real>(weights: &FitnessWeights<R>) -> Vec<FitnessTableRow<R>> {
    Action::all()
        .map(|action| {
            let signals = TrendSignals::of(&action);
            FitnessTableRow {
                encoding: action.encode(),
                movement: signals.movement,
                symmetry: signals.symmetry,
                fitness: weights.evaluate_signals(signals),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BodyPart, PartState};

    #[test]
    fn immobile_action_has_zero_fitness() {
        let weights = FitnessWeights::<f64>::default();
        assert_eq!(weights.evaluate(&Action::immobile()), 0.0);
    }

    #[test]
    fn opposite_arms_score_movement_plus_pair() {
        // Two moving parts plus one symmetric pair: 2*1 + 1*5.
        let mut action = Action::immobile();
        action.set_state(BodyPart::LeftArm, PartState::Left);
        action.set_state(BodyPart::RightArm, PartState::Right);
        let weights = FitnessWeights::<f64>::default();
        assert_eq!(weights.evaluate(&action), 7.0);
    }

    #[test]
    fn table_is_complete_and_sorted() {
        let table = enumerate_fitness_table(&FitnessWeights::<f64>::default());
        assert_eq!(table.len(), Action::COUNT);
        assert_eq!(table[0].encoding, 0);
        assert_eq!(table[0].fitness, 0.0);
        assert!(table.windows(2).all(|w| w[0].encoding < w[1].encoding));
    }

    #[test]
    fn maximum_is_sixteen_attained_sixteen_times() {
        let weights = FitnessWeights::<f64>::default();
        let table = enumerate_fitness_table(&weights);
        let max = table.iter().map(|row| row.fitness).fold(0.0, f64::max);
        assert_eq!(max, 16.0);
        assert_eq!(weights.maximum(), 16.0);
        let argmax = table.iter().filter(|row| row.fitness == max).count();
        assert_eq!(argmax, 16);
    }

    #[test]
    fn mirror_invariance_exhaustive() {
        let weights = FitnessWeights::<f64>::default();
        for action in Action::all() {
            assert_eq!(weights.evaluate(&action.mirrored()), weights.evaluate(&action));
        }
    }

    #[test]
    fn monotone_in_movement_exhaustive() {
        // Setting any stationary part in motion never lowers fitness.
        let weights = FitnessWeights::<f64>::default();
        for action in Action::all() {
            let base = weights.evaluate(&action);
            for part in BodyPart::ALL {
                if action.state(part).is_moving() {
                    continue;
                }
                for state in [PartState::Left, PartState::Right] {
                    let mut moved = action;
                    moved.set_state(part, state);
                    assert!(weights.evaluate(&moved) >= base);
                }
            }
        }
    }

    #[test]
    fn epistasis_witness() {
        // The payoff for moving the right arm depends on the left arm: the
        // deltas differ by exactly the symmetry weight.
        let weights = FitnessWeights::<f64>::default();

        let mut left_arm_moving = Action::immobile();
        left_arm_moving.set_state(BodyPart::LeftArm, PartState::Left);
        let mut both = left_arm_moving;
        both.set_state(BodyPart::RightArm, PartState::Right);
        let delta_with_partner = weights.evaluate(&both) - weights.evaluate(&left_arm_moving);

        let idle = Action::immobile();
        let mut right_only = idle;
        right_only.set_state(BodyPart::RightArm, PartState::Right);
        let delta_alone = weights.evaluate(&right_only) - weights.evaluate(&idle);

        assert_eq!(delta_with_partner - delta_alone, weights.symmetry);
    }

    #[test]
    fn negative_weights_rejected() {
        let weights = FitnessWeights::new(-1.0f64, 5.0);
        assert!(weights.validate().is_err());
        let weights = FitnessWeights::new(1.0f64, f64::NAN);
        assert!(weights.validate().is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let weights = FitnessWeights::<f32>::default();
        let table = enumerate_fitness_table(&weights);
        let max = table.iter().map(|row| row.fitness).fold(0.0, f32::max);
        assert_eq!(max, 16.0);
    }
}
