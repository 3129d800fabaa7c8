//! Per-agent behavior: invention biased by adaptive operators, imitation of
//! fitter neighbors, and the adoption rule shared by both.
//!
//! An agent adopts a candidate action only when mental simulation rates it
//! strictly fitter than what it currently implements, so an agent's fitness
//! never decreases. Every adoption feeds the trend operators: if the adopted
//! action moves more (or is more symmetric) than the replaced one, the
//! corresponding bias rises by one step, and falls by one step in the
//! opposite case.

use rand::Rng;

use crate::domain::{Action, BodyPart, PartState, PART_COUNT};
use crate::fitness::FitnessWeights;
use crate::scalar::Real;
use crate::trends::TrendSignals;

/// Size of one operator adjustment.
const TREND_STEP: f64 = 0.1;

/// Adaptive probabilities that steer invention toward traits of previously
/// adopted actions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorState<R: Real> {
    /// Per-part probability that a change event increases movement. The
    /// complementary decrease probability is implicit.
    movement_bias: [R; PART_COUNT],
    /// Probability that a newly chosen direction completes an
    /// opposite-direction limb pair.
    symmetry_bias: R,
}

impl<R: Real> Default for OperatorState<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> OperatorState<R> {
    /// Uninformative prior: every bias starts at one half.
    pub fn new() -> Self {
        OperatorState {
            movement_bias: [R::of(0.5); PART_COUNT],
            symmetry_bias: R::of(0.5),
        }
    }

    pub fn movement_bias(&self, part: BodyPart) -> R {
        self.movement_bias[part.index()]
    }

    pub fn movement_biases(&self) -> &[R; PART_COUNT] {
        &self.movement_bias
    }

    pub fn symmetry_bias(&self) -> R {
        self.symmetry_bias
    }

    /// Applies both trend rules after an adoption. `prev` describes the
    /// replaced action, `adopted` the newly learned one.
    pub fn record_adoption(&mut self, prev: TrendSignals, adopted: TrendSignals) {
        self.update_movement_trend(prev, adopted);
        self.update_symmetry_trend(prev, adopted);
    }

    /// If the adopted action moves more than the replaced one, every per-part
    /// movement bias rises one step (clamped to 1); if it moves less, every
    /// bias falls one step (clamped to 0); ties leave the state untouched.
    pub fn update_movement_trend(&mut self, prev: TrendSignals, adopted: TrendSignals) {
        if adopted.movement > prev.movement {
            for bias in self.movement_bias.iter_mut() {
                *bias = step_up(*bias);
            }
        } else if adopted.movement < prev.movement {
            for bias in self.movement_bias.iter_mut() {
                *bias = step_down(*bias);
            }
        }
    }

    /// Same rule applied to the symmetry signal and the symmetry bias.
    pub fn update_symmetry_trend(&mut self, prev: TrendSignals, adopted: TrendSignals) {
        if adopted.symmetry > prev.symmetry {
            self.symmetry_bias = step_up(self.symmetry_bias);
        } else if adopted.symmetry < prev.symmetry {
            self.symmetry_bias = step_down(self.symmetry_bias);
        }
    }
}

fn step_up<R: Real>(p: R) -> R {
    (p + R::of(TREND_STEP)).min(R::one())
}

fn step_down<R: Real>(p: R) -> R {
    (p - R::of(TREND_STEP)).max(R::zero())
}

/// What an agent does with its turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Role<R: Real> {
    /// Only ever copies fitter neighbors.
    Imitator,
    /// Invents with probability `invent_rate` each iteration, otherwise
    /// imitates like everyone else.
    Creator { invent_rate: R },
}

impl<R: Real> Role<R> {
    pub fn is_creator(&self) -> bool {
        matches!(self, Role::Creator { .. })
    }
}

/// One grid inhabitant: a role, the action its body currently implements,
/// the cached fitness of that action, and its operator state.
#[derive(Debug, Clone)]
pub struct Agent<R: Real> {
    pub id: usize,
    /// Flat cell index into the world grid.
    pub cell: usize,
    pub role: Role<R>,
    action: Action,
    fitness: R,
    operators: OperatorState<R>,
}

impl<R: Real> Agent<R> {
    /// A fresh agent: immobile, zero fitness, priors at one half.
    pub fn new(id: usize, cell: usize, role: Role<R>) -> Self {
        Agent {
            id,
            cell,
            role,
            action: Action::immobile(),
            fitness: R::zero(),
            operators: OperatorState::new(),
        }
    }

    /// The implemented action — the only thing neighbors can observe.
    pub fn action(&self) -> Action {
        self.action
    }

    pub fn fitness(&self) -> R {
        self.fitness
    }

    pub fn operators(&self) -> &OperatorState<R> {
        &self.operators
    }

    /// Replaces the implemented action, keeping the fitness cache coherent.
    /// Bypasses the adoption rule; meant for tests and tooling.
    pub fn set_action(&mut self, action: Action, weights: &FitnessWeights<R>) {
        self.action = action;
        self.fitness = weights.evaluate(&action);
    }

    /// The adoption rule shared by invention and imitation: the candidate is
    /// learned and implemented only if strictly fitter, and every adoption
    /// updates the trend operators.
    pub fn adopt_if_fitter(&mut self, candidate: Action, weights: &FitnessWeights<R>) -> bool {
        let candidate_fitness = weights.evaluate(&candidate);
        if candidate_fitness > self.fitness {
            let prev = TrendSignals::of(&self.action);
            let adopted = TrendSignals::of(&candidate);
            self.operators.record_adoption(prev, adopted);
            self.action = candidate;
            self.fitness = candidate_fitness;
            true
        } else {
            false
        }
    }

    /// Invents a candidate from the current action and adopts it if fitter.
    /// Returns whether an adoption happened; on rejection the turn is spent
    /// with no state change.
    pub fn try_invent(
        &mut self,
        weights: &FitnessWeights<R>,
        change_prob: R,
        rng: &mut impl Rng,
    ) -> bool {
        let candidate = invent(&self.action, &self.operators, change_prob, rng);
        self.adopt_if_fitter(candidate, weights)
    }

    /// Examines the neighbors' implemented actions in a uniformly random
    /// order and adopts the first strictly fitter one, if any.
    pub fn try_imitate(
        &mut self,
        neighbor_actions: &[Action],
        weights: &FitnessWeights<R>,
        rng: &mut impl Rng,
    ) -> bool {
        if neighbor_actions.is_empty() {
            return false;
        }
        let mut order: Vec<usize> = (0..neighbor_actions.len()).collect();
        // Full shuffle up front keeps the draw count fixed per attempt.
        shuffle(&mut order, rng);
        for index in order {
            if self.adopt_if_fitter(neighbor_actions[index], weights) {
                return true;
            }
        }
        false
    }
}

/// Fisher-Yates; local so the engine and the agent share one shuffle
/// implementation with a pinned draw pattern.
pub(crate) fn shuffle<T>(items: &mut [T], rng: &mut impl Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}

/// Generates a candidate action from `current`.
///
/// Parts are visited in index order. Each part independently changes with
/// probability `change_prob`; a change event draws against the part's
/// movement bias to pick increase or decrease. Increasing movement of a
/// stationary part starts it moving in a direction chosen by
/// [`choose_direction`]; increasing an already-moving part flips its
/// direction. Decreasing stops a moving part and is a no-op on a stationary
/// one. Direction choices read the partially built candidate, so a change
/// earlier in the same pass can seed a symmetric pair for its partner.
pub fn invent<R: Real>(
    current: &Action,
    operators: &OperatorState<R>,
    change_prob: R,
    rng: &mut impl Rng,
) -> Action {
    let mut candidate = *current;
    let p_change = change_prob.as_f64();
    for part in BodyPart::ALL {
        if rng.gen::<f64>() >= p_change {
            continue;
        }
        let increase = rng.gen::<f64>() < operators.movement_bias(part).as_f64();
        let state = candidate.state(part);
        if increase {
            let next = if state.is_moving() {
                state.mirrored()
            } else {
                choose_direction(&candidate, part, operators.symmetry_bias(), rng)
            };
            candidate.set_state(part, next);
        } else if state.is_moving() {
            candidate.set_state(part, PartState::Stationary);
        }
    }
    candidate
}

/// Direction for a part that starts moving: when its partner limb is already
/// moving, the symmetry bias gives the probability of completing an
/// opposite-direction pair; otherwise the direction is uniform.
fn choose_direction<R: Real>(
    candidate: &Action,
    part: BodyPart,
    symmetry_bias: R,
    rng: &mut impl Rng,
) -> PartState {
    let partner_state = part.partner().map(|partner| candidate.state(partner));
    match partner_state {
        Some(state) if state.is_moving() => {
            if rng.gen::<f64>() < symmetry_bias.as_f64() {
                state.mirrored()
            } else {
                state
            }
        }
        _ => {
            if rng.gen::<f64>() < 0.5 {
                PartState::Left
            } else {
                PartState::Right
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn signals(movement: u8, symmetry: u8) -> TrendSignals {
        TrendSignals { movement, symmetry }
    }

    fn one_arm_left() -> Action {
        let mut action = Action::immobile();
        action.set_state(BodyPart::LeftArm, PartState::Left);
        action
    }

    #[test]
    fn movement_trend_steps_up() {
        let mut ops = OperatorState::<f64>::new();
        ops.update_movement_trend(signals(1, 0), signals(2, 0));
        for part in BodyPart::ALL {
            assert!((ops.movement_bias(part) - 0.6).abs() < 1e-12);
        }
    }

    #[test]
    fn movement_trend_clamps_at_one() {
        let mut ops = OperatorState::<f64>::new();
        for _ in 0..7 {
            ops.update_movement_trend(signals(0, 0), signals(1, 0));
        }
        for part in BodyPart::ALL {
            assert_eq!(ops.movement_bias(part), 1.0);
        }
    }

    #[test]
    fn movement_trend_ignores_ties() {
        let mut ops = OperatorState::<f64>::new();
        ops.record_adoption(signals(3, 1), signals(3, 1));
        assert_eq!(ops, OperatorState::new());
    }

    #[test]
    fn symmetry_trend_moves_and_clamps() {
        let mut ops = OperatorState::<f64>::new();
        ops.update_symmetry_trend(signals(0, 0), signals(2, 2));
        assert!((ops.symmetry_bias() - 0.6).abs() < 1e-12);
        for _ in 0..8 {
            ops.update_symmetry_trend(signals(0, 1), signals(0, 0));
        }
        assert_eq!(ops.symmetry_bias(), 0.0);
    }

    #[test]
    fn zero_change_probability_returns_current_action() {
        let ops = OperatorState::<f64>::new();
        let mut r = rng(7);
        for action in Action::all().step_by(13) {
            assert_eq!(invent(&action, &ops, 0.0, &mut r), action);
        }
    }

    #[test]
    fn forced_increase_from_immobile_moves_everything() {
        let mut ops = OperatorState::<f64>::new();
        ops.movement_bias = [1.0; PART_COUNT];
        let mut r = rng(11);
        for _ in 0..1_000 {
            let candidate = invent(&Action::immobile(), &ops, 1.0, &mut r);
            assert!(candidate.states().iter().all(|state| state.is_moving()));
        }
    }

    #[test]
    fn change_events_always_alter_moving_parts() {
        // With every part moving, neither branch of a change event is a
        // no-op, so the expected number of differing parts equals the
        // per-part change probability times six: one part on average.
        let ops = OperatorState::<f64>::new();
        let all_moving = Action::decode(728).unwrap();
        let mut r = rng(13);
        let samples = 20_000;
        let mut differing = 0usize;
        for _ in 0..samples {
            let candidate = invent(&all_moving, &ops, 1.0 / 6.0, &mut r);
            differing += candidate
                .states()
                .iter()
                .zip(all_moving.states())
                .filter(|(a, b)| a != b)
                .count();
        }
        let mean = differing as f64 / samples as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean differing parts {mean}");
    }

    #[test]
    fn decrease_noops_pull_expected_changes_below_one() {
        // From the immobile action with priors at one half, half of all
        // change events try to decrease a stationary part and do nothing.
        let ops = OperatorState::<f64>::new();
        let mut r = rng(17);
        let samples = 20_000;
        let mut differing = 0usize;
        for _ in 0..samples {
            let candidate = invent(&Action::immobile(), &ops, 1.0 / 6.0, &mut r);
            differing += candidate
                .states()
                .iter()
                .filter(|state| state.is_moving())
                .count();
        }
        let mean = differing as f64 / samples as f64;
        assert!(mean < 1.0, "mean differing parts {mean}");
        assert!((mean - 0.5).abs() < 0.05, "mean differing parts {mean}");
    }

    #[test]
    fn symmetry_bias_one_always_completes_pairs() {
        let mut ops = OperatorState::<f64>::new();
        ops.movement_bias = [1.0; PART_COUNT];
        ops.symmetry_bias = 1.0;
        let mut r = rng(23);
        for _ in 0..500 {
            let candidate = invent(&one_arm_left(), &ops, 1.0, &mut r);
            // Left arm flips to right; right arm starts opposite to whatever
            // the left arm shows when its turn comes. Either way the arms
            // end up opposed.
            assert_eq!(
                candidate.state(BodyPart::RightArm),
                candidate.state(BodyPart::LeftArm).mirrored()
            );
        }
    }

    #[test]
    fn adoption_requires_strict_improvement() {
        let weights = FitnessWeights::<f64>::default();
        let mut agent = Agent::new(0, 0, Role::Imitator);
        agent.set_action(one_arm_left(), &weights);

        // Equal fitness: a different action with the same score is refused.
        let mut equal = Action::immobile();
        equal.set_state(BodyPart::Head, PartState::Right);
        assert_eq!(weights.evaluate(&equal), agent.fitness());
        assert!(!agent.adopt_if_fitter(equal, &weights));
        assert_eq!(agent.action(), one_arm_left());

        // Lower fitness: refused.
        assert!(!agent.adopt_if_fitter(Action::immobile(), &weights));

        // Strictly fitter: adopted.
        let mut fitter = one_arm_left();
        fitter.set_state(BodyPart::RightArm, PartState::Right);
        assert!(agent.adopt_if_fitter(fitter, &weights));
        assert_eq!(agent.action(), fitter);
        assert_eq!(agent.fitness(), 7.0);
    }

    #[test]
    fn first_adoption_raises_all_movement_biases() {
        let weights = FitnessWeights::<f64>::default();
        let mut agent = Agent::new(0, 0, Role::Imitator);
        assert!(agent.adopt_if_fitter(one_arm_left(), &weights));
        assert_eq!(agent.fitness(), 1.0);
        for part in BodyPart::ALL {
            assert!((agent.operators().movement_bias(part) - 0.6).abs() < 1e-12);
        }
        // Symmetry did not change (0 -> 0), so its bias holds at the prior.
        assert_eq!(agent.operators().symmetry_bias(), 0.5);
    }

    #[test]
    fn imitation_ignores_equal_neighbors() {
        let weights = FitnessWeights::<f64>::default();
        let mut agent = Agent::new(0, 0, Role::Imitator);
        agent.set_action(one_arm_left(), &weights);
        let neighbors = vec![one_arm_left(); 8];
        let mut r = rng(29);
        for _ in 0..100 {
            assert!(!agent.try_imitate(&neighbors, &weights, &mut r));
        }
        assert_eq!(agent.action(), one_arm_left());
    }

    #[test]
    fn single_fitter_neighbor_is_always_found() {
        let weights = FitnessWeights::<f64>::default();
        let mut fitter = one_arm_left();
        fitter.set_state(BodyPart::RightArm, PartState::Right);
        let mut r = rng(31);
        for trial in 0..200 {
            let mut agent = Agent::new(0, 0, Role::Imitator);
            let mut neighbors = vec![Action::immobile(); 8];
            neighbors[trial % 8] = fitter;
            assert!(agent.try_imitate(&neighbors, &weights, &mut r));
            assert_eq!(agent.action(), fitter);
        }
    }

    #[test]
    fn maximal_agent_never_imitates() {
        let weights = FitnessWeights::<f64>::default();
        let best = enumerate_best_action(&weights);
        let mut agent = Agent::new(0, 0, Role::Imitator);
        agent.set_action(best, &weights);
        let neighbors: Vec<Action> = Action::all().step_by(91).collect();
        let mut r = rng(37);
        for _ in 0..100 {
            assert!(!agent.try_imitate(&neighbors, &weights, &mut r));
        }
    }

    fn enumerate_best_action(weights: &FitnessWeights<f64>) -> Action {
        Action::all()
            .max_by(|a, b| {
                weights
                    .evaluate(a)
                    .partial_cmp(&weights.evaluate(b))
                    .unwrap()
            })
            .unwrap()
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Any sequence of trend updates keeps every bias inside [0, 1]
            // and moves it by one step or onto a bound.
            #[test]
            fn operator_containment(updates in proptest::collection::vec((0u8..=6, 0u8..=6, 0u8..=2, 0u8..=2), 0..60)) {
                let mut ops = OperatorState::<f64>::new();
                for (m1, m2, s1, s2) in updates {
                    let before = *ops.movement_biases();
                    let before_sym = ops.symmetry_bias();
                    ops.record_adoption(signals(m1, s1), signals(m2, s2));
                    for part in BodyPart::ALL {
                        let now = ops.movement_bias(part);
                        prop_assert!((0.0..=1.0).contains(&now));
                        let step = (now - before[part.index()]).abs();
                        prop_assert!(step < 0.1 + 1e-9);
                    }
                    let sym_step = (ops.symmetry_bias() - before_sym).abs();
                    prop_assert!((0.0..=1.0).contains(&ops.symmetry_bias()));
                    prop_assert!(sym_step < 0.1 + 1e-9);
                }
            }

            // Invention is identity when no change events can fire.
            #[test]
            fn invent_without_change_events_is_identity(code in 0u16..729, seed in any::<u64>()) {
                let action = Action::decode(code).unwrap();
                let ops = OperatorState::<f64>::new();
                let mut r = rng(seed);
                prop_assert_eq!(invent(&action, &ops, 0.0, &mut r), action);
            }

            // Agents never lose fitness, whatever they attempt.
            #[test]
            fn fitness_never_decreases(code in 0u16..729, seed in any::<u64>(), attempts in 1usize..30) {
                let weights = FitnessWeights::<f64>::default();
                let mut agent = Agent::new(0, 0, Role::Creator { invent_rate: 1.0 });
                agent.set_action(Action::decode(code).unwrap(), &weights);
                let neighbors: Vec<Action> = vec![Action::immobile(), Action::decode(700).unwrap()];
                let mut r = rng(seed);
                let mut last = agent.fitness();
                for i in 0..attempts {
                    if i % 2 == 0 {
                        agent.try_invent(&weights, 0.5, &mut r);
                    } else {
                        agent.try_imitate(&neighbors, &weights, &mut r);
                    }
                    prop_assert!(agent.fitness() >= last);
                    last = agent.fitness();
                }
            }
        }
    }
}
