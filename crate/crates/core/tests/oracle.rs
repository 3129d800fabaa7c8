//! Independent brute-force oracle for the fitness enumeration.
//!
//! Everything here recomputes movement, symmetry, and fitness from first
//! principles — six nested loops over raw part states, no use of the
//! library's encoding, trend, or fitness paths — and cross-checks the
//! library against it over the full action space.

use std::collections::HashMap;

use cultevo::{enumerate_fitness_table, Action, FitnessWeights, PartState, TrendSignals};

const STATES: [PartState; 3] = [PartState::Stationary, PartState::Left, PartState::Right];

fn oracle_movement(states: &[PartState; 6]) -> u32 {
    let mut count = 0;
    for state in states {
        match state {
            PartState::Stationary => {}
            PartState::Left | PartState::Right => count += 1,
        }
    }
    count
}

fn oracle_symmetry(states: &[PartState; 6]) -> u32 {
    let mut count = 0;
    // Arm pair occupies slots 0 and 1, leg pair slots 2 and 3.
    for pair in [(0usize, 1usize), (2, 3)] {
        let opposed = matches!(
            (states[pair.0], states[pair.1]),
            (PartState::Left, PartState::Right) | (PartState::Right, PartState::Left)
        );
        if opposed {
            count += 1;
        }
    }
    count
}

fn oracle_fitness(states: &[PartState; 6], w_move: f64, w_sym: f64) -> f64 {
    w_move * oracle_movement(states) as f64 + w_sym * oracle_symmetry(states) as f64
}

/// Every state assignment, generated without the library's decode path.
fn all_state_arrays() -> Vec<[PartState; 6]> {
    let mut out = Vec::with_capacity(729);
    for a in STATES {
        for b in STATES {
            for c in STATES {
                for d in STATES {
                    for e in STATES {
                        for f in STATES {
                            out.push([a, b, c, d, e, f]);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn signals_match_brute_force_everywhere() {
    for states in all_state_arrays() {
        let action = Action::new(states);
        let signals = TrendSignals::of(&action);
        assert_eq!(signals.movement as u32, oracle_movement(&states));
        assert_eq!(signals.symmetry as u32, oracle_symmetry(&states));
    }
}

#[test]
fn fitness_table_matches_brute_force_everywhere() {
    let weights = FitnessWeights::<f64>::default();
    let table = enumerate_fitness_table(&weights);
    assert_eq!(table.len(), 729);

    let by_encoding: HashMap<u16, f64> = table
        .iter()
        .map(|row| (row.encoding, row.fitness))
        .collect();
    assert_eq!(by_encoding.len(), 729);

    for states in all_state_arrays() {
        let action = Action::new(states);
        let expected = oracle_fitness(&states, 1.0, 5.0);
        assert_eq!(weights.evaluate(&action), expected);
        assert_eq!(by_encoding[&action.encode()], expected);
    }
}

#[test]
fn brute_force_maximum_is_sixteen_attained_sixteen_times() {
    let arrays = all_state_arrays();
    let max = arrays
        .iter()
        .map(|s| oracle_fitness(s, 1.0, 5.0))
        .fold(f64::NEG_INFINITY, f64::max);
    let argmax = arrays
        .iter()
        .filter(|s| oracle_fitness(s, 1.0, 5.0) == max)
        .count();
    assert_eq!(max, 16.0);
    assert_eq!(argmax, 16);
}

#[test]
fn nondefault_weights_also_match() {
    let weights = FitnessWeights::new(0.5f64, 2.25);
    for states in all_state_arrays() {
        let action = Action::new(states);
        assert_eq!(
            weights.evaluate(&action),
            oracle_fitness(&states, 0.5, 2.25)
        );
    }
}
