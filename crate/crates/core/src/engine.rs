//! The per-iteration protocol, run loop, and metrics capture.
//!
//! A run owns a single random stream seeded from the config. Draws come in a
//! fixed documented order — creator placement at build time, then per
//! iteration: one order shuffle (in shuffled mode), then per agent in
//! processing order its role draw (creators only) followed by its invention
//! or imitation draws. Diagnostics never consume randomness, so the metrics
//! time series is a pure function of the config.
//!
//! Agents are processed sequentially. Under the default snapshot visibility
//! every agent observes the actions implemented at the start of the
//! iteration; the immediate mode instead exposes adoptions to agents
//! processed later in the same iteration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agent::{shuffle, Role};
use crate::domain::Action;
use crate::error::{Error, Result};
use crate::fitness::FitnessWeights;
use crate::scalar::Real;
use crate::world::{World, WorldConfig};

/// How agents are ordered within an iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOrder {
    /// Fresh uniform shuffle every iteration.
    Shuffled,
    /// Fixed scan in cell order; kept for sensitivity checks.
    FixedScan,
}

/// What imitators observe within an iteration.
///
/// With `Snapshot`, every agent sees the actions implemented at the start of
/// the iteration, so an action spreads at most one neighbor hop per
/// iteration. With `Immediate`, adoptions are observable by agents processed
/// later in the same iteration, which lets an action chain across several
/// cells at once and markedly accelerates diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    Snapshot,
    Immediate,
}

/// Everything a run needs. Identical configs (seed included) produce
/// identical metrics, bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<R: Real> {
    pub world: WorldConfig<R>,
    pub iterations: usize,
    /// Per-part probability of a change event during invention.
    pub change_prob: R,
    pub weights: FitnessWeights<R>,
    pub seed: u64,
    pub update_order: UpdateOrder,
    pub visibility: Visibility,
}

impl<R: Real> Default for RunConfig<R> {
    fn default() -> Self {
        RunConfig {
            world: WorldConfig::default(),
            iterations: 15,
            change_prob: R::of(1.0 / 6.0),
            weights: FitnessWeights::default(),
            seed: 0,
            update_order: UpdateOrder::Shuffled,
            visibility: Visibility::Snapshot,
        }
    }
}

impl<R: Real> RunConfig<R> {
    pub fn validate(&self) -> Result<()> {
        self.world.validate()?;
        self.weights.validate()?;
        if !self.change_prob.is_probability() {
            return Err(Error::invalid(
                "change_prob",
                format!("{} is outside [0, 1]", self.change_prob),
            ));
        }
        Ok(())
    }
}

/// Per-iteration observables. Adoption counts are diagnostics; the rest are
/// the plotted quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord<R: Real> {
    pub iteration: usize,
    pub mean_fitness: R,
    pub max_fitness: R,
    /// Distinct implemented actions across the population.
    pub diversity: usize,
    pub invention_adoptions: usize,
    pub imitation_adoptions: usize,
}

/// A running world with its private random stream.
pub struct Simulation<R: Real> {
    config: RunConfig<R>,
    world: World<R>,
    rng: ChaCha8Rng,
    iteration: usize,
}

impl<R: Real> Simulation<R> {
    pub fn new(config: RunConfig<R>) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let world = World::build(config.world.clone(), &mut rng)?;
        Ok(Simulation {
            config,
            world,
            rng,
            iteration: 0,
        })
    }

    pub fn config(&self) -> &RunConfig<R> {
        &self.config
    }

    pub fn world(&self) -> &World<R> {
        &self.world
    }

    pub fn world_mut(&mut self) -> &mut World<R> {
        &mut self.world
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Metrics of the current state, with zero adoption counts. At iteration
    /// zero this is the baseline record.
    pub fn snapshot(&self) -> MetricsRecord<R> {
        self.record(0, 0)
    }

    /// Runs one iteration: every agent gets one turn, in shuffled or scan
    /// order, and the metrics after all turns are returned.
    pub fn step(&mut self) -> MetricsRecord<R> {
        self.iteration += 1;
        let population = self.world.population();
        let mut order: Vec<usize> = (0..population).collect();
        if self.config.update_order == UpdateOrder::Shuffled {
            shuffle(&mut order, &mut self.rng);
        }

        // Implemented actions at the start of the iteration; what imitators
        // observe under snapshot visibility.
        let start_actions: Vec<Action> = match self.config.visibility {
            Visibility::Snapshot => self.world.agents.iter().map(|a| a.action()).collect(),
            Visibility::Immediate => Vec::new(),
        };

        let weights = self.config.weights;
        let change_prob = self.config.change_prob;
        let mut invention_adoptions = 0;
        let mut imitation_adoptions = 0;
        let mut observed: Vec<Action> = Vec::with_capacity(8);

        for &cell in &order {
            let invents = match self.world.agents[cell].role {
                Role::Imitator => false,
                Role::Creator { invent_rate } => self.rng.gen::<f64>() < invent_rate.as_f64(),
            };
            if invents {
                if self.world.agents[cell].try_invent(&weights, change_prob, &mut self.rng) {
                    invention_adoptions += 1;
                }
            } else {
                observed.clear();
                for &neighbor in self.world.neighbors(cell) {
                    observed.push(match self.config.visibility {
                        Visibility::Snapshot => start_actions[neighbor],
                        Visibility::Immediate => self.world.agents[neighbor].action(),
                    });
                }
                if observed.is_empty() {
                    continue;
                }
                if self.world.agents[cell].try_imitate(&observed, &weights, &mut self.rng) {
                    imitation_adoptions += 1;
                }
            }
        }

        self.record(invention_adoptions, imitation_adoptions)
    }

    fn record(&self, invention_adoptions: usize, imitation_adoptions: usize) -> MetricsRecord<R> {
        MetricsRecord {
            iteration: self.iteration,
            mean_fitness: self.world.mean_fitness(),
            max_fitness: self.world.max_fitness(),
            diversity: self.world.diversity(),
            invention_adoptions,
            imitation_adoptions,
        }
    }
}

/// Executes a full run: the baseline record for the fresh world followed by
/// one record per iteration.
pub fn run<R: Real>(config: &RunConfig<R>) -> Result<Vec<MetricsRecord<R>>> {
    let mut simulation = Simulation::new(config.clone())?;
    let mut records = Vec::with_capacity(config.iterations + 1);
    records.push(simulation.snapshot());
    for _ in 0..config.iterations {
        records.push(simulation.step());
    }
    Ok(records)
}
