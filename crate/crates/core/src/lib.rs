//! Agent-based simulation of cultural evolution on a grid world.
//!
//! A fully populated grid of agents starts out immobile. Creators invent new
//! six-part actions by mutating their current one under adaptive trend
//! operators; everyone else imitates the first strictly fitter neighbor they
//! find. Fitness rewards movement and opposite-direction limb pairs, which
//! couples limbs epistatically. The crate provides the simulation engine,
//! an exhaustive fitness enumeration, and a reproducible parameter sweep
//! harness over the creator share and the creators' invent rate.
//!
//! All real-valued math is generic over the [`Real`] scalar (`f32` or
//! `f64`); the aliases below pin the common double-precision entry points.
//! Runs are deterministic: a config (seed included) fixes the entire metrics
//! time series.

pub mod agent;
pub mod domain;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod fitness;
pub mod scalar;
pub mod stats;
pub mod trends;
pub mod world;

pub use agent::{invent, Agent, OperatorState, Role};
pub use domain::{Action, BodyPart, PartState, PART_COUNT};
pub use engine::{run, MetricsRecord, RunConfig, Simulation, UpdateOrder, Visibility};
pub use error::{Error, Result};
pub use experiments::{
    correlate, run_seed, sweep, CellField, GroupCorrelation, SweepCell, SweepSpec,
};
pub use fitness::{enumerate_fitness_table, FitnessTableRow, FitnessWeights};
pub use scalar::Real;
pub use trends::{movement_activation, symmetry_activation, DirectTrends, TrendDetector, TrendSignals};
pub use world::{Neighborhood, Topology, World, WorldConfig};

/// Double-precision aliases for the main entry points.
pub type FitnessWeights64 = FitnessWeights<f64>;
pub type WorldConfig64 = WorldConfig<f64>;
pub type RunConfig64 = RunConfig<f64>;
pub type MetricsRecord64 = MetricsRecord<f64>;
pub type SweepSpec64 = SweepSpec<f64>;
pub type SweepCell64 = SweepCell<f64>;

/// Single-precision aliases.
pub type FitnessWeights32 = FitnessWeights<f32>;
pub type WorldConfig32 = WorldConfig<f32>;
pub type RunConfig32 = RunConfig<f32>;
pub type MetricsRecord32 = MetricsRecord<f32>;
pub type SweepSpec32 = SweepSpec<f32>;
pub type SweepCell32 = SweepCell<f32>;
