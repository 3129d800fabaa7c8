//! Grid construction, topology, neighborhoods, and role assignment.

use rand::Rng;

use crate::agent::{Agent, Role};
use crate::domain::Action;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Whether grid edges wrap around or cut neighborhoods short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Toroidal,
    Bounded,
}

/// Which cells count as immediate neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// The eight surrounding cells.
    Moore,
    /// The four orthogonal cells.
    VonNeumann,
}

impl Neighborhood {
    fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Neighborhood::Moore => &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (-1, 0),
                (1, 0),
                (-1, 1),
                (0, 1),
                (1, 1),
            ],
            Neighborhood::VonNeumann => &[(0, -1), (-1, 0), (1, 0), (0, 1)],
        }
    }
}

/// Grid shape and population makeup.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldConfig<R: Real> {
    pub width: usize,
    pub height: usize,
    pub topology: Topology,
    pub neighborhood: Neighborhood,
    /// Fraction of the population assigned the creator role.
    pub creator_fraction: R,
    /// Probability that a creator spends its turn inventing.
    pub creator_invent_rate: R,
}

impl<R: Real> Default for WorldConfig<R> {
    fn default() -> Self {
        WorldConfig {
            width: 10,
            height: 10,
            topology: Topology::Toroidal,
            neighborhood: Neighborhood::Moore,
            creator_fraction: R::of(0.3),
            creator_invent_rate: R::one(),
        }
    }
}

impl<R: Real> WorldConfig<R> {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 {
            return Err(Error::invalid("width", "must be at least 1"));
        }
        if self.height == 0 {
            return Err(Error::invalid("height", "must be at least 1"));
        }
        if !self.creator_fraction.is_probability() {
            return Err(Error::invalid(
                "creator_fraction",
                format!("{} is outside [0, 1]", self.creator_fraction),
            ));
        }
        if !self.creator_invent_rate.is_probability() {
            return Err(Error::invalid(
                "creator_invent_rate",
                format!("{} is outside [0, 1]", self.creator_invent_rate),
            ));
        }
        Ok(())
    }

    /// One agent per cell.
    pub fn population(&self) -> usize {
        self.width * self.height
    }

    /// Creators in the population: the rounded share of the grid.
    pub fn creator_count(&self) -> usize {
        let exact = self.creator_fraction.as_f64() * self.population() as f64;
        exact.round() as usize
    }
}

/// The fully populated grid plus its precomputed adjacency.
#[derive(Debug, Clone)]
pub struct World<R: Real> {
    config: WorldConfig<R>,
    pub(crate) agents: Vec<Agent<R>>,
    adjacency: Vec<Vec<usize>>,
}

impl<R: Real> World<R> {
    /// Builds a fresh world: every agent immobile at zero fitness with prior
    /// operator state, and a uniformly random subset of cells hosting
    /// creators. Consumes placement draws from `rng` first, before any
    /// iteration draws.
    pub fn build(config: WorldConfig<R>, rng: &mut impl Rng) -> Result<Self> {
        config.validate()?;
        let population = config.population();
        let creator_cells =
            rand::seq::index::sample(rng, population, config.creator_count()).into_vec();
        let mut is_creator = vec![false; population];
        for cell in creator_cells {
            is_creator[cell] = true;
        }

        let agents = (0..population)
            .map(|cell| {
                let role = if is_creator[cell] {
                    Role::Creator {
                        invent_rate: config.creator_invent_rate,
                    }
                } else {
                    Role::Imitator
                };
                Agent::new(cell, cell, role)
            })
            .collect();

        let adjacency = build_adjacency(&config);
        Ok(World {
            config,
            agents,
            adjacency,
        })
    }

    pub fn config(&self) -> &WorldConfig<R> {
        &self.config
    }

    pub fn agents(&self) -> &[Agent<R>] {
        &self.agents
    }

    /// Mutable access for tests and tooling; the engine drives agents
    /// through the scheduler instead.
    pub fn agent_mut(&mut self, cell: usize) -> &mut Agent<R> {
        &mut self.agents[cell]
    }

    pub fn population(&self) -> usize {
        self.agents.len()
    }

    /// Neighbor cells of `cell`, in a fixed canonical order.
    pub fn neighbors(&self, cell: usize) -> &[usize] {
        &self.adjacency[cell]
    }

    pub fn index_of(&self, x: usize, y: usize) -> usize {
        y * self.config.width + x
    }

    pub fn coords_of(&self, cell: usize) -> (usize, usize) {
        (cell % self.config.width, cell / self.config.width)
    }

    /// Arithmetic mean of the cached fitness values, summed in cell order.
    pub fn mean_fitness(&self) -> R {
        let total: R = self.agents.iter().map(|agent| agent.fitness()).sum();
        total / R::from_count(self.agents.len())
    }

    pub fn max_fitness(&self) -> R {
        self.agents
            .iter()
            .map(|agent| agent.fitness())
            .fold(R::zero(), R::max)
    }

    /// Count of distinct implemented actions.
    pub fn diversity(&self) -> usize {
        let mut seen = [false; Action::COUNT];
        let mut distinct = 0;
        for agent in &self.agents {
            let code = agent.action().encode() as usize;
            if !seen[code] {
                seen[code] = true;
                distinct += 1;
            }
        }
        distinct
    }
}

/// Neighbor lists per cell. Wrapped offsets that land on the cell itself or
/// collide (possible on grids narrower than three cells) are dropped, so a
/// neighbor appears at most once.
fn build_adjacency<R: Real>(config: &WorldConfig<R>) -> Vec<Vec<usize>> {
    let (width, height) = (config.width as i64, config.height as i64);
    let mut adjacency = Vec::with_capacity(config.population());
    for y in 0..height {
        for x in 0..width {
            let cell = (y * width + x) as usize;
            let mut cells = Vec::with_capacity(config.neighborhood.offsets().len());
            for &(dx, dy) in config.neighborhood.offsets() {
                let (nx, ny) = (x + dx, y + dy);
                let neighbor = match config.topology {
                    Topology::Toroidal => {
                        let nx = nx.rem_euclid(width);
                        let ny = ny.rem_euclid(height);
                        (ny * width + nx) as usize
                    }
                    Topology::Bounded => {
                        if nx < 0 || nx >= width || ny < 0 || ny >= height {
                            continue;
                        }
                        (ny * width + nx) as usize
                    }
                };
                if neighbor != cell && !cells.contains(&neighbor) {
                    cells.push(neighbor);
                }
            }
            adjacency.push(cells);
        }
    }
    adjacency
}
