//! Parameter sweeps over the creator share and creator invent rate, with
//! cross-run aggregation.
//!
//! Every run of a sweep gets its own seed derived from the master seed and
//! the cell coordinates, so any cell can be reproduced in isolation. Runs
//! execute independently (in parallel under rayon) and are aggregated in a
//! fixed order, which makes sweep output identical for any thread count.

use rayon::prelude::*;

use crate::engine::{run, RunConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::{mean, spearman, std_error};

/// A sweep over `creator_fractions x invent_rates`, each cell averaged over
/// `runs_per_cell` independently seeded runs measured at one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<R: Real> {
    pub creator_fractions: Vec<R>,
    pub invent_rates: Vec<R>,
    pub runs_per_cell: usize,
    pub measure_at_iteration: usize,
    /// Template for every run; its seed and per-cell fields are overwritten.
    pub base: RunConfig<R>,
    pub master_seed: u64,
}

impl<R: Real> Default for SweepSpec<R> {
    /// Eleven creator fractions from 0 to 1, four invent rates, 100 runs per
    /// cell, measured at iteration 15.
    fn default() -> Self {
        SweepSpec {
            creator_fractions: (0..=10).map(|i| R::of(i as f64 / 10.0)).collect(),
            invent_rates: vec![R::of(0.25), R::of(0.5), R::of(0.75), R::one()],
            runs_per_cell: 100,
            measure_at_iteration: 15,
            base: RunConfig::default(),
            master_seed: 0,
        }
    }
}

impl<R: Real> SweepSpec<R> {
    pub fn validate(&self) -> Result<()> {
        if self.creator_fractions.is_empty() {
            return Err(Error::EmptyAxis("creator_fractions"));
        }
        if self.invent_rates.is_empty() {
            return Err(Error::EmptyAxis("invent_rates"));
        }
        for &fraction in &self.creator_fractions {
            if !fraction.is_probability() {
                return Err(Error::invalid(
                    "creator_fractions",
                    format!("{fraction} is outside [0, 1]"),
                ));
            }
        }
        for &rate in &self.invent_rates {
            if !(rate > R::zero() && rate <= R::one()) {
                return Err(Error::invalid(
                    "invent_rates",
                    format!("{rate} is outside (0, 1]"),
                ));
            }
        }
        if self.runs_per_cell == 0 {
            return Err(Error::invalid("runs_per_cell", "must be at least 1"));
        }
        if self.measure_at_iteration == 0 {
            return Err(Error::invalid("measure_at_iteration", "must be at least 1"));
        }
        self.base.validate()
    }
}

/// Aggregates for one `(invent_rate, creator_fraction)` cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell<R: Real> {
    pub invent_rate: R,
    pub creator_fraction: R,
    pub n_runs: usize,
    pub mean_fitness_avg: R,
    pub mean_fitness_stderr: R,
    pub diversity_avg: R,
    pub diversity_stderr: R,
}

/// Seed for run `run_index` of the cell at `(invent_rate, creator_fraction)`:
/// a splitmix64 chain over the master seed and the cell coordinates (as f64
/// bit patterns), so every cell is independently reproducible.
pub fn run_seed(master_seed: u64, invent_rate: f64, creator_fraction: f64, run_index: u64) -> u64 {
    let mut state = splitmix64(master_seed);
    state = splitmix64(state ^ invent_rate.to_bits());
    state = splitmix64(state ^ creator_fraction.to_bits());
    splitmix64(state ^ run_index)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Mean fitness and diversity of one run, measured at the configured iteration.
fn measure_run<R: Real>(
    spec: &SweepSpec<R>,
    invent_rate: R,
    creator_fraction: R,
    run_index: u64,
) -> Result<(R, usize)> {
    let mut config = spec.base.clone();
    config.world.creator_fraction = creator_fraction;
    config.world.creator_invent_rate = invent_rate;
    config.iterations = spec.measure_at_iteration;
    config.seed = run_seed(
        spec.master_seed,
        invent_rate.as_f64(),
        creator_fraction.as_f64(),
        run_index,
    );
    let records = run(&config)?;
    let last = records.last().expect("run yields at least the baseline");
    Ok((last.mean_fitness, last.diversity))
}

/// Executes the full sweep. Rows come back sorted by
/// `(invent_rate, creator_fraction)`.
pub fn sweep<R: Real>(spec: &SweepSpec<R>) -> Result<Vec<SweepCell<R>>> {
    spec.validate()?;

    let mut rates = spec.invent_rates.clone();
    rates.sort_by(|a, b| a.partial_cmp(b).expect("validated finite rate"));
    let mut fractions = spec.creator_fractions.clone();
    fractions.sort_by(|a, b| a.partial_cmp(b).expect("validated finite fraction"));

    let cells: Vec<(R, R)> = rates
        .iter()
        .flat_map(|&rate| fractions.iter().map(move |&fraction| (rate, fraction)))
        .collect();
    let tasks: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|cell| (0..spec.runs_per_cell as u64).map(move |r| (cell, r)))
        .collect();

    // Collect preserves task order, so aggregation below is independent of
    // scheduling.
    let measured: Vec<(R, usize)> = tasks
        .par_iter()
        .map(|&(cell, run_index)| {
            let (rate, fraction) = cells[cell];
            measure_run(spec, rate, fraction, run_index)
        })
        .collect::<Result<_>>()?;

    let rows = cells
        .iter()
        .zip(measured.chunks(spec.runs_per_cell))
        .map(|(&(rate, fraction), runs)| {
            let fitness: Vec<R> = runs.iter().map(|&(f, _)| f).collect();
            let diversity: Vec<R> = runs.iter().map(|&(_, d)| R::from_count(d)).collect();
            SweepCell {
                invent_rate: rate,
                creator_fraction: fraction,
                n_runs: runs.len(),
                mean_fitness_avg: mean(&fitness),
                mean_fitness_stderr: std_error(&fitness),
                diversity_avg: mean(&diversity),
                diversity_stderr: std_error(&diversity),
            }
        })
        .collect();
    Ok(rows)
}

/// Fields of a sweep cell usable as correlation variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellField {
    CreatorFraction,
    InventRate,
    MeanFitness,
    Diversity,
}

impl CellField {
    fn value<R: Real>(self, cell: &SweepCell<R>) -> f64 {
        match self {
            CellField::CreatorFraction => cell.creator_fraction.as_f64(),
            CellField::InventRate => cell.invent_rate.as_f64(),
            CellField::MeanFitness => cell.mean_fitness_avg.as_f64(),
            CellField::Diversity => cell.diversity_avg.as_f64(),
        }
    }
}

/// Spearman correlation of `y` against `x` within one invent-rate group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupCorrelation<R: Real> {
    pub invent_rate: R,
    /// `None` when a series is constant and the rank correlation undefined.
    pub rho: Option<f64>,
}

/// Rank-correlates two cell fields within each invent-rate group. Rows must
/// already be grouped by invent rate (as [`sweep`] returns them), and every
/// group needs at least three rows.
pub fn correlate<R: Real>(
    cells: &[SweepCell<R>],
    x: CellField,
    y: CellField,
) -> Result<Vec<GroupCorrelation<R>>> {
    let mut result = Vec::new();
    let mut start = 0;
    while start < cells.len() {
        let rate = cells[start].invent_rate;
        let mut end = start;
        while end < cells.len() && cells[end].invent_rate == rate {
            end += 1;
        }
        let group = &cells[start..end];
        if group.len() < 3 {
            return Err(Error::TooFewRows {
                group: format!("{rate}"),
                found: group.len(),
                needed: 3,
            });
        }
        let xs: Vec<f64> = group.iter().map(|cell| x.value(cell)).collect();
        let ys: Vec<f64> = group.iter().map(|cell| y.value(cell)).collect();
        result.push(GroupCorrelation {
            invent_rate: rate,
            rho: spearman(&xs, &ys),
        });
        start = end;
    }
    Ok(result)
}
