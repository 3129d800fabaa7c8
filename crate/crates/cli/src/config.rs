//! Flat key=value config files, flag overlays, and resolved-config echoes.
//!
//! Resolution order: built-in defaults, then the config file, then command
//! line flags. Every output file starts with the fully resolved
//! configuration as `#` comments, so a result can be reproduced from its own
//! header.

use std::fmt::Display;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cultevo::{
    FitnessWeights, Neighborhood, RunConfig64, SweepSpec64, Topology, UpdateOrder, Visibility,
};

/// Parsed key=value pairs with consumption tracking, so leftovers can be
/// reported as unknown keys.
#[derive(Debug, Default)]
pub struct KeyValues {
    entries: Vec<(String, String, usize)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<KeyValues> {
        let mut entries: Vec<(String, String, usize)> = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value, got `{line}`", index + 1))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                bail!("line {}: empty key", index + 1);
            }
            if entries.iter().any(|(existing, _, _)| *existing == key) {
                bail!("line {}: duplicate key `{key}`", index + 1);
            }
            entries.push((key, value, index + 1));
        }
        Ok(KeyValues { entries })
    }

    pub fn load(path: &Path) -> Result<KeyValues> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config file {}", path.display()))
    }

    /// Removes and returns the value for `key`, if present.
    pub fn take(&mut self, key: &str) -> Option<String> {
        let position = self.entries.iter().position(|(k, _, _)| k == key)?;
        Some(self.entries.remove(position).1)
    }

    /// Errors on the first key nothing consumed.
    pub fn expect_empty(&self) -> Result<()> {
        if let Some((key, _, line)) = self.entries.first() {
            bail!("unknown key `{key}` (line {line})");
        }
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value
        .parse::<T>()
        .map_err(|e| anyhow!("invalid value for {key}: `{value}` ({e})"))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|item| parse_num::<f64>(key, item.trim()))
        .collect()
}

pub fn parse_fraction_list(value: &str) -> Result<Vec<f64>> {
    parse_list("creator_fractions", value)
}

pub fn parse_rate_list(value: &str) -> Result<Vec<f64>> {
    parse_list("invent_rates", value)
}

fn parse_topology(key: &str, value: &str) -> Result<Topology> {
    match value {
        "toroidal" => Ok(Topology::Toroidal),
        "bounded" => Ok(Topology::Bounded),
        _ => bail!("invalid value for {key}: `{value}` (expected toroidal|bounded)"),
    }
}

fn parse_neighborhood(key: &str, value: &str) -> Result<Neighborhood> {
    match value {
        "moore" => Ok(Neighborhood::Moore),
        "von_neumann" => Ok(Neighborhood::VonNeumann),
        _ => bail!("invalid value for {key}: `{value}` (expected moore|von_neumann)"),
    }
}

fn parse_update_order(key: &str, value: &str) -> Result<UpdateOrder> {
    match value {
        "shuffled" => Ok(UpdateOrder::Shuffled),
        "fixed_scan" => Ok(UpdateOrder::FixedScan),
        _ => bail!("invalid value for {key}: `{value}` (expected shuffled|fixed_scan)"),
    }
}

fn parse_visibility(key: &str, value: &str) -> Result<Visibility> {
    match value {
        "snapshot" => Ok(Visibility::Snapshot),
        "immediate" => Ok(Visibility::Immediate),
        _ => bail!("invalid value for {key}: `{value}` (expected snapshot|immediate)"),
    }
}

pub fn topology_name(topology: Topology) -> &'static str {
    match topology {
        Topology::Toroidal => "toroidal",
        Topology::Bounded => "bounded",
    }
}

pub fn neighborhood_name(neighborhood: Neighborhood) -> &'static str {
    match neighborhood {
        Neighborhood::Moore => "moore",
        Neighborhood::VonNeumann => "von_neumann",
    }
}

pub fn update_order_name(order: UpdateOrder) -> &'static str {
    match order {
        UpdateOrder::Shuffled => "shuffled",
        UpdateOrder::FixedScan => "fixed_scan",
    }
}

pub fn visibility_name(visibility: Visibility) -> &'static str {
    match visibility {
        Visibility::Snapshot => "snapshot",
        Visibility::Immediate => "immediate",
    }
}

/// Unresolved run settings; `None` means "use the default".
#[derive(Debug, Default, Clone)]
pub struct RunSettings {
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub topology: Option<Topology>,
    pub neighborhood: Option<Neighborhood>,
    pub creator_fraction: Option<f64>,
    pub creator_invent_rate: Option<f64>,
    pub iterations: Option<usize>,
    pub change_prob: Option<f64>,
    pub w_move: Option<f64>,
    pub w_sym: Option<f64>,
    pub seed: Option<u64>,
    pub update_order: Option<UpdateOrder>,
    pub visibility: Option<Visibility>,
}

impl RunSettings {
    pub fn from_key_values(kv: &mut KeyValues) -> Result<RunSettings> {
        let mut settings = RunSettings::default();
        if let Some(v) = kv.take("width") {
            settings.width = Some(parse_num("width", &v)?);
        }
        if let Some(v) = kv.take("height") {
            settings.height = Some(parse_num("height", &v)?);
        }
        if let Some(v) = kv.take("topology") {
            settings.topology = Some(parse_topology("topology", &v)?);
        }
        if let Some(v) = kv.take("neighborhood") {
            settings.neighborhood = Some(parse_neighborhood("neighborhood", &v)?);
        }
        if let Some(v) = kv.take("creator_fraction") {
            settings.creator_fraction = Some(parse_num("creator_fraction", &v)?);
        }
        if let Some(v) = kv.take("creator_invent_rate") {
            settings.creator_invent_rate = Some(parse_num("creator_invent_rate", &v)?);
        }
        if let Some(v) = kv.take("iterations") {
            settings.iterations = Some(parse_num("iterations", &v)?);
        }
        if let Some(v) = kv.take("change_prob") {
            settings.change_prob = Some(parse_num("change_prob", &v)?);
        }
        if let Some(v) = kv.take("w_move") {
            settings.w_move = Some(parse_num("w_move", &v)?);
        }
        if let Some(v) = kv.take("w_sym") {
            settings.w_sym = Some(parse_num("w_sym", &v)?);
        }
        if let Some(v) = kv.take("seed") {
            settings.seed = Some(parse_num("seed", &v)?);
        }
        if let Some(v) = kv.take("update_order") {
            settings.update_order = Some(parse_update_order("update_order", &v)?);
        }
        if let Some(v) = kv.take("visibility") {
            settings.visibility = Some(parse_visibility("visibility", &v)?);
        }
        Ok(settings)
    }

    /// Fields set in `overrides` win.
    pub fn overlay(mut self, overrides: RunSettings) -> RunSettings {
        macro_rules! pick {
            ($field:ident) => {
                if overrides.$field.is_some() {
                    self.$field = overrides.$field;
                }
            };
        }
        pick!(width);
        pick!(height);
        pick!(topology);
        pick!(neighborhood);
        pick!(creator_fraction);
        pick!(creator_invent_rate);
        pick!(iterations);
        pick!(change_prob);
        pick!(w_move);
        pick!(w_sym);
        pick!(seed);
        pick!(update_order);
        pick!(visibility);
        self
    }

    /// Materializes defaults and validates ranges.
    pub fn resolve(&self) -> Result<RunConfig64> {
        let mut config = RunConfig64::default();
        if let Some(width) = self.width {
            config.world.width = width;
        }
        if let Some(height) = self.height {
            config.world.height = height;
        }
        if let Some(topology) = self.topology {
            config.world.topology = topology;
        }
        if let Some(neighborhood) = self.neighborhood {
            config.world.neighborhood = neighborhood;
        }
        if let Some(fraction) = self.creator_fraction {
            config.world.creator_fraction = fraction;
        }
        if let Some(rate) = self.creator_invent_rate {
            config.world.creator_invent_rate = rate;
        }
        if let Some(iterations) = self.iterations {
            config.iterations = iterations;
        }
        if let Some(change_prob) = self.change_prob {
            config.change_prob = change_prob;
        }
        if let Some(w_move) = self.w_move {
            config.weights.movement = w_move;
        }
        if let Some(w_sym) = self.w_sym {
            config.weights.symmetry = w_sym;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(order) = self.update_order {
            config.update_order = order;
        }
        if let Some(visibility) = self.visibility {
            config.visibility = visibility;
        }
        config.validate()?;
        Ok(config)
    }
}

/// Unresolved sweep settings on top of the base run template.
#[derive(Debug, Default, Clone)]
pub struct SweepSettings {
    pub base: RunSettings,
    pub creator_fractions: Option<Vec<f64>>,
    pub invent_rates: Option<Vec<f64>>,
    pub runs_per_cell: Option<usize>,
    pub measure_at_iteration: Option<usize>,
    pub master_seed: Option<u64>,
    pub threads: Option<usize>,
}

impl SweepSettings {
    pub fn from_key_values(kv: &mut KeyValues) -> Result<SweepSettings> {
        let mut settings = SweepSettings {
            base: RunSettings::from_key_values(kv)?,
            ..SweepSettings::default()
        };
        if let Some(v) = kv.take("creator_fractions") {
            settings.creator_fractions = Some(parse_list("creator_fractions", &v)?);
        }
        if let Some(v) = kv.take("invent_rates") {
            settings.invent_rates = Some(parse_list("invent_rates", &v)?);
        }
        if let Some(v) = kv.take("runs_per_cell") {
            settings.runs_per_cell = Some(parse_num("runs_per_cell", &v)?);
        }
        if let Some(v) = kv.take("measure_at_iteration") {
            settings.measure_at_iteration = Some(parse_num("measure_at_iteration", &v)?);
        }
        if let Some(v) = kv.take("master_seed") {
            settings.master_seed = Some(parse_num("master_seed", &v)?);
        }
        if let Some(v) = kv.take("threads") {
            settings.threads = Some(parse_num("threads", &v)?);
        }
        Ok(settings)
    }

    pub fn overlay(mut self, overrides: SweepSettings) -> SweepSettings {
        self.base = self.base.overlay(overrides.base);
        macro_rules! pick {
            ($field:ident) => {
                if overrides.$field.is_some() {
                    self.$field = overrides.$field;
                }
            };
        }
        pick!(creator_fractions);
        pick!(invent_rates);
        pick!(runs_per_cell);
        pick!(measure_at_iteration);
        pick!(master_seed);
        pick!(threads);
        self
    }

    pub fn resolve(&self) -> Result<(SweepSpec64, Option<usize>)> {
        if let Some(threads) = self.threads {
            if threads == 0 {
                bail!("invalid value for threads: must be at least 1");
            }
        }
        let mut spec = SweepSpec64 {
            base: self.base.resolve()?,
            ..SweepSpec64::default()
        };
        if let Some(fractions) = &self.creator_fractions {
            spec.creator_fractions = fractions.clone();
        }
        if let Some(rates) = &self.invent_rates {
            spec.invent_rates = rates.clone();
        }
        if let Some(runs) = self.runs_per_cell {
            spec.runs_per_cell = runs;
        }
        if let Some(iteration) = self.measure_at_iteration {
            spec.measure_at_iteration = iteration;
        }
        if let Some(seed) = self.master_seed {
            spec.master_seed = seed;
        }
        spec.validate()?;
        Ok((spec, self.threads))
    }
}

fn version_line(subcommand: &str) -> String {
    format!("cultevo {} {subcommand}", env!("CARGO_PKG_VERSION"))
}

fn world_lines(config: &RunConfig64, lines: &mut Vec<String>) {
    lines.push(format!("width={}", config.world.width));
    lines.push(format!("height={}", config.world.height));
    lines.push(format!("topology={}", topology_name(config.world.topology)));
    lines.push(format!(
        "neighborhood={}",
        neighborhood_name(config.world.neighborhood)
    ));
    lines.push(format!("change_prob={}", config.change_prob));
    lines.push(format!("w_move={}", config.weights.movement));
    lines.push(format!("w_sym={}", config.weights.symmetry));
    lines.push(format!(
        "update_order={}",
        update_order_name(config.update_order)
    ));
    lines.push(format!(
        "visibility={}",
        visibility_name(config.visibility)
    ));
}

/// Fully resolved run config as `key=value` lines, led by the tool version.
pub fn run_header(config: &RunConfig64) -> Vec<String> {
    let mut lines = vec![version_line("run")];
    lines.push(format!(
        "creator_fraction={}",
        config.world.creator_fraction
    ));
    lines.push(format!(
        "creator_invent_rate={}",
        config.world.creator_invent_rate
    ));
    lines.push(format!("iterations={}", config.iterations));
    lines.push(format!("seed={}", config.seed));
    world_lines(config, &mut lines);
    lines
}

/// Fully resolved sweep spec as `key=value` lines.
pub fn sweep_header(spec: &SweepSpec64) -> Vec<String> {
    let join = |values: &[f64]| {
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut lines = vec![version_line("sweep")];
    lines.push(format!(
        "creator_fractions={}",
        join(&spec.creator_fractions)
    ));
    lines.push(format!("invent_rates={}", join(&spec.invent_rates)));
    lines.push(format!("runs_per_cell={}", spec.runs_per_cell));
    lines.push(format!(
        "measure_at_iteration={}",
        spec.measure_at_iteration
    ));
    lines.push(format!("master_seed={}", spec.master_seed));
    world_lines(&spec.base, &mut lines);
    lines
}

/// Header for the exhaustive fitness table.
pub fn fitness_table_header(weights: &FitnessWeights<f64>) -> Vec<String> {
    vec![
        version_line("fitness-table"),
        format!("w_move={}", weights.movement),
        format!("w_sym={}", weights.symmetry),
    ]
}
