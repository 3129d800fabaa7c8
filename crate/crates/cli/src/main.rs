//! Command-line front end: single runs, creator-share sweeps, the exhaustive
//! fitness table, and SVG charts.

mod config;
mod csvio;
mod plot;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cultevo::FitnessWeights;

use config::{KeyValues, RunSettings, SweepSettings};

#[derive(Parser)]
#[command(
    name = "cultevo",
    version,
    about = "Grid-world simulation of inventing and imitating agents",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one run and write the per-iteration metrics as CSV.
    Run(RunArgs),
    /// Sweep creator fractions and invent rates; write aggregated cells as CSV.
    Sweep(SweepArgs),
    /// Write the exhaustive 729-action fitness table as CSV.
    FitnessTable(FitnessTableArgs),
    /// Render an SVG chart from a sweep table or run series CSV.
    Plot(PlotArgs),
}

/// Overrides shared by `run` and `sweep` (the sweep's base template).
#[derive(Args, Debug, Default)]
struct WorldFlags {
    /// Grid width in cells.
    #[arg(long)]
    width: Option<usize>,
    /// Grid height in cells.
    #[arg(long)]
    height: Option<usize>,
    /// Edge behavior: toroidal|bounded.
    #[arg(long)]
    topology: Option<String>,
    /// Neighbor set: moore|von_neumann.
    #[arg(long)]
    neighborhood: Option<String>,
    /// Per-part probability of a change event during invention.
    #[arg(long)]
    change_prob: Option<f64>,
    /// Fitness reward per moving part.
    #[arg(long)]
    w_move: Option<f64>,
    /// Fitness reward per opposite-direction limb pair.
    #[arg(long)]
    w_sym: Option<f64>,
    /// Agent processing order: shuffled|fixed_scan.
    #[arg(long)]
    update_order: Option<String>,
    /// Imitation observation mode: snapshot|immediate.
    #[arg(long)]
    visibility: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    world: WorldFlags,
    /// Share of agents that are creators, in [0,1].
    #[arg(long)]
    creator_fraction: Option<f64>,
    /// Probability a creator invents on its turn, in [0,1].
    #[arg(long)]
    creator_invent_rate: Option<f64>,
    /// Number of iterations to simulate.
    #[arg(long)]
    iterations: Option<usize>,
    /// Random seed; fixes the whole trajectory.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Flat key=value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Also render the mean-fitness chart to this SVG path.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    world: WorldFlags,
    /// Comma-separated creator fractions, each in [0,1].
    #[arg(long)]
    creator_fractions: Option<String>,
    /// Comma-separated creator invent rates, each in (0,1].
    #[arg(long)]
    invent_rates: Option<String>,
    /// Independent runs per sweep cell.
    #[arg(long)]
    runs_per_cell: Option<usize>,
    /// Iteration at which each run is measured.
    #[arg(long)]
    measure_at_iteration: Option<usize>,
    /// Master seed; run seeds derive from it and the cell coordinates.
    #[arg(long)]
    master_seed: Option<u64>,
}

#[derive(Args)]
struct FitnessTableArgs {
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Fitness reward per moving part.
    #[arg(long)]
    w_move: Option<f64>,
    /// Fitness reward per opposite-direction limb pair.
    #[arg(long)]
    w_sym: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Fitness,
    Diversity,
}

#[derive(Args)]
struct PlotArgs {
    /// Input CSV (sweep table or run series).
    #[arg(long = "in")]
    input: PathBuf,
    /// Which metric to chart.
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Sweep(args) => sweep_command(args),
        Command::FitnessTable(args) => fitness_table_command(args),
        Command::Plot(args) => plot_command(args),
    };
    if let Err(error) = outcome {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}

fn file_key_values(path: &Option<PathBuf>) -> Result<KeyValues> {
    match path {
        Some(path) => KeyValues::load(path),
        None => Ok(KeyValues::default()),
    }
}

impl WorldFlags {
    fn into_settings(self) -> Result<RunSettings> {
        // Reuse the config-file parsers so flags and file values share
        // validation and error wording.
        let mut text = String::new();
        let mut push = |key: &str, value: Option<String>| {
            if let Some(value) = value {
                text.push_str(&format!("{key}={value}\n"));
            }
        };
        push("width", self.width.map(|v| v.to_string()));
        push("height", self.height.map(|v| v.to_string()));
        push("topology", self.topology);
        push("neighborhood", self.neighborhood);
        push("change_prob", self.change_prob.map(|v| v.to_string()));
        push("w_move", self.w_move.map(|v| v.to_string()));
        push("w_sym", self.w_sym.map(|v| v.to_string()));
        push("update_order", self.update_order);
        push("visibility", self.visibility);
        let mut kv = KeyValues::parse(&text)?;
        let settings = RunSettings::from_key_values(&mut kv)?;
        kv.expect_empty()?;
        Ok(settings)
    }
}

fn run_command(args: RunArgs) -> Result<()> {
    let mut kv = file_key_values(&args.config)?;
    let file_settings = RunSettings::from_key_values(&mut kv)?;
    kv.expect_empty()?;

    let mut flag_settings = args.world.into_settings()?;
    flag_settings.creator_fraction = args.creator_fraction.or(flag_settings.creator_fraction);
    flag_settings.creator_invent_rate = args
        .creator_invent_rate
        .or(flag_settings.creator_invent_rate);
    flag_settings.iterations = args.iterations;
    flag_settings.seed = args.seed;

    let config = file_settings.overlay(flag_settings).resolve()?;
    let records = cultevo::run(&config)?;
    let header = config::run_header(&config);
    csvio::write_file(&args.out, &csvio::series_csv(&header, &records))?;
    println!(
        "wrote {} ({} records, final mean fitness {})",
        args.out.display(),
        records.len(),
        records.last().map(|r| r.mean_fitness).unwrap_or(0.0)
    );
    Ok(())
}

fn sweep_command(args: SweepArgs) -> Result<()> {
    let mut kv = file_key_values(&args.config)?;
    let file_settings = SweepSettings::from_key_values(&mut kv)?;
    kv.expect_empty()?;

    let base_flags = args.world.into_settings()?;
    let mut flag_settings = SweepSettings {
        base: base_flags,
        runs_per_cell: args.runs_per_cell,
        measure_at_iteration: args.measure_at_iteration,
        master_seed: args.master_seed,
        threads: args.threads,
        ..SweepSettings::default()
    };
    if let Some(list) = &args.creator_fractions {
        flag_settings.creator_fractions = Some(config::parse_fraction_list(list)?);
    }
    if let Some(list) = &args.invent_rates {
        flag_settings.invent_rates = Some(config::parse_rate_list(list)?);
    }

    let (spec, threads) = file_settings.overlay(flag_settings).resolve()?;
    let rows = match threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("building sweep thread pool")?
            .install(|| cultevo::sweep(&spec)),
        None => cultevo::sweep(&spec),
    }?;

    let header = config::sweep_header(&spec);
    csvio::write_file(&args.out, &csvio::sweep_csv(&header, &rows))?;
    println!("wrote {} ({} cells)", args.out.display(), rows.len());

    if let Some(plot_path) = &args.plot {
        let table = csvio::parse_table(&csvio::sweep_csv(&header, &rows))?;
        let chart = plot::sweep_chart(&table, plot::Metric::Fitness)?;
        let svg = plot::render_svg(&chart, &table.comments)?;
        csvio::write_file(plot_path, &svg)?;
        println!("wrote {}", plot_path.display());
    }
    Ok(())
}

fn fitness_table_command(args: FitnessTableArgs) -> Result<()> {
    let weights = FitnessWeights::new(args.w_move.unwrap_or(1.0), args.w_sym.unwrap_or(5.0));
    weights.validate()?;
    let rows = cultevo::enumerate_fitness_table(&weights);
    let header = config::fitness_table_header(&weights);
    csvio::write_file(&args.out, &csvio::fitness_table_csv(&header, &rows))?;
    println!("wrote {} ({} rows)", args.out.display(), rows.len());
    Ok(())
}

fn plot_command(args: PlotArgs) -> Result<()> {
    let table = csvio::read_table(&args.input)?;
    let metric = match args.metric {
        MetricArg::Fitness => plot::Metric::Fitness,
        MetricArg::Diversity => plot::Metric::Diversity,
    };
    let chart = plot::chart_from_table(&table, metric)?;
    let mut comments = vec![format!(
        "cultevo {} plot metric={}",
        env!("CARGO_PKG_VERSION"),
        metric.name()
    )];
    comments.extend(table.comments.iter().cloned());
    let svg = plot::render_svg(&chart, &comments)?;
    csvio::write_file(&args.out, &svg)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
