use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rmlab::lab::{
    run_bounds, run_experiment, run_grid, run_spectrum, write_reports, DegreeSpec,
    ExperimentConfig, Format, GridConfig, Mode, Report, Sampling, SizeSpec,
};
use rmlab::spectrum::{BoundParams, WeightEnumerator};
use rmlab::vanishing::{closure, PointSet};
use rmlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "rmlab",
    version,
    about = "Reed-Muller vanishing-set and decoding experiments"
)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full-rank probability of K random evaluation columns.
    Rank(ExperimentArgs),
    /// Erasure decoding of RM(m, d).
    Bec(ExperimentArgs),
    /// Error decoding of RM(m, m-2r-2).
    Bsc(ExperimentArgs),
    /// Monte Carlo vs exact expected vanishing-space size.
    ExpectedSize(ExperimentArgs),
    /// Degree-r closures of random sets, or of a fixture with --points.
    Closure(ClosureArgs),
    /// Exact weight enumerator and interval counts of RM(m, r).
    Spectrum(SpectrumArgs),
    /// Low/medium weight bounds against the exact enumerator.
    Bounds(BoundsArgs),
    /// Runs a TOML grid of experiments (the shipped grid by default).
    Grid(GridArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write results here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    m: usize,
    /// Evaluation degree (parity-check degree for bec, locator degree for bsc).
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    r: Option<usize>,
    /// Code degree (bec and bsc only).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, conflicts_with = "epsilon", required_unless_present = "epsilon")]
    k: Option<usize>,
    /// Sets K = round((1 - epsilon) * C(m, <=r)).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "distinct", value_parser = ["distinct", "with-replacement"])]
    sampling: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClosureArgs {
    /// Point-set fixture; prints its closure instead of running trials.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, required_unless_present = "points")]
    m: Option<usize>,
    #[arg(long)]
    r: usize,
    #[arg(long, conflicts_with = "epsilon")]
    k: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: usize,
    /// Enumerator cache file: read if present, written otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    c4: Option<f64>,
    #[arg(long)]
    a_low: Option<f64>,
    #[arg(long)]
    a_med: Option<f64>,
    #[arg(long)]
    b_med: Option<f64>,
    #[arg(long)]
    med_gamma_max: Option<f64>,
    #[arg(long)]
    med_ell_ratio_cap: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GridArgs {
    /// Grid TOML file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn sampling(name: &str) -> Sampling {
    match name {
        "with-replacement" => Sampling::WithReplacement,
        _ => Sampling::Distinct,
    }
}

fn experiment_config(mode: Mode, a: &ExperimentArgs) -> ExperimentConfig {
    let degree = match (a.r, a.d) {
        (_, Some(d)) => DegreeSpec::D(d),
        (r, None) => DegreeSpec::R(r.unwrap_or(0)),
    };
    let size = a.k.map(SizeSpec::K).or(a.epsilon.map(SizeSpec::Epsilon));
    ExperimentConfig::new(mode, a.m, degree, size)
        .with_trials(a.trials)
        .with_seed(a.seed)
        .with_sampling(sampling(&a.sampling))
}

fn emit(output: &OutputArgs, reports: &[Report]) -> Result<()> {
    let format: Format = output.format.parse()?;
    match &output.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            write_reports(&mut file, reports, format)
        }
        None => write_reports(&mut io::stdout().lock(), reports, format),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Returns the number of invariant violations.
fn run(cli: Cli) -> Result<usize> {
    let reports = match cli.command {
        Command::Rank(a) => experiment(Mode::Rank, a)?,
        Command::Bec(a) => experiment(Mode::Bec, a)?,
        Command::Bsc(a) => experiment(Mode::Bsc, a)?,
        Command::ExpectedSize(a) => experiment(Mode::ExpectedSize, a)?,
        Command::Closure(a) => {
            if let Some(path) = &a.points {
                let set = PointSet::from_fixture(&read(path)?)?;
                let cl = closure(&set, a.r)?;
                let text = cl.to_fixture();
                match &a.output.out {
                    Some(p) => fs::write(p, text)
                        .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
                    None => print!("{text}"),
                }
                return Ok(0);
            }
            let size = a.k.map(SizeSpec::K).or(a.epsilon.map(SizeSpec::Epsilon));
            let cfg =
                ExperimentConfig::new(Mode::Closure, a.m.unwrap_or(0), DegreeSpec::R(a.r), size)
                    .with_trials(a.trials)
                    .with_seed(a.seed);
            let run = run_experiment(&cfg)?;
            (vec![Report::Experiment(run.summary)], a.output)
        }
        Command::Spectrum(a) => {
            let cached = match &a.cache {
                Some(path) if path.exists() => Some(WeightEnumerator::from_cache(&read(path)?)?),
                _ => None,
            };
            let cfg = ExperimentConfig::new(Mode::Spectrum, a.m, DegreeSpec::R(a.r), None);
            let summary = match cached {
                Some(we) if (we.m(), we.r()) == (a.m, a.r) => {
                    rmlab::lab::spectrum_summary(&cfg, &we)?
                }
                Some(we) => {
                    return Err(Error::Config(format!(
                        "cache holds RM({}, {}), asked for RM({}, {})",
                        we.m(),
                        we.r(),
                        a.m,
                        a.r
                    )))
                }
                None => {
                    let (summary, we) = run_spectrum(&cfg)?;
                    if let Some(path) = &a.cache {
                        fs::write(path, we.to_cache())
                            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                    }
                    summary
                }
            };
            (vec![Report::Spectrum(summary)], a.output)
        }
        Command::Bounds(a) => {
            let mut p = BoundParams::default();
            for (slot, v) in [
                (&mut p.c4, a.c4),
                (&mut p.a_low, a.a_low),
                (&mut p.a_med, a.a_med),
                (&mut p.b_med, a.b_med),
                (&mut p.med_gamma_max, a.med_gamma_max),
                (&mut p.med_ell_ratio_cap, a.med_ell_ratio_cap),
            ] {
                if let Some(v) = v {
                    *slot = v;
                }
            }
            (
                vec![Report::Bounds(run_bounds(a.m, a.r, a.ell, &p)?)],
                a.output,
            )
        }
        Command::Grid(a) => {
            let grid = match &a.config {
                Some(path) => GridConfig::from_toml(&read(path)?)?,
                None => GridConfig::default_grid(),
            };
            let outcome = run_grid(&grid)?;
            for (cfg, why) in &outcome.skipped {
                eprintln!(
                    "skipped {} m={} {:?}: {why}",
                    cfg.mode.name(),
                    cfg.m,
                    cfg.degree
                );
            }
            let reports = outcome
                .summaries
                .into_iter()
                .map(Report::Experiment)
                .collect();
            (reports, a.output)
        }
    };
    let (reports, output) = reports;
    emit(&output, &reports)?;
    Ok(reports.iter().map(Report::violations).sum())
}

fn experiment(mode: Mode, a: ExperimentArgs) -> Result<(Vec<Report>, OutputArgs)> {
    let run = run_experiment(&experiment_config(mode, &a))?;
    Ok((vec![Report::Experiment(run.summary)], a.output))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("{n} invariant violation(s)");
            ExitCode::from(2)
        }
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
