//! Subcommands: `generate`, `select`, `estimate`, `validate`, `report`.
//!
//! Each writes into `--out DIR` together with a manifest. Exit status is 0 on
//! success, 1 for usage, input and IO errors, 2 for numerical failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use narxiv_core::estimation::{estimate, interval_regression};
use narxiv_core::metrics::{rmse_interval, rmse_point};
use narxiv_core::model::{default_width_cap, free_run, free_run_capped, one_step_ahead};
use narxiv_core::selection::{select_structure, CandidateSpace};
use narxiv_core::signals::{add_uniform_noise, duffing_ueda_simulate, prbs, DuffingParams};
use narxiv_core::{Dataset, PowerMode, SelectionConfig, SolverConfig, WideningPolicy};

use crate::config;
use crate::dataset_csv::{read_dataset, write_dataset};
use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::model_file::ModelFile;
use crate::tables;

pub const DEFAULT_SEED: u64 = 1;
pub const SEED_ENV: &str = "NARXIV_SEED";

#[derive(Parser, Debug)]
#[command(name = "narxiv", version, about = "Interval-verified NARX identification pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthesise a dataset CSV.
    Generate {
        #[command(subcommand)]
        source: Source,
    },
    /// Rank candidate terms by ERR and choose the model size by AIC.
    Select(SelectArgs),
    /// Point and verified interval parameter estimates for a structure.
    Estimate(EstimateArgs),
    /// One-step-ahead or free-run validation with RMSE.
    Validate(ValidateArgs),
    /// Collect RMSE summaries from a directory tree into one table.
    Report(ReportArgs),
}

#[derive(Subcommand, Debug)]
pub enum Source {
    /// Forced Duffing-Ueda oscillator, RK4 integrated.
    Duffing(DuffingArgs),
    /// PRBS input driving the linear surrogate y(k) = a y(k-1) + b u(k-1).
    Prbs(PrbsArgs),
}

#[derive(Args, Debug)]
pub struct DuffingArgs {
    /// Forcing amplitude.
    #[arg(long = "A", default_value_t = 1.2, allow_negative_numbers = true)]
    pub amplitude: f64,
    /// Damping.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub k: f64,
    /// Cubic stiffness.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Upper bound on the integration step.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Forcing periods kept.
    #[arg(long, default_value_t = 100)]
    pub periods: usize,
    /// Samples per forcing period.
    #[arg(long, default_value_t = 20)]
    pub spp: usize,
    /// Forcing periods discarded before sampling.
    #[arg(long, default_value_t = 50)]
    pub transient: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Half-width of uniform output measurement noise.
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    /// Noise seed (default: $NARXIV_SEED, else 1).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct PrbsArgs {
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    /// Register size, 2 to 16.
    #[arg(long, default_value_t = 9)]
    pub bits: u32,
    /// Register seed, also used for noise (default: $NARXIV_SEED, else 1).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Samples each register bit is held.
    #[arg(long, default_value_t = 1)]
    pub hold: usize,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub low: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub high: f64,
    /// Surrogate coefficients `a,b`.
    #[arg(long, default_value = "0.5,0.3", allow_hyphen_values = true)]
    pub surrogate: Surrogate,
    /// Half-width of uniform output measurement noise.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Surrogate {
    pub a: f64,
    pub b: f64,
}

impl FromStr for Surrogate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or("expected a,b")?;
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number"));
        Ok(Surrogate { a: num(a)?, b: num(b)? })
    }
}

/// Half-open sample range `start:end`; either side may be omitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SampleRange {
    pub start: Option<usize>,
    pub end: Option<usize>,
}

impl FromStr for SampleRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or("expected start:end")?;
        let side = |v: &str| -> std::result::Result<Option<usize>, String> {
            let v = v.trim();
            if v.is_empty() {
                Ok(None)
            } else {
                v.parse().map(Some).map_err(|_| format!("`{v}` is not a sample index"))
            }
        };
        Ok(SampleRange { start: side(a)?, end: side(b)? })
    }
}

#[derive(Args, Debug)]
pub struct DataArgs {
    /// Dataset CSV (`k,u,y`).
    #[arg(long)]
    pub data: PathBuf,
    /// Use samples `start:end` only (half-open).
    #[arg(long)]
    pub samples: Option<SampleRange>,
}

#[derive(Args, Debug)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: DataArgs,
    /// Maximum polynomial degree.
    #[arg(long, default_value_t = 2)]
    pub l: u32,
    /// Output lags 1..=ny.
    #[arg(long, default_value_t = 2)]
    pub ny: u32,
    /// Number of input lags.
    #[arg(long, default_value_t = 2)]
    pub nu: u32,
    /// First input lag.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 20)]
    pub max_terms: usize,
    /// Prefix fits with rss below this fraction of <y,y> count as exact.
    #[arg(long, default_value_t = 1e-20)]
    pub perfect_fit_tol: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: DataArgs,
    /// Structure (or model) file.
    #[arg(long)]
    pub structure: PathBuf,
    /// Data widening: `degenerate`, `abs:X` or `rel:X`.
    #[arg(long, default_value = "degenerate")]
    pub widen: WideningPolicy,
    /// Also write the interval regressor matrix.
    #[arg(long)]
    pub dump_regressors: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Osa,
    FreeRun,
}

impl Mode {
    fn label(self) -> &'static str {
        match self {
            Mode::Osa => "osa",
            Mode::FreeRun => "free-run",
        }
    }
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: DataArgs,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Osa)]
    pub mode: Mode,
    /// Propagate interval coefficients and data.
    #[arg(long)]
    pub interval: bool,
    /// Interval free-run width bound (default: 10x the measured output range).
    #[arg(long)]
    pub width_cap: Option<f64>,
    /// Case label in the RMSE summary (default: the model's data name).
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Directory searched recursively for `rmse.csv` files.
    #[arg(long)]
    pub runs: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

fn override_self(cmd: clap::Command) -> clap::Command {
    cmd.args_override_self(true).mut_subcommands(override_self)
}

/// Parses and runs `args` (`args[0]` is the program name) and returns the
/// process exit status. Diagnostics go to stderr.
pub fn run(args: Vec<String>) -> i32 {
    let args = match config::expand(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let matches = match override_self(Cli::command()).try_get_matches_from(&args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 1;
        }
    };
    match execute(cli.command, &args[1..]) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, args: &[String]) -> Result<()> {
    match command {
        Command::Generate { source: Source::Duffing(a) } => generate_duffing(a, args),
        Command::Generate { source: Source::Prbs(a) } => generate_prbs(a, args),
        Command::Select(a) => select(a, args),
        Command::Estimate(a) => estimate_cmd(a, args),
        Command::Validate(a) => validate(a, args),
        Command::Report(a) => report(a, args),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Usage(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Creates `dir/name` through `f` and returns its path.
fn write_file(dir: &Path, name: &str, f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<PathBuf> {
    let path = dir.join(name);
    let mut buf = Vec::new();
    f(&mut buf).map_err(|e| Error::io(&path, e))?;
    fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn load(input: &DataArgs) -> Result<Dataset> {
    let d = read_dataset(&input.data)?;
    let Some(r) = input.samples else { return Ok(d) };
    let (start, end) = (r.start.unwrap_or(0), r.end.unwrap_or(d.len()));
    if start >= end || end > d.len() {
        return Err(Error::Usage(format!("--samples {start}:{end} outside 0:{}", d.len())));
    }
    Ok(Dataset::new(d.name(), d.sample_time(), d.u()[start..end].to_vec(), d.y()[start..end].to_vec())?)
}

fn finish(
    command: &str,
    args: &[String],
    seed: Option<u64>,
    inputs: &[PathBuf],
    out: &Path,
    outputs: &[PathBuf],
) -> Result<()> {
    Manifest::new(command, args, seed, inputs, outputs)?.write(out)?;
    Ok(())
}

fn generate_duffing(a: DuffingArgs, args: &[String]) -> Result<()> {
    let seed = resolve_seed(a.seed)?;
    let p = DuffingParams {
        k: a.k,
        mu: a.mu,
        amplitude: a.amplitude,
        dt: a.dt,
        n_periods: a.periods,
        samples_per_period: a.spp,
        transient_periods: a.transient,
        y0: a.y0,
        v0: a.v0,
        noise: a.noise,
        noise_seed: seed,
    };
    let d = duffing_ueda_simulate(&p)?;
    out_dir(&a.out)?;
    let path = write_file(&a.out, "data.csv", |w| write_dataset(w, &d))?;
    println!("{} samples, sample time {}", d.len(), d.sample_time());
    finish("generate duffing", args, Some(seed), &[], &a.out, &[path])
}

fn generate_prbs(a: PrbsArgs, args: &[String]) -> Result<()> {
    let seed = resolve_seed(a.seed)?;
    let reg_seed = u32::try_from(seed).map_err(|_| Error::Usage("PRBS seed must fit in 32 bits".into()))?;
    let u = prbs(a.length, a.bits, reg_seed, a.hold, a.low, a.high)?;
    let mut y = vec![0.0; u.len()];
    for k in 1..u.len() {
        y[k] = a.surrogate.a * y[k - 1] + a.surrogate.b * u[k - 1];
    }
    add_uniform_noise(&mut y, a.noise, seed)?;
    let d = Dataset::new("prbs", 1.0, u, y)?;
    out_dir(&a.out)?;
    let path = write_file(&a.out, "data.csv", |w| write_dataset(w, &d))?;
    println!("{} samples", d.len());
    finish("generate prbs", args, Some(seed), &[], &a.out, &[path])
}

fn select(a: SelectArgs, args: &[String]) -> Result<()> {
    let data = load(&a.input)?;
    let space = CandidateSpace { l: a.l, n_y: a.ny, n_u: a.nu, d: a.d };
    let config = SelectionConfig { max_terms: a.max_terms, perfect_fit_tol: a.perfect_fit_tol };
    let report = select_structure(&space, &data, &config)?;
    out_dir(&a.out)?;
    let ranking = write_file(&a.out, "ranking.csv", |w| tables::write_ranking(w, &report))?;
    let aic = write_file(&a.out, "aic.csv", |w| tables::write_aic_trace(w, &report.aic_trace))?;
    let structure = a.out.join("structure.model");
    ModelFile::structure_only(report.chosen.clone(), Some(data.name().to_string())).write(&structure)?;
    println!("selected {} of {} ranked terms", report.chosen.len(), report.ranked_terms.len());
    finish("select", args, None, std::slice::from_ref(&a.input.data), &a.out, &[ranking, aic, structure])
}

fn estimate_cmd(a: EstimateArgs, args: &[String]) -> Result<()> {
    let data = load(&a.input)?;
    let structure = ModelFile::read(&a.structure)?.structure;
    let result = estimate(&data, &structure, a.widen, &SolverConfig::default())?;
    out_dir(&a.out)?;
    let model = a.out.join("estimated.model");
    ModelFile::from_estimate(&result).write(&model)?;
    let mut outputs = vec![model];
    if a.dump_regressors {
        let reg = interval_regression(&data, &structure, a.widen)?;
        let headers: Vec<String> = structure.terms().iter().map(|t| t.to_string()).collect();
        outputs
            .push(write_file(&a.out, "regressors.csv", |w| tables::write_interval_matrix(w, &headers, &reg.matrix))?);
    }
    let widest = result.theta_interval.iter().map(|i| i.width()).fold(0.0, f64::max);
    println!("{} parameters, widest interval {widest:e}", result.theta_point.len());
    finish("estimate", args, None, &[a.input.data.clone(), a.structure.clone()], &a.out, &outputs)
}

fn validate(a: ValidateArgs, args: &[String]) -> Result<()> {
    let data = load(&a.input)?;
    let model = ModelFile::read(&a.model)?;
    let coef = model.require_coefficients().map_err(|m| Error::Usage(format!("{}: {m}", a.model.display())))?;
    let s = &model.structure;
    let theta_p = coef.point_or_midpoint();
    let case = a
        .case
        .clone()
        .or_else(|| model.data.clone())
        .unwrap_or_else(|| a.model.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_default());
    let (u, y) = (data.u(), data.y());
    let ml = s.max_lag();
    if y.len() <= ml + 1 {
        return Err(narxiv_core::Error::InsufficientData { needed: ml + 2, available: y.len() }.into());
    }
    let widening = model.widening.unwrap_or_default();
    let lift = || -> Result<_> { Ok((widening.lift_all(u)?, widening.lift_all(y)?)) };

    let mut row =
        tables::RmseRow { case, mode: a.mode.label().into(), rmse: 0.0, interval: None, width_cap_step: None };
    let predictions = match a.mode {
        Mode::Osa => {
            let p = one_step_ahead(s, &theta_p, u, y, PowerMode::Tight)?;
            row.rmse = rmse_point(&y[ml..], &p)?;
            if a.interval {
                let (ui, yi) = lift()?;
                let pi = one_step_ahead(s, &coef.interval, &ui, &yi, PowerMode::Tight)?;
                row.interval = Some(rmse_interval(&yi[ml..], &pi)?);
                write_file(&a.out_ready()?, "predictions.csv", |w| tables::write_interval_predictions(w, ml, y, &pi))?
            } else {
                write_file(&a.out_ready()?, "predictions.csv", |w| tables::write_point_predictions(w, ml, y, &p))?
            }
        }
        Mode::FreeRun => {
            let p = free_run(s, &theta_p, u, &y[..ml], PowerMode::Tight)?;
            row.rmse = rmse_point(&y[ml..], &p[ml..])?;
            if a.interval {
                let (ui, yi) = lift()?;
                let cap = a.width_cap.unwrap_or_else(|| default_width_cap(y));
                let r = free_run_capped(s, &coef.interval, &ui, &yi[..ml], PowerMode::Tight, cap)?;
                match r.cap_exceeded {
                    Some(c) => {
                        eprintln!("interval free run: width {:e} exceeded cap {cap:e} at step {}", c.width, c.step);
                        row.width_cap_step = Some(c.step);
                    }
                    None => row.interval = Some(rmse_interval(&yi[ml..], &r.outputs[ml..])?),
                }
                write_file(&a.out_ready()?, "predictions.csv", |w| {
                    tables::write_interval_predictions(w, ml, y, &r.outputs[ml..])
                })?
            } else {
                write_file(&a.out_ready()?, "predictions.csv", |w| tables::write_point_predictions(w, ml, y, &p[ml..]))?
            }
        }
    };
    let rmse = write_file(&a.out, "rmse.csv", |w| tables::write_rmse_rows(w, std::slice::from_ref(&row)))?;
    match row.interval {
        Some(i) => println!("{} rmse {} interval {i}", row.mode, row.rmse),
        None => println!("{} rmse {}", row.mode, row.rmse),
    }
    finish("validate", args, None, &[a.input.data.clone(), a.model.clone()], &a.out, &[predictions, rmse])
}

impl ValidateArgs {
    fn out_ready(&self) -> Result<PathBuf> {
        out_dir(&self.out)?;
        Ok(self.out.clone())
    }
}

fn find_rmse_files(dir: &Path, found: &mut Vec<PathBuf>) -> Result<()> {
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_dir() {
            find_rmse_files(&path, found)?;
        } else if path.file_name().is_some_and(|n| n == "rmse.csv") {
            found.push(path);
        }
    }
    Ok(())
}

fn report(a: ReportArgs, args: &[String]) -> Result<()> {
    let mut files = Vec::new();
    find_rmse_files(&a.runs, &mut files)?;
    files.sort();
    if files.is_empty() {
        return Err(Error::Usage(format!("no rmse.csv under {}", a.runs.display())));
    }
    let mut rows = Vec::new();
    for f in &files {
        let file = fs::File::open(f).map_err(|e| Error::io(f, e))?;
        rows.extend(tables::read_rmse_rows(file).map_err(|e| e.at(f))?);
    }
    out_dir(&a.out)?;
    let path = write_file(&a.out, "report.csv", |w| tables::write_report(w, &rows))?;
    println!("{} runs from {} files", rows.len(), files.len());
    finish("report", args, None, &files, &a.out, &[path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsers() {
        assert_eq!("1:5".parse::<SampleRange>().unwrap(), SampleRange { start: Some(1), end: Some(5) });
        assert_eq!(":5".parse::<SampleRange>().unwrap(), SampleRange { start: None, end: Some(5) });
        assert!("x:5".parse::<SampleRange>().is_err());
        assert_eq!("0.5,-0.3".parse::<Surrogate>().unwrap(), Surrogate { a: 0.5, b: -0.3 });
        assert!("0.5".parse::<Surrogate>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_one() {
        let args = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(run(args(&["narxiv", "bogus"])), 1);
        assert_eq!(run(args(&["narxiv", "select"])), 1);
        assert_eq!(run(args(&["narxiv", "--help"])), 0);
    }
}
