//! Command-line front end. Every command validates its arguments in full
//! before any computation starts and only writes output once the whole
//! result has been rendered.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::balance::{self, DEFAULT_TOLERANCE};
use crate::error::Error;
use crate::output;
use crate::reliability::{self, SweepOptions, TABLE1_K, TABLE1_N};
use crate::system::{BalanceCondition, SystemConfig, UnitSet, DEFAULT_ENUMERATION_LIMIT};
use crate::tiesets;

#[derive(Debug, Parser)]
#[command(name = "circbal", version, about = "Balance checks, minimum tie-sets and reliability of circular k-out-of-n:G balanced systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one set of operating units under all three balance conditions.
    Check(CheckArgs),
    /// List the minimum tie-sets of one system.
    Tiesets(TiesetsArgs),
    /// Minimum tie-set counts for the reference (k, n) grid.
    Table1(Table1Args),
    /// Reliability of one or more systems at given unit reliabilities.
    Reliability(SweepArgs),
    /// Reliability over a grid of unit reliabilities.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// BC3 threshold on the center-of-gravity norm.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated 1-based unit indices.
    #[arg(long, allow_hyphen_values = true)]
    pub units: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TiesetsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// bc1, bc2 or bc3.
    #[arg(long)]
    pub condition: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated system sizes.
    #[arg(long)]
    pub n: String,
    /// Comma-separated values of k.
    #[arg(long)]
    pub k: String,
    /// Comma-separated conditions, or `all`.
    #[arg(long, default_value = "all")]
    pub condition: String,
    /// Comma-separated unit reliabilities.
    #[arg(long, conflicts_with = "r_grid")]
    pub r: Option<String>,
    /// Inclusive grid `start:end:step`; an empty value gives an empty grid.
    #[arg(long)]
    pub r_grid: Option<String>,
    /// Also evaluate reliability by full state enumeration.
    #[arg(long)]
    pub exact: bool,
    /// Additionally write one CSV per (n, k, condition) into this directory.
    #[arg(long)]
    pub split_dir: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_computation() {
            CliError::Computation(e)
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| invalid(format!("invalid {what} '{s}'"))))
        .collect()
}

pub fn parse_conditions(text: &str) -> Result<Vec<BalanceCondition>, CliError> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(BalanceCondition::ALL.to_vec());
    }
    let list = parse_list::<BalanceCondition>(text, "condition")?;
    if list.is_empty() {
        return Err(invalid("no balance condition given"));
    }
    Ok(list)
}

/// Expands `start:end:step` into an inclusive grid. The end point is kept
/// when the last step lands within 1e-12 of it.
pub fn parse_r_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| invalid(format!("invalid r-grid component '{s}'"))))
        .collect::<Result<_, _>>()?;
    let [start, end, step] = parts[..] else {
        return Err(invalid(format!("r-grid must be start:end:step, got '{text}'")));
    };
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid(format!("r-grid step must be positive, got {step}")));
    }
    for v in [start, end] {
        if !(0.0..=1.0).contains(&v) {
            return Err(invalid(format!("r-grid bounds must lie in [0, 1], got {v}")));
        }
    }
    const EPS: f64 = 1e-12;
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let mut p = start + i as f64 * step;
        if p > end + EPS {
            break;
        }
        if (p - end).abs() <= EPS {
            p = end;
        }
        grid.push(p);
        i += 1;
    }
    Ok(grid)
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("--tol must be positive, got {tol}")))
    }
}

fn check_bound(n: usize) -> Result<(), CliError> {
    if n > DEFAULT_ENUMERATION_LIMIT {
        Err(CliError::Computation(Error::TooLarge { n, limit: DEFAULT_ENUMERATION_LIMIT }))
    } else {
        Ok(())
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

pub fn render_check(args: &CheckArgs) -> Result<String, CliError> {
    check_tol(args.common.tol)?;
    let indices = parse_list::<i64>(&args.units, "unit index")?;
    let units = UnitSet::new(&indices, args.n)?;
    let report = balance::classify(&units, args.common.tol)?;
    Ok(match args.common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "n": args.n,
                "units": units,
                "report": report,
            }))
            .expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "units: {} (n={})\naxis_count: {}\ncog: ({:.6}, {:.6})\ncog_norm: {:.6}\nBC1: {}\nBC2: {}\nBC3: {}\n",
            units, args.n, report.axis_count, report.cog.x, report.cog.y, report.cog.norm, report.bc1, report.bc2, report.bc3
        ),
    })
}

pub fn render_tiesets(args: &TiesetsArgs) -> Result<String, CliError> {
    check_tol(args.common.tol)?;
    let config = SystemConfig::new(args.n, args.k)?;
    let condition: BalanceCondition = args.condition.parse().map_err(CliError::Validation)?;
    check_bound(args.n)?;
    let catalog = tiesets::enumerate_minimum_tiesets(config, condition, args.common.tol)?;
    Ok(match args.common.format {
        Format::Csv => output::catalog_text(&catalog),
        Format::Json => output::catalog_json(&catalog),
    })
}

pub fn render_table1(args: &Table1Args) -> Result<String, CliError> {
    check_tol(args.common.tol)?;
    let rows = reliability::table1_counts(&TABLE1_N, &TABLE1_K, args.common.tol)?;
    Ok(match args.common.format {
        Format::Csv => output::table1_csv(&rows),
        Format::Json => output::table1_json(&rows),
    })
}

struct SweepPlan {
    configs: Vec<SystemConfig>,
    conditions: Vec<BalanceCondition>,
    grid: Vec<f64>,
    options: SweepOptions,
}

fn plan_sweep(args: &SweepArgs) -> Result<SweepPlan, CliError> {
    check_tol(args.common.tol)?;
    let ns = parse_list::<usize>(&args.n, "n")?;
    let ks = parse_list::<usize>(&args.k, "k")?;
    if ns.is_empty() || ks.is_empty() {
        return Err(invalid("--n and --k need at least one value"));
    }
    let mut configs = Vec::new();
    for &n in &ns {
        for &k in &ks {
            configs.push(SystemConfig::new(n, k)?);
        }
    }
    let conditions = parse_conditions(&args.condition)?;
    let grid = match (&args.r, &args.r_grid) {
        (Some(r), None) => parse_list::<f64>(r, "r")?,
        (None, Some(g)) => parse_r_grid(g)?,
        _ => return Err(invalid("exactly one of --r and --r-grid is required")),
    };
    if let Some(bad) = grid.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(invalid(format!("unit reliability must lie in [0, 1], got {bad}")));
    }
    for &n in &ns {
        check_bound(n)?;
    }
    Ok(SweepPlan {
        configs,
        conditions,
        grid,
        options: SweepOptions { exact: args.exact, tol: args.common.tol, limit: DEFAULT_ENUMERATION_LIMIT },
    })
}

fn run_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let plan = plan_sweep(args)?;
    let table = reliability::sweep(&plan.configs, &plan.conditions, &plan.grid, plan.options)?;
    let content = match args.common.format {
        Format::Csv => output::sweep_csv(&table),
        Format::Json => output::sweep_json(&table),
    };
    let mut pieces = Vec::new();
    if let Some(dir) = &args.split_dir {
        let per_system = table.rows.len() / (plan.configs.len() * plan.conditions.len()).max(1);
        for chunk in table.rows.chunks(per_system.max(1)) {
            let first = &chunk[0];
            let part = reliability::ReliabilityTable { rows: chunk.to_vec() };
            let path = dir.join(format!("sweep_n{}_k{}_{}.csv", first.n, first.k, first.condition));
            pieces.push((path, output::sweep_csv(&part)));
        }
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    }
    emit(args.common.out.as_deref(), &content)?;
    for (path, text) in pieces {
        emit(Some(&path), &text)?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check(a) => emit(a.common.out.as_deref(), &render_check(&a)?),
        Command::Tiesets(a) => emit(a.common.out.as_deref(), &render_tiesets(&a)?),
        Command::Table1(a) => emit(a.common.out.as_deref(), &render_table1(&a)?),
        Command::Reliability(a) | Command::Sweep(a) => run_sweep(&a),
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
