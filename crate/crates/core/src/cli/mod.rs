//! Command-line front end: `sweep`, `constants` and `simulate`.

mod rows;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{compute_constants, sweep, NumericSteps};
use crate::strategies::{
    build_bsp, build_fast_chord, build_half_chord, optimize_fast_chord, solve_fast_chord_system,
    Strategy,
};
use crate::worstcase::{distance_sweep_worst_case, explored_union, worst_case};
use crate::EvacError;

use rows::{fmt6, Fixed};
pub use rows::{read_csv, round6, write_csv, SweepRow, SWEEP_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "evac",
    version,
    about = "Two-robot wireless evacuation on the unit disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every bound on a grid of speeds.
    Sweep(SweepArgs),
    /// Crossover constants between bound curves.
    Constants(ConstantsArgs),
    /// Worst-case exit for one strategy.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Bsp,
    HalfChord,
    FastChord,
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    /// Fast-Chord x3 sweep step.
    #[arg(long, default_value_t = 1e-2)]
    pub x3_step: f64,
    /// Time step of the Fast-Chord distance sweep.
    #[arg(long, default_value_t = 1e-2)]
    pub time_step: f64,
    /// Improved BES y grid step.
    #[arg(long, default_value_t = 1e-3)]
    pub y_step: f64,
    /// Improved BES k grid step.
    #[arg(long, default_value_t = 1e-3)]
    pub k_step: f64,
}

impl StepArgs {
    fn numeric_steps(&self) -> NumericSteps {
        NumericSteps {
            x3_step: self.x3_step,
            time_step: self.time_step,
            y_step: self.y_step,
            k_step: self.k_step,
            ..NumericSteps::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub s_min: f64,
    #[arg(long)]
    pub s_max: f64,
    #[arg(long)]
    pub s_step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub steps: StepArgs,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Only JSON is supported.
    #[arg(long, default_value = "json", value_parser = ["json"])]
    pub format: String,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub steps: StepArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub strategy: StrategyArg,
    #[arg(long)]
    pub s: f64,
    /// Fixed x3 for Fast-Chord; optimized when omitted.
    #[arg(long)]
    pub x3: Option<f64>,
    /// CSV of robot positions over time.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-2)]
    pub trace_step: f64,
    /// Exit-angle grid step of the adversary.
    #[arg(long, default_value_t = crate::worstcase::DEFAULT_GRID_STEP)]
    pub grid_step: f64,
    #[arg(long, default_value_t = crate::worstcase::DEFAULT_REFINE_TOL)]
    pub refine_tol: f64,
    #[command(flatten)]
    pub steps: StepArgs,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<EvacError> for CliError {
    fn from(e: EvacError) -> Self {
        let code = match e {
            EvacError::Domain { .. } => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Sweep(a) => {
            let text = sweep_output(
                a.s_min,
                a.s_max,
                a.s_step,
                a.format,
                &a.steps.numeric_steps(),
            )?;
            emit(&text, a.output.as_deref())
        }
        Command::Constants(a) => {
            let text = constants_output(&a.steps.numeric_steps())?;
            emit(&text, a.output.as_deref())
        }
        Command::Simulate(a) => {
            let text = simulate_output(a)?;
            emit(&text, None)
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn sweep_rows(
    s_min: f64,
    s_max: f64,
    s_step: f64,
    steps: &NumericSteps,
) -> Result<Vec<SweepRow>, CliError> {
    Ok(sweep(s_min, s_max, s_step, steps)?
        .iter()
        .map(SweepRow::from)
        .collect())
}

pub fn sweep_output(
    s_min: f64,
    s_max: f64,
    s_step: f64,
    format: Format,
    steps: &NumericSteps,
) -> Result<String, CliError> {
    let rows = sweep_rows(s_min, s_max, s_step, steps)?;
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| CliError {
                code: 1,
                message: e.to_string(),
            })?;
            Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
        }
        Format::Json => Ok(to_json_text(&rows::to_json(&rows))),
    }
}

fn to_json_text(r: &serde_json::Result<String>) -> String {
    match r {
        Ok(s) => format!("{s}\n"),
        Err(e) => unreachable!("fixed-shape JSON cannot fail: {e}"),
    }
}

#[derive(Serialize)]
struct ConstantJson {
    value: Fixed,
    residual: Box<serde_json::value::RawValue>,
    bracket: [Fixed; 2],
}

pub fn constants_output(steps: &NumericSteps) -> Result<String, CliError> {
    let constants = compute_constants(steps)?;
    let view: std::collections::BTreeMap<&str, ConstantJson> = constants
        .iter()
        .map(|(name, c)| {
            let residual = serde_json::value::RawValue::from_string(format!("{:.6e}", c.residual))
                .expect("exponent notation is valid JSON");
            (
                name.as_str(),
                ConstantJson {
                    value: Fixed(Some(c.s_star)),
                    residual,
                    bracket: [Fixed(Some(c.bracket.0)), Fixed(Some(c.bracket.1))],
                },
            )
        })
        .collect();
    Ok(to_json_text(&serde_json::to_string_pretty(&view)))
}

fn build_strategy(a: &SimulateArgs) -> Result<(Strategy, Option<f64>), CliError> {
    if a.x3.is_some() && a.strategy != StrategyArg::FastChord {
        return Err(CliError::usage("--x3 only applies to fast-chord"));
    }
    match a.strategy {
        StrategyArg::Bsp => Ok((build_bsp(a.s)?, None)),
        StrategyArg::HalfChord => Ok((build_half_chord(a.s)?, None)),
        StrategyArg::FastChord => {
            let solution = match a.x3 {
                Some(x3) => solve_fast_chord_system(a.s, x3)?,
                None => {
                    let steps = a.steps.numeric_steps();
                    optimize_fast_chord(a.s, steps.x3_step, steps.time_step)?.solution
                }
            };
            Ok((build_fast_chord(a.s, &solution)?, Some(solution.x3)))
        }
    }
}

pub fn simulate_output(a: &SimulateArgs) -> Result<String, CliError> {
    if !(a.trace_step > 0.0) {
        return Err(CliError::usage("--trace-step must be positive"));
    }
    let (strategy, x3) = build_strategy(a)?;
    let wc = worst_case(&strategy, a.grid_step, a.refine_tol)?;
    let mut out = String::new();
    let _ = writeln!(out, "strategy: {}", strategy.label);
    let _ = writeln!(out, "s: {}", fmt6(a.s));
    if let Some(x3) = x3 {
        let _ = writeln!(out, "x3: {}", fmt6(x3));
    }
    let _ = writeln!(out, "exit_angle: {}", fmt6(wc.exit_angle));
    let _ = writeln!(out, "discovery_time: {}", fmt6(wc.discovery_time));
    let _ = writeln!(out, "finder: {}", wc.finder.name());
    let _ = writeln!(out, "evac_time: {}", fmt6(wc.evac_time));
    if x3.is_some() {
        let sweep = distance_sweep_worst_case(&strategy, a.steps.time_step)?;
        let _ = writeln!(out, "distance_sweep_time: {}", fmt6(sweep.evac_time));
    }
    if let Some(path) = &a.trace {
        write_trace(&strategy, a.trace_step, path)?;
    }
    Ok(out)
}

/// Positions and explored fraction every `step` until both schedules end.
pub fn write_trace(strategy: &Strategy, step: f64, path: &Path) -> Result<(), CliError> {
    let file = BufWriter::new(File::create(path)?);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    let fail = |e: csv::Error| CliError {
        code: 1,
        message: e.to_string(),
    };
    w.write_record([
        "t",
        "fast_x",
        "fast_y",
        "slow_x",
        "slow_y",
        "explored_fraction",
    ])
    .map_err(fail)?;
    for t in crate::numeric::grid(0.0, strategy.duration(), step, true) {
        let f = strategy.fast.position_at(t);
        let s = strategy.slow.position_at(t);
        let frac = explored_union(strategy, t).total_length() / std::f64::consts::TAU;
        w.write_record([t, f.x, f.y, s.x, s.y, frac].map(fmt6))
            .map_err(fail)?;
    }
    w.flush()?;
    Ok(())
}

/// Builds the global thread pool from `EVAC_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("EVAC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::usage(format!(
                "EVAC_THREADS = {value:?} is not a positive integer"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(e.to_string()))
}
