//! Argument parsing and dispatch for the `fqgeom` binary.
//!
//! Exit codes: 0 when everything checked holds, 1 when an invariant fails,
//! 2 for bad arguments, unreadable input or infeasible requests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::groups::GroupVariant;
use crate::run::{self, ConstructParams, ConstructionKind, OutputFormat, RunConfig};
use crate::simplices::CountMode;

pub const WORKERS_ENV: &str = "FQGEOM_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "fqgeom", version, about = "Exact simplex, orbit and Fourier counts over F_q^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites and report one row per check.
    Verify(VerifyArgs),
    /// Count congruence and similarity classes of a set read from a file.
    Count(CountArgs),
    /// Count classes of random sets over a schedule of sizes.
    Scan(ScanArgs),
    /// Build an explicit construction and report its measurements as JSON.
    Construct(ConstructArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format; CSV by default except for `construct`, which defaults to JSON.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (falls back to FQGEOM_WORKERS, then to the number of cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// One of sphere, groups, identity2, fourier, energy, str, witt, constructions, all.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, value_enum, default_value_t = Group::O)]
    pub group: Group,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Point-set file (text or JSON).
    pub file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Fast)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Group::O)]
    pub group: Group,
    /// Write the exact class inventory (CSV) here when counting in exact mode.
    #[arg(long)]
    pub inventory: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Fast)]
    pub mode: Mode,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Record per-row wall-clock time (output is then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Print per-size min/mean summaries to stderr.
    #[arg(long)]
    pub summary: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Interval length (odd) or grid side (even).
    #[arg(long)]
    pub len: Option<usize>,
    /// Size constant used to derive the interval or grid side.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2])]
    pub x: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2])]
    pub y: Vec<u32>,
    /// Also write the constructed set (text format) here.
    #[arg(long)]
    pub emit_set: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fast,
    Exact,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// The full orthogonal group.
    O,
    /// Determinant-one isometries only.
    So,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Odd,
    Even,
    Simplex,
    Nullprod,
    Minkowski,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

impl From<Mode> for CountMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Fast => CountMode::DistanceMatrixFast,
            Mode::Exact => CountMode::ExactOrbit,
        }
    }
}

impl From<Group> for GroupVariant {
    fn from(g: Group) -> Self {
        match g {
            Group::O => GroupVariant::Full,
            Group::So => GroupVariant::Special,
        }
    }
}

impl From<Variant> for ConstructionKind {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Odd => ConstructionKind::Odd,
            Variant::Even => ConstructionKind::Even,
            Variant::Simplex => ConstructionKind::Simplex,
            Variant::Nullprod => ConstructionKind::NullProduct,
            Variant::Minkowski => ConstructionKind::Minkowski,
        }
    }
}

fn workers(flag: Option<usize>, env: Option<String>) -> Result<Option<usize>, Error> {
    match (flag, env) {
        (Some(n), _) => Ok(Some(n)),
        (None, Some(v)) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{WORKERS_ENV} must be a positive integer, got '{v}'"))),
        _ => Ok(None),
    }
}

struct Emitted {
    body: String,
    passed: bool,
}

fn execute(cli: Cli, env_workers: Option<String>, err: &mut dyn Write) -> Result<(Emitted, Common), Error> {
    match cli.command {
        Command::Verify(a) => {
            let cfg = RunConfig {
                q_list: a.q,
                d: a.d,
                k: a.k,
                group: a.group.into(),
                trials: a.trials,
                seed: a.seed,
                format: a.common.format.unwrap_or(Format::Csv).into(),
                workers: workers(a.common.workers, env_workers)?,
                ..Default::default()
            };
            let rows = cfg.with_workers(|| run::run_verify(&cfg, a.suite.as_deref()))??;
            let passed = rows.iter().all(|r| r.pass);
            for r in rows.iter().filter(|r| !r.pass) {
                let _ = writeln!(err, "FAIL {} q={} d={} {}: {} vs {} {}", r.suite, r.q, r.d, r.case, r.lhs, r.rhs, r.note);
            }
            Ok((Emitted { body: run::render(&rows, cfg.format)?, passed }, a.common))
        }
        Command::Count(a) => {
            let cfg = RunConfig {
                k: a.k,
                mode: a.mode.into(),
                group: a.group.into(),
                format: a.common.format.unwrap_or(Format::Csv).into(),
                workers: workers(a.common.workers, env_workers)?,
                ..Default::default()
            };
            let out = cfg.with_workers(|| run::run_count_file(&cfg, &a.file))??;
            for w in &out.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            if let (Some(path), Some(csv)) = (&a.inventory, &out.inventory_csv) {
                std::fs::write(path, csv)?;
            }
            Ok((Emitted { body: run::render(&[out.row], cfg.format)?, passed: true }, a.common))
        }
        Command::Scan(a) => {
            let cfg = RunConfig {
                q_list: a.q,
                d: a.d,
                k: a.k,
                mode: a.mode.into(),
                trials: a.trials,
                seed: a.seed,
                sizes: a.sizes,
                format: a.common.format.unwrap_or(Format::Csv).into(),
                workers: workers(a.common.workers, env_workers)?,
                timing: a.timing,
                ..Default::default()
            };
            let rows = cfg.with_workers(|| run::run_scan(&cfg))??;
            if a.summary {
                let summary = run::render(&run::scan_summary(&rows), OutputFormat::Csv)?;
                let _ = write!(err, "{summary}");
            }
            Ok((Emitted { body: run::render(&rows, cfg.format)?, passed: true }, a.common))
        }
        Command::Construct(a) => {
            let params = ConstructParams {
                kind: a.variant.into(),
                q: a.q,
                d: a.d,
                k: a.k,
                len: a.len,
                c: a.c,
                eps: a.eps,
                x: a.x,
                y: a.y,
            };
            let cfg = RunConfig {
                workers: workers(a.common.workers, env_workers)?,
                ..Default::default()
            };
            let report = cfg.with_workers(|| run::construct(&params))??;
            if let Some(path) = &a.emit_set {
                std::fs::write(path, report.set.to_text())?;
            }
            let body = match a.common.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json() + "\n",
                Format::Csv => {
                    let mut s = String::from("check,pass\n");
                    for (k, v) in &report.checks {
                        s.push_str(&format!("{k},{v}\n"));
                    }
                    s
                }
            };
            Ok((Emitted { body, passed: report.passed() }, a.common))
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Output goes to `out` unless `--out` names a file.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli, std::env::var(WORKERS_ENV).ok(), err) {
        Ok((emitted, common)) => {
            let written = match &common.out {
                Some(path) => std::fs::write(path, &emitted.body).map_err(Error::from),
                None => out.write_all(emitted.body.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if emitted.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
