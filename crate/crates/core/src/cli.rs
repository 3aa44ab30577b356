//! Command-line front end.
//!
//! Exit codes: 0 when every verdict passes, 2 when any verdict fails, 1 on
//! usage, configuration or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::experiments::{
    run_experiment, Cell, ExperimentConfig, ExperimentKind, ExperimentReport, OutputFormat, RunOptions,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mwrg",
    version,
    about = "Monte Carlo experiments on edge-constrained minimum-weight trees and lattice passage times",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Slope of mean spanning M_n against n for each alpha.
    TreeScaling(RunArgs),
    /// Upper confidence bound on var(M_n).
    TreeVariance(RunArgs),
    /// Scaled means and exponential moments of Y_j.
    YjMoments(RunArgs),
    /// T_n <= T_n(k) <= straight path, stabilization of T_n / n, hop counts.
    FppBand(RunArgs),
    /// P(T_n(k) != T_n) as k grows.
    ConstraintDecay(RunArgs),
    /// Growth exponent of var(T_n(k)).
    FppVariance(RunArgs),
    /// Solver cross-checks against exhaustive oracles.
    OracleSuite(RunArgs),
    /// The default oracle suite; exits 0 when every check passes.
    Selftest(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Acceptance-size sweeps.
    Full,
    /// Small sweeps that finish in seconds.
    Smoke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Both => OutputFormat::Both,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    /// JSON file whose keys override the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Full)]
    preset: Preset,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per sweep point.
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads (does not affect results).
    #[arg(long)]
    workers: Option<usize>,
    /// Directory for report files; nothing is written without one.
    #[arg(long, env = "MWRG_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Store the wall-clock runtime in the report files.
    #[arg(long)]
    record_runtime: bool,
}

/// Effective configuration and run settings after applying preset, file and flags.
fn resolve(kind: ExperimentKind, args: &RunArgs) -> Result<(ExperimentConfig, RunOptions)> {
    let base = match args.preset {
        Preset::Full => ExperimentConfig::defaults(kind),
        Preset::Smoke => ExperimentConfig::smoke(kind),
    };
    let (mut cfg, mut run) = match &args.config {
        None => (base, RunOptions::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
            ExperimentConfig::overlay_json(&base, &text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
    };
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if args.workers.is_some() {
        run.workers = args.workers;
    }
    if let Some(dir) = &args.output_dir {
        run.output_dir = Some(dir.to_string_lossy().into_owned());
    }
    if let Some(f) = args.format {
        run.format = Some(f.into());
    }
    run.record_runtime |= args.record_runtime;
    cfg.validate()?;
    Ok((cfg, run))
}

/// Parses `argv` (including the program name), runs the experiment and
/// returns the process exit code.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_ERROR,
            };
        }
    };
    let (kind, args) = match cli.command {
        Command::TreeScaling(a) => (ExperimentKind::TreeScaling, a),
        Command::TreeVariance(a) => (ExperimentKind::TreeVariance, a),
        Command::YjMoments(a) => (ExperimentKind::YjMoments, a),
        Command::FppBand(a) => (ExperimentKind::FppBand, a),
        Command::ConstraintDecay(a) => (ExperimentKind::ConstraintDecay, a),
        Command::FppVariance(a) => (ExperimentKind::FppVariance, a),
        Command::OracleSuite(a) | Command::Selftest(a) => (ExperimentKind::OracleSuite, a),
    };
    match execute(kind, &args) {
        Ok(report) if report.all_passed() => EXIT_PASS,
        Ok(_) => EXIT_VERDICT_FAILED,
        Err(e) => {
            eprintln!("mwrg: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(kind: ExperimentKind, args: &RunArgs) -> Result<ExperimentReport> {
    let (cfg, run) = resolve(kind, args)?;
    let started = Instant::now();
    let mut report = run_experiment(&cfg, run.worker_count())?;
    let elapsed = started.elapsed().as_secs_f64();
    eprintln!("{kind}: finished in {elapsed:.2} s");
    if run.record_runtime {
        report.runtime_seconds = Some(elapsed);
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for v in &report.verdicts {
        let _ = writeln!(
            out,
            "{} {} {}: measured {} {} {}{}",
            if v.passed { "PASS" } else { "FAIL" },
            v.criterion,
            v.name,
            v.measured,
            v.relation,
            v.threshold,
            if v.detail.is_empty() { String::new() } else { format!(" ({})", v.detail) }
        );
    }
    if let Some(dir) = &run.output_dir {
        for path in emit_report(&report, run.format.unwrap_or_default(), Path::new(dir))? {
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(report)
}

/// Shortest text that parses back to the same value with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format_float(*v),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn write_csv(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes the report into `dir` and returns the written paths: one CSV per
/// table in report order, then the verdict CSV, then the JSON document.
pub fn emit_report(report: &ExperimentReport, format: OutputFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let stem = report.experiment.name();
    let mut written = Vec::new();
    if matches!(format, OutputFormat::Csv | OutputFormat::Both) {
        for table in &report.tables {
            let path = dir.join(format!("{stem}_{}.csv", table.name));
            write_csv(&path, &table.columns, table.rows.iter().map(|r| r.iter().map(cell_text).collect()))?;
            written.push(path);
        }
        let header: Vec<String> = ["criterion", "name", "measured", "threshold", "relation", "passed", "detail"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let path = dir.join(format!("{stem}_verdicts.csv"));
        write_csv(
            &path,
            &header,
            report.verdicts.iter().map(|v| {
                vec![
                    v.criterion.clone(),
                    v.name.clone(),
                    format_float(v.measured),
                    format_float(v.threshold),
                    v.relation.clone(),
                    v.passed.to_string(),
                    v.detail.clone(),
                ]
            }),
        )?;
        written.push(path);
    }
    if matches!(format, OutputFormat::Json | OutputFormat::Both) {
        let path = dir.join(format!("{stem}.json"));
        let mut text = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
