//! `trigon`: decide trigonality of plane curves, generate test curves and
//! run the benchmark harness.
//!
//! Exit status: 0 when the run finished (either verdict), 2 for unsupported
//! or malformed input, 3 for an internal invariant failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use trigon_core::bench::{parse_spec, run_bench, to_csv};
use trigon_core::curve::{generate, parse_curve_file, parse_point, write_curve_file, GenMethod, DEFAULT_BUDGET};
use trigon_core::pipeline::{decide, DecideOptions};
use trigon_core::{Error, FieldKind};

#[derive(Parser)]
#[command(name = "trigon", version, about = "Decide whether a plane curve is trigonal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide trigonality of the curve in a curve file and print the report.
    Decide {
        path: PathBuf,
        /// Point on a genus-3 curve, written (a:b:c), for the line pencil.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Include per-stage wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Generate a random curve and write it as a curve file.
    Generate {
        #[arg(long, value_enum)]
        method: Method,
        /// `d` (projection, m2, hyperelliptic), `deg_x` (m1), `d,e` (m2) or
        /// `d,nodes` (nodal).
        params: String,
        /// Coefficient bit height.
        #[arg(long, default_value_t = 3)]
        height: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidates drawn before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a bench spec and emit one CSV row per sample.
    Bench {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Projection,
    M1,
    M2,
    Hyperelliptic,
    Nodal,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Projection => "projection",
            Method::M1 => "m1",
            Method::M2 => "m2",
            Method::Hyperelliptic => "hyperelliptic",
            Method::Nodal => "nodal",
        }
    }
}

/// Failure with the exit status it maps to.
struct Failure {
    status: u8,
    error: anyhow::Error,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = if e.is_internal() { 3 } else { 2 };
        Failure { status, error: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Failure {
        Failure { status: 2, error }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_decide(
    path: &Path,
    point: Option<&str>,
    seed: u64,
    json_out: Option<&Path>,
    timings: bool,
) -> Result<(), Failure> {
    let file = parse_curve_file(&read(path)?)?;
    let curve = file.validate()?;
    let mut point = point.map(parse_point).transpose()?;
    if let (Some(p), FieldKind::Prime(_)) = (&point, curve.field()) {
        point = Some(p.embed(curve.field()));
    }
    let report = decide(&curve, &DecideOptions { seed, point })?;
    let json = report.to_json(timings);
    println!("{json}");
    if let Some(p) = json_out {
        emit(&format!("{json}\n"), Some(p))?;
    }
    Ok(())
}

fn cmd_generate(
    method: Method,
    params: &str,
    height: u32,
    seed: u64,
    budget: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let m = GenMethod::parse(method.name(), params).map_err(|e| Error::InvalidInput(e))?;
    let g = generate(m, height, seed, budget)?;
    let comments = vec![
        format!("generator: {} {}", m.tag(), m.params()),
        format!("seed: {seed}"),
        format!("height: {height}"),
        format!("attempts: {}", g.attempts),
        format!("genus: {}", g.curve.genus()),
    ];
    emit(&write_curve_file(&g.curve, &comments), out)
}

fn cmd_bench(spec: &Path, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let jobs = parse_spec(&read(spec)?)?;
    let rows = run_bench(&jobs, seed);
    let accepted = rows.iter().filter(|r| r.accepted).count();
    eprintln!("{accepted}/{} samples accepted by validation", rows.len());
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} {} seed {}: {}", r.generator, r.params, r.seed, r.error.as_deref().unwrap_or_default());
    }
    emit(&to_csv(&rows), out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decide { path, point, seed, json_out, timings } => {
            cmd_decide(path, point.as_deref(), *seed, json_out.as_deref(), *timings)
        }
        Command::Generate { method, params, height, seed, budget, out } => {
            cmd_generate(*method, params, *height, *seed, *budget, out.as_deref())
        }
        Command::Bench { spec, seed, out } => cmd_bench(spec, *seed, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.status)
        }
    }
}
