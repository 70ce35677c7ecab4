//! Benchmark harness: a spec lists generator jobs, each sample draws one
//! candidate, validates it and runs the decision on accepted curves.
//!
//! Spec lines look like `method=m1 params=3 n=10 height=5 [seed=7]`; blank
//! lines and `#` comments are skipped.

use std::time::Instant;

use rayon::prelude::*;

use crate::curve::{generate, GenMethod};
use crate::error::{Error, Result};
use crate::pipeline::{decide, DecideOptions};

/// Column names of the CSV output.
pub const CSV_HEADER: [&str; 9] =
    ["generator", "params", "bit_height", "genus", "deg", "seconds", "accepted", "trigonal", "agreement"];

/// One line of a bench spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchJob {
    pub method: GenMethod,
    /// Parameters as written, echoed into the CSV.
    pub params: String,
    pub n: usize,
    pub height: u32,
    /// Overrides the run seed for this job.
    pub seed: Option<u64>,
}

/// One sample of a job.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub generator: &'static str,
    pub params: String,
    pub bit_height: u32,
    pub seed: u64,
    pub genus: Option<usize>,
    pub deg: Option<u32>,
    pub seconds: f64,
    pub accepted: bool,
    /// `None` when the curve was rejected or the decision failed.
    pub trigonal: Option<bool>,
    pub agreement: Option<bool>,
    /// Rejection or decision error, for diagnostics.
    pub error: Option<String>,
}

fn spec_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parses a bench spec.
pub fn parse_spec(text: &str) -> Result<Vec<BenchJob>> {
    let mut jobs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (mut method, mut params, mut n, mut height, mut seed) = (None, None, None, None, None);
        for word in content.split_whitespace() {
            let col = word.as_ptr() as usize - content.as_ptr() as usize + 1;
            let Some((k, v)) = word.split_once('=') else {
                return Err(spec_err(line, col, format!("expected key=value, got '{word}'")));
            };
            let num = |v: &str| v.parse::<u64>().map_err(|_| spec_err(line, col, format!("'{v}' is not a number")));
            match k {
                "method" => method = Some(v.to_string()),
                "params" => params = Some(v.to_string()),
                "n" => n = Some(num(v)? as usize),
                "height" => height = Some(num(v)? as u32),
                "seed" => seed = Some(num(v)?),
                _ => return Err(spec_err(line, col, format!("unknown key '{k}'"))),
            }
        }
        let missing = |k: &str| spec_err(line, 1, format!("missing '{k}'"));
        let name = method.ok_or_else(|| missing("method"))?;
        let params = params.ok_or_else(|| missing("params"))?;
        let m = GenMethod::parse(&name, &params).map_err(|e| spec_err(line, 1, e))?;
        jobs.push(BenchJob {
            method: m,
            params,
            n: n.ok_or_else(|| missing("n"))?,
            height: height.ok_or_else(|| missing("height"))?,
            seed,
        });
    }
    Ok(jobs)
}

/// Seed of sample `i` of job `j`.
fn sample_seed(job: &BenchJob, j: usize, i: usize, run_seed: u64) -> u64 {
    let base = job.seed.unwrap_or(run_seed.wrapping_add((j as u64) << 32));
    base.wrapping_add(i as u64)
}

fn run_sample(job: &BenchJob, seed: u64) -> BenchRow {
    let mut row = BenchRow {
        generator: job.method.tag(),
        params: job.params.clone(),
        bit_height: job.height,
        seed,
        genus: None,
        deg: None,
        seconds: 0.0,
        accepted: false,
        trigonal: None,
        agreement: None,
        error: None,
    };
    let start = Instant::now();
    let generated = generate(job.method, job.height, seed, 1);
    let curve = match generated {
        Ok(g) => g.curve,
        Err(e) => {
            row.seconds = start.elapsed().as_secs_f64();
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.accepted = true;
    row.genus = Some(curve.genus());
    row.deg = Some(curve.degree());
    let start = Instant::now();
    match decide(&curve, &DecideOptions { seed, point: None }) {
        Ok(r) => {
            row.trigonal = Some(r.trigonal);
            row.agreement = Some(r.agreement);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row.seconds = start.elapsed().as_secs_f64();
    row
}

/// Runs every sample of every job; samples run in parallel and rows come
/// back in spec order. Each sample draws exactly one candidate, so the
/// `accepted` column is the validation acceptance rate.
pub fn run_bench(jobs: &[BenchJob], run_seed: u64) -> Vec<BenchRow> {
    let work: Vec<(&BenchJob, u64)> = jobs
        .iter()
        .enumerate()
        .flat_map(|(j, job)| (0..job.n).map(move |i| (job, sample_seed(job, j, i, run_seed))))
        .collect();
    work.into_par_iter().map(|(job, seed)| run_sample(job, seed)).collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// CSV with the fixed header; fields containing commas are quoted.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let quote = |s: &str| if s.contains([',', '"']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() };
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for r in rows {
        let fields = [
            r.generator.to_string(),
            quote(&r.params),
            r.bit_height.to_string(),
            opt(&r.genus),
            opt(&r.deg),
            format!("{:.6}", r.seconds),
            r.accepted.to_string(),
            opt(&r.trigonal),
            opt(&r.agreement),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
