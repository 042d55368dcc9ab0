use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::request::Request;
use super::studies::{normality_series, proposition_drift, sweep_partial_diff};
use super::{LimitSeries, SweepTable};
use crate::error::{Error, Result};
use crate::exact::Rat;

pub const CACHE_ENV: &str = "TU_LAB_CACHE_DIR";

/// Where a run reads and writes.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub cache_dir: PathBuf,
    /// Overrides the request's `out_dir`.
    pub out_dir: Option<PathBuf>,
}

impl RunOptions {
    /// Cache location from `TU_LAB_CACHE_DIR`, else `<tmp>/tu-lab-cache`.
    pub fn from_env() -> Self {
        let cache_dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("tu-lab-cache"));
        RunOptions {
            cache_dir,
            out_dir: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub request_hash: String,
    pub request: serde_json::Value,
    pub tool_version: String,
    pub timestamp_unix: u64,
    pub wall_time_ms: u64,
    pub cache_hit: bool,
    pub cache_hits: u32,
    pub rows: usize,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    pub manifest_path: PathBuf,
    pub manifest: Manifest,
    pub summary: String,
    /// Contents of the persisted results JSON.
    pub results_json: String,
}

struct Artifacts {
    csv: Vec<u8>,
    json: String,
}

/// Validates and runs a request, serving it from the cache when an identical
/// request has been computed before.
///
/// Writes `<kind>.csv`, `<kind>.json` and `manifest.json` into the output
/// directory. Every file is written to a temporary sibling and renamed into
/// place.
pub fn run_experiment(request: &Request, opts: &RunOptions) -> Result<RunOutput> {
    let started = Instant::now();
    let out_dir = opts
        .out_dir
        .clone()
        .or_else(|| request.out_dir().cloned())
        .ok_or_else(|| Error::InvalidRequest("no out_dir given".into()))?;
    let hash = request.hash();
    let cached_csv = opts.cache_dir.join(format!("{hash}.csv"));
    let cached_json = opts.cache_dir.join(format!("{hash}.json"));

    let (artifacts, cache_hit) = match read_cached(&cached_csv, &cached_json) {
        Some(a) => (a, true),
        None => {
            let a = compute(request)?;
            fs::create_dir_all(&opts.cache_dir).map_err(|e| Error::io(&opts.cache_dir, e))?;
            write_atomic(&cached_csv, &a.csv)?;
            write_atomic(&cached_json, a.json.as_bytes())?;
            (a, false)
        }
    };

    let summary = serde_json::from_str::<serde_json::Value>(&artifacts.json)?["summary"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    let rows = artifacts.csv.iter().filter(|&&b| b == b'\n').count().saturating_sub(1);

    fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    let csv_path = out_dir.join(format!("{}.csv", request.kind()));
    let json_path = out_dir.join(format!("{}.json", request.kind()));
    let manifest_path = out_dir.join("manifest.json");
    write_atomic(&csv_path, &artifacts.csv)?;
    write_atomic(&json_path, artifacts.json.as_bytes())?;

    let manifest = Manifest {
        request_hash: hash,
        request: serde_json::from_str(&request.canonical())?,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        wall_time_ms: started.elapsed().as_millis() as u64,
        cache_hit,
        cache_hits: u32::from(cache_hit),
        rows,
    };
    let mut manifest_text = serde_json::to_string_pretty(&manifest)?;
    manifest_text.push('\n');
    write_atomic(&manifest_path, manifest_text.as_bytes())?;

    Ok(RunOutput {
        csv_path,
        json_path,
        manifest_path,
        manifest,
        summary,
        results_json: artifacts.json,
    })
}

fn read_cached(csv: &Path, json: &Path) -> Option<Artifacts> {
    let csv = fs::read(csv).ok()?;
    let json = fs::read_to_string(json).ok()?;
    Some(Artifacts { csv, json })
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Domain errors raised while validating inputs become `InvalidRequest`.
fn reject(e: Error) -> Error {
    let name = match &e {
        Error::DyadicBoundary { .. } => "DyadicBoundary",
        Error::OutOfUnitInterval { .. } => "OutOfUnitInterval",
        Error::PerfectSquareInput(_) => "PerfectSquareInput",
        Error::UnsupportedKind { .. } => "UnsupportedKind",
        Error::InvalidArgument(_) => "InvalidArgument",
        _ => return e,
    };
    Error::InvalidRequest(format!("{name}: {e}"))
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn max_abs<'a>(values: impl Iterator<Item = &'a Rat>) -> Rat {
    values.map(Rat::abs).max().unwrap_or_else(Rat::zero)
}

fn compute(request: &Request) -> Result<Artifacts> {
    let canonical: serde_json::Value = serde_json::from_str(&request.canonical())?;
    let (csv, body) = match request {
        Request::Sweep {
            nu,
            r_values,
            n_grid,
            ..
        } => {
            let nu = nu.to_real().map_err(reject)?;
            let table = sweep_partial_diff(&nu, r_values, n_grid).map_err(reject)?;
            (sweep_csv(&table)?, sweep_body(&table))
        }
        Request::Proposition {
            eta, flips, n_grid, ..
        } => {
            let eta = eta.to_real().map_err(reject)?;
            let series = proposition_drift(&eta, flips, n_grid).map_err(reject)?;
            (drift_csv(&series)?, drift_body(&series))
        }
        Request::Normality {
            s_values, n_grid, ..
        } => {
            if s_values.is_empty() {
                return Err(Error::InvalidRequest("s_values is empty".into()));
            }
            let series = s_values
                .iter()
                .map(|&s| normality_series(s, n_grid))
                .collect::<Result<Vec<_>>>()
                .map_err(reject)?;
            (normality_csv(s_values, &series)?, normality_body(s_values, &series))
        }
    };
    let mut json = serde_json::to_string_pretty(&json!({
        "request": canonical,
        "summary": body.0,
        "results": body.1,
    }))?;
    json.push('\n');
    Ok(Artifacts { csv, json })
}

fn sweep_csv(t: &SweepTable) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record(["r", "n", "quotient_num", "quotient_den", "quotient_decimal"])?;
    for c in &t.cells {
        let q = &c.quotient;
        w.write_record([
            c.r.to_string(),
            c.n.to_string(),
            q.exact.numer().to_string(),
            q.exact.denom().to_string(),
            q.decimal.clone(),
        ])?;
    }
    w.into_inner().map_err(|e| Error::io("<csv buffer>", e.into_error()))
}

fn sweep_body(t: &SweepTable) -> (String, serde_json::Value) {
    let top = t.n_grid.iter().copied().max().unwrap_or(0);
    let m = max_abs(t.cells.iter().filter(|c| c.n == top).map(|c| &c.quotient.exact));
    (
        format!("max|quotient|@{top} = {}", m.to_decimal()),
        serde_json::to_value(t).expect("table serializes"),
    )
}

fn drift_csv(s: &LimitSeries) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record(["n", "diff_num", "diff_den", "diff_decimal"])?;
    for (n, v) in s.n_grid.iter().zip(&s.values) {
        w.write_record([
            n.to_string(),
            v.exact.numer().to_string(),
            v.exact.denom().to_string(),
            v.decimal.clone(),
        ])?;
    }
    w.into_inner().map_err(|e| Error::io("<csv buffer>", e.into_error()))
}

fn drift_body(s: &LimitSeries) -> (String, serde_json::Value) {
    let top = s.n_grid.iter().copied().max().unwrap_or(0);
    let m = max_abs(s.get(top).into_iter());
    (
        format!("max|diff|@{top} = {}", m.to_decimal()),
        serde_json::to_value(s).expect("series serializes"),
    )
}

fn normality_csv(s_values: &[u64], series: &[LimitSeries]) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record(["s", "n", "freq_num", "freq_den", "freq_decimal"])?;
    for (s, ser) in s_values.iter().zip(series) {
        for (n, v) in ser.n_grid.iter().zip(&ser.values) {
            w.write_record([
                s.to_string(),
                n.to_string(),
                v.exact.numer().to_string(),
                v.exact.denom().to_string(),
                v.decimal.clone(),
            ])?;
        }
    }
    w.into_inner().map_err(|e| Error::io("<csv buffer>", e.into_error()))
}

fn normality_body(s_values: &[u64], series: &[LimitSeries]) -> (String, serde_json::Value) {
    let top = series
        .iter()
        .flat_map(|s| s.n_grid.iter().copied())
        .max()
        .unwrap_or(0);
    let half = Rat::new(1, 2);
    let devs: Vec<Rat> = series
        .iter()
        .filter_map(|s| s.get(top).map(|f| f - &half))
        .collect();
    let body: Vec<_> = s_values
        .iter()
        .zip(series)
        .map(|(s, ser)| json!({ "s": s, "series": ser }))
        .collect();
    (
        format!("max|freq - 1/2|@{top} = {}", max_abs(devs.iter()).to_decimal()),
        serde_json::Value::Array(body),
    )
}
