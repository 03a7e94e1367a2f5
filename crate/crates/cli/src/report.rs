//! Experiment reports, verdicts and the results directory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hankel_core::groebner::ENGINE_VERSION;

/// Bumped when the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Consistent,
    Fail,
    Counterexample,
    BudgetExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Consistent => 0,
            Verdict::Fail | Verdict::Counterexample => 1,
            Verdict::BudgetExceeded => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Consistent => "consistent",
            Verdict::Fail => "fail",
            Verdict::Counterexample => "counterexample",
            Verdict::BudgetExceeded => "budget-exceeded",
        }
    }

    /// Hard claims map to pass/fail, conjectures to consistent/counterexample.
    pub fn from_bool(ok: bool, conjecture: bool) -> Verdict {
        match (ok, conjecture) {
            (true, false) => Verdict::Pass,
            (false, false) => Verdict::Fail,
            (true, true) => Verdict::Consistent,
            (false, true) => Verdict::Counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub m: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub field: String,
    pub order: String,
}

/// The deterministic part of a run: identical bytes for identical inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: Params,
    pub seed: u64,
    pub engine_version: &'static str,
    pub verdict: Verdict,
    pub summary: String,
    pub witness: Value,
}

/// Wall-clock and cache counters, kept out of the report itself.
#[derive(Clone, Debug, Serialize)]
pub struct RunInfo {
    pub timing_ms: u128,
    pub cache_hits: usize,
    pub cache_misses: usize,
}

impl Report {
    pub fn new(command: &str, params: Params, seed: u64, verdict: Verdict, summary: String, witness: Value) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            params,
            seed,
            engine_version: ENGINE_VERSION,
            verdict,
            summary,
            witness,
        }
    }

    /// First 16 hex digits of SHA-256 over command, params, seed and engine
    /// version.
    pub fn params_hash(&self) -> String {
        params_hash(&self.command, &self.params, self.seed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report merged with the run counters, as printed on stdout.
    pub fn to_json_with(&self, info: &RunInfo) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["timing_ms"] = json!(info.timing_ms);
        v["cache_hits"] = json!(info.cache_hits);
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn csv_header() -> &'static str {
        "command,m,r,t,field,order,verdict,summary"
    }

    pub fn csv_row(&self) -> String {
        let t = self.params.t.map(|t| t.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.command,
            self.params.m,
            self.params.r,
            t,
            self.params.field,
            self.params.order,
            self.verdict.as_str(),
            csv_quote(&self.summary)
        )
    }

    /// Writes `<out>/<command>/<hash>.json` and the `<hash>.run.json`
    /// sidecar, each through a temporary file.
    pub fn write(&self, out: &Path, info: &RunInfo) -> std::io::Result<PathBuf> {
        let dir = out.join(&self.command);
        fs::create_dir_all(&dir)?;
        let hash = self.params_hash();
        let path = dir.join(format!("{hash}.json"));
        write_atomic(&path, self.to_json().as_bytes())?;
        let mut run = serde_json::to_string_pretty(info).expect("run info serializes");
        run.push('\n');
        write_atomic(&dir.join(format!("{hash}.run.json")), run.as_bytes())?;
        Ok(path)
    }
}

pub fn params_hash(command: &str, params: &Params, seed: u64) -> String {
    let canonical = json!({
        "command": command,
        "params": params,
        "seed": seed,
        "engine_version": ENGINE_VERSION,
    });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    hex::encode(digest)[..16].to_string()
}

pub fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
