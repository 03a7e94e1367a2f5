//! Parameter sweeps: one check over a rectangle of `(m, r, t)` cells, run
//! on a worker pool.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;
use std::sync::Mutex;

use clap::Args;
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::checks::{Cell, Check, CheckError, Context};
use crate::report::{write_atomic, Report, Verdict};
use crate::{execute, Settings};

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// The check to run in every cell.
    #[arg(value_enum)]
    check: Check,
    /// Range of m, `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    m: RangeInclusive<usize>,
    /// Range of r; defaults to every r valid for the check.
    #[arg(long, value_parser = parse_range)]
    r: Option<RangeInclusive<usize>>,
    /// Range of t; defaults to `1..m` for checks that take t.
    #[arg(long, value_parser = parse_range)]
    t: Option<RangeInclusive<usize>>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad range bound `{x}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(num(a)?..=num(b)?)
        }
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

impl SweepArgs {
    /// All valid cells, sorted. Cells outside the check's domain are skipped.
    fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for m in self.m.clone() {
            let rs: Vec<usize> = match (&self.r, self.check.uses_r()) {
                (_, false) => vec![0],
                (Some(r), true) => r.clone().collect(),
                (None, true) => (0..=m).collect(),
            };
            let ts: Vec<Option<usize>> = match (&self.t, self.check.uses_t()) {
                (_, false) => vec![None],
                (Some(t), true) => t.clone().map(Some).collect(),
                (None, true) => (1..=m).map(Some).collect(),
            };
            for &r in &rs {
                for &t in &ts {
                    if self.check.valid(m, r, t) {
                        out.push(Cell { m, r, t });
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn hash(&self, s: &Settings, seed: u64) -> String {
        let key = json!({
            "check": self.check.name(),
            "m": [self.m.start(), self.m.end()],
            "r": self.r.as_ref().map(|r| [r.start(), r.end()]),
            "t": self.t.as_ref().map(|t| [t.start(), t.end()]),
            "field": s.field.to_string(),
            "order": s.order.to_string(),
            "seed": seed,
        });
        hex::encode(Sha256::digest(key.to_string().as_bytes()))[..16].to_string()
    }
}

/// Exit code of a finished sweep: 1 if any cell failed, else 2 if any ran
/// out of budget, else 0.
fn sweep_exit(verdicts: &[Verdict]) -> u8 {
    if verdicts.iter().any(|v| matches!(v, Verdict::Fail | Verdict::Counterexample)) {
        1
    } else if verdicts.contains(&Verdict::BudgetExceeded) {
        2
    } else {
        0
    }
}

/// Runs the sweep, appending each finished row to
/// `<out>/sweep/<hash>.partial.csv` and finally writing the sorted table to
/// `<out>/sweep/<hash>.csv` and stdout.
pub fn run(args: &SweepArgs, s: &Settings, ctx: &Context, out: &Path, jobs: Option<usize>, csv: bool) -> Result<u8, String> {
    let cells = args.cells();
    let dir = out.join("sweep");
    fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let hash = args.hash(s, ctx.seed);
    let partial_path = dir.join(format!("{hash}.partial.csv"));
    let partial: Mutex<File> = Mutex::new(
        OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(true)
            .open(&partial_path)
            .map_err(|e| format!("{}: {e}", partial_path.display()))?,
    );
    {
        let mut f = partial.lock().expect("partial file lock");
        let _ = writeln!(f, "{}", Report::csv_header());
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| e.to_string())?;
    let results: Vec<Result<Report, String>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&cell| {
                let report = match execute(args.check, cell, s, ctx, out) {
                    Ok((report, _)) => report,
                    Err(CheckError::Usage(msg)) => return Err(msg),
                };
                let mut f = partial.lock().unwrap_or_else(|e| e.into_inner());
                let _ = writeln!(f, "{}", report.csv_row());
                let _ = f.flush();
                Ok(report)
            })
            .collect()
    });
    let reports: Vec<Report> = results.into_iter().collect::<Result<_, _>>()?;
    let mut csv_table = String::from(Report::csv_header());
    csv_table.push('\n');
    for r in &reports {
        csv_table.push_str(&r.csv_row());
        csv_table.push('\n');
    }
    write_atomic(&dir.join(format!("{hash}.csv")), csv_table.as_bytes()).map_err(|e| e.to_string())?;
    let _ = fs::remove_file(&partial_path);
    if csv {
        print!("{csv_table}");
    } else {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    }
    let verdicts: Vec<Verdict> = reports.iter().map(|r| r.verdict).collect();
    Ok(sweep_exit(&verdicts))
}
