//! Acceptance run: one PASS/FAIL line per criterion, with wall time against
//! its limit. Exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use hankel_core::gradient_hessian::{
    appendix_check, cofactor_decomposition_check, gradient_codim, gradient_linear_syzygies, gradient_reduction_check,
    hessian_degenerated, minimal_primes_checks, theta_check,
};
use hankel_core::groebner::Engine;
use hankel_core::minorposet::{build_poset, fiber_kernel_compare, pluecker_check, pluecker_step_identities};
use hankel_core::polyring::{int, CoefficientField};
use hankel_core::symmatrix::{adjugate, determinant, gruson_peskine_check, minor_ideal_codim, square_hankel, SymMatrix};
use hankel_core::AlgebraError;

const Q: CoefficientField = CoefficientField::Rationals;

type Check = fn(&Path) -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: AlgebraError) -> String {
    e.to_string()
}

fn determinant_suite(_: &Path) -> Result<String, String> {
    let mut cells = 0;
    for m in 2..=6 {
        for r in 0..=m - 2 {
            let h = square_hankel(m, r, Q).map_err(err)?;
            let f = determinant(&h).map_err(err)?;
            let c = f.pure_term_coefficient(m, m as u16);
            ensure(!f.is_zero() && (c == int(1) || c == int(-1)), || format!("m={m} r={r}: pure coefficient {c}"))?;
            let adj = adjugate(&h).map_err(err)?;
            ensure(adj.mul(&h).map_err(err)? == SymMatrix::scalar(&f, m), || format!("m={m} r={r}: adjugate"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn gradient_identity(_: &Path) -> Result<String, String> {
    let mut cells = 0;
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let rep = cofactor_decomposition_check(m, r).map_err(err)?;
            ensure(rep.holds && rep.euler, || format!("m={m} r={r}: {rep:?}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn hessian_nonvanishing(_: &Path) -> Result<String, String> {
    let mut closed = 0;
    for m in 3..=6 {
        for r in 0..=m - 2 {
            if r + 3 <= m && m - r >= 4 {
                let rep = appendix_check(m, r).map_err(err)?;
                ensure(rep.nonzero && rep.matches(), || format!("m={m} r={r}: closed form mismatch"))?;
                closed += 1;
            } else {
                ensure(!hessian_degenerated(m, r).map_err(err)?.is_zero(), || format!("m={m} r={r}: zero"))?;
            }
        }
    }
    Ok(format!("18 cells nonzero, {closed} against the closed form"))
}

fn theta(_: &Path) -> Result<String, String> {
    for m in 3..=4 {
        for r in 0..=m - 2 {
            let rep = theta_check(m, r).map_err(err)?;
            ensure(rep.holds && rep.exponent == (m + 1) * (m - 2), || format!("m={m} r={r}: {:?}", rep.coefficient))?;
        }
    }
    Ok("5 cells".into())
}

fn codimension_tables(_: &Path) -> Result<String, String> {
    let e = Engine::default();
    for m in 2..=4 {
        for r in 0..=m - 2 {
            for t in 1..=m {
                let rep = minor_ideal_codim(m, t, r, &e).map_err(err)?;
                ensure(rep.holds, || format!("I_{t}(H_{m}[{r}]): codim {} expected {}", rep.codim, rep.expected))?;
            }
        }
    }
    let mut note = String::new();
    for m in 3..=5 {
        for r in 0..=m - 2 {
            match gradient_codim(m, r, &e) {
                Ok(rep) => ensure(rep.holds, || format!("J_{m}[{r}]: codim {} expected {}", rep.codim, rep.expected))?,
                Err(AlgebraError::BudgetExceeded(_)) if m == 5 => note = format!(", m=5 r={r} over budget"),
                Err(e) => return Err(err(e)),
            }
        }
    }
    Ok(format!("minors m<=4, gradient m<=5{note}"))
}

fn gruson_peskine(_: &Path) -> Result<String, String> {
    let e = Engine::default();
    let mut cells = 0;
    for m in 2..=4 {
        for r in 0..=m - 2 {
            for t in 1..=m {
                let rep = gruson_peskine_check(m, t, 2 * m - 1, r, Q, &e).map_err(err)?;
                ensure(rep.equal, || format!("m={m} t={t} r={r}"))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn poset(_: &Path) -> Result<String, String> {
    for m in 2..=8 {
        let p = build_poset(m).map_err(err)?;
        ensure(p.len() == m * (m + 1) / 2 && p.max_upper_covers() <= 2 && p.max_lower_covers() <= 2, || {
            format!("m={m}")
        })?;
    }
    let p = build_poset(5).map_err(err)?;
    let covers: Vec<(String, Vec<String>)> = p
        .nodes
        .iter()
        .map(|b| (b.to_string(), p.upper_covers_of(b).iter().map(|c| c.to_string()).collect()))
        .collect();
    let expected: Vec<(&str, Vec<&str>)> = vec![
        ("[1234]", vec!["[1235]"]),
        ("[1235]", vec!["[1236]", "[1245]"]),
        ("[1236]", vec!["[1246]"]),
        ("[1245]", vec!["[1246]", "[1345]"]),
        ("[1246]", vec!["[1256]", "[1346]"]),
        ("[1256]", vec!["[1356]"]),
        ("[1345]", vec!["[1346]", "[2345]"]),
        ("[1346]", vec!["[1356]", "[2346]"]),
        ("[1356]", vec!["[1456]", "[2356]"]),
        ("[1456]", vec!["[2456]"]),
        ("[2345]", vec!["[2346]"]),
        ("[2346]", vec!["[2356]"]),
        ("[2356]", vec!["[2456]"]),
        ("[2456]", vec!["[3456]"]),
        ("[3456]", vec![]),
    ];
    let same = covers.len() == expected.len()
        && covers.iter().zip(&expected).all(|((a, ca), (b, cb))| a == b && ca == cb);
    ensure(same && p.level_sizes() == [1, 1, 2, 2, 3, 2, 2, 1, 1], || "m=5 diagram differs".into())?;
    Ok("m<=8, m=5 diagram exact".into())
}

fn pluecker(_: &Path) -> Result<String, String> {
    let mut rels = 0;
    for m in 3..=5 {
        let rep = pluecker_check(m).map_err(err)?;
        ensure(rep.holds, || format!("m={m}: relation does not vanish"))?;
        rels += rep.relations.len();
    }
    for m in 3..=4 {
        let s = pluecker_step_identities(m).map_err(err)?;
        ensure(s.holds_up_to_signs && s.xequation_as_displayed && s.delta_squared_in_f_algebra, || {
            format!("m={m}: step identity {s:?}")
        })?;
    }
    Ok(format!("{rels} relations, step identities m=3,4"))
}

fn fiber_kernels(_: &Path) -> Result<String, String> {
    let e = Engine::default();
    let rep = fiber_kernel_compare(3, 0, &e).map_err(err)?;
    let one_quadric = rep.generator_degrees.iter().map(|(d, n)| (*d, *n)).collect::<Vec<_>>() == [(2, 1)];
    ensure(rep.equals_generic == Some(true) && one_quadric, || format!("m=3: {rep:?}"))?;
    match fiber_kernel_compare(4, 1, &e) {
        Ok(rep) => {
            let cubics = rep.generator_degrees.get(&3).copied().unwrap_or(0);
            ensure(cubics > 0, || format!("m=4 r=1: degrees {:?}", rep.generator_degrees))?;
            Ok(format!("m=3 equal, m=4 r=1 has {cubics} cubic generator(s)"))
        }
        Err(AlgebraError::BudgetExceeded(why)) => Ok(format!("m=3 equal, m=4 r=1 budget-exceeded ({why})")),
        Err(e) => Err(err(e)),
    }
}

fn reduction_number(_: &Path) -> Result<String, String> {
    let e = Engine::default();
    let rep = gradient_reduction_check(3, 0, 1, &e).map_err(err)?;
    ensure(rep.contained && rep.reduction_number == Some(1), || format!("m=3: {:?}", rep.reduction_number))?;
    let rep = gradient_reduction_check(4, 1, 3, &e).map_err(err)?;
    ensure(rep.contained && rep.reduction_number.is_none(), || format!("m=4 r=1: {:?}", rep.reduction_number))?;
    Ok("m=3 number 1, m=4 r=1 none up to 3".into())
}

fn hankel(out: &Path, args: &[&str]) -> Result<Value, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .arg("--out")
        .arg(out)
        .arg("--no-cache")
        .output()
        .map_err(|e| e.to_string())?;
    serde_json::from_slice(&o.stdout).map_err(|e| format!("{args:?}: {e}"))
}

fn linear_rank(out: &Path) -> Result<String, String> {
    let f3 = CoefficientField::prime(3).map_err(err)?;
    for (m, r, field, want) in [(4, 0, Q, 3), (4, 2, Q, 4), (5, 3, Q, 5), (4, 1, Q, 2), (5, 1, Q, 2), (4, 1, f3, 3)] {
        let got = gradient_linear_syzygies(m, r, field, 1).map_err(err)?.linear_rank;
        ensure(got == want, || format!("m={m} r={r} {field}: rank {got}, expected {want}"))?;
    }
    for (m, field, verdict) in [(4, "q", "consistent"), (5, "q", "consistent"), (4, "f3", "pass")] {
        let v = hankel(out, &["linear-rank", "--m", &m.to_string(), "--r", "1", "--field", field])?;
        ensure(v["verdict"] == verdict, || format!("m={m} r=1 {field}: verdict {}", v["verdict"]))?;
    }
    Ok("ranks 3,4,5,2,2 over q, 3 over f3; verdicts as classed".into())
}

fn minimal_primes(_: &Path) -> Result<String, String> {
    let e = Engine::default();
    for m in 4..=5 {
        let rep = minimal_primes_checks(m, 1, &e, None).map_err(err)?;
        ensure(rep.in_q && rep.in_p && rep.codims_hold, || format!("m={m}: {rep:?}"))?;
    }
    Ok("(4,1) and (5,1)".into())
}

fn conjecture_experiments(out: &Path) -> Result<String, String> {
    let runs: [&[&str]; 5] = [
        &["regular-seq", "--m", "4"],
        &["linear-rank", "--m", "4", "--r", "1"],
        &["linear-rank", "--m", "5", "--r", "1"],
        &["linear-rank", "--m", "5", "--r", "2"],
        &["fiber-kernel", "--m", "4", "--r", "1"],
    ];
    let mut seen = Vec::new();
    for args in runs {
        let v = hankel(out, args)?;
        let verdict = v["verdict"].as_str().unwrap_or("").to_string();
        ensure(["consistent", "counterexample", "budget-exceeded"].contains(&verdict.as_str()), || {
            format!("{args:?}: verdict {verdict}")
        })?;
        ensure(verdict != "counterexample" || !v["witness"].is_null(), || format!("{args:?}: no witness"))?;
        seen.push(verdict);
    }
    Ok(seen.join(","))
}

fn main() {
    let criteria: [(&str, u64, Check); 13] = [
        ("determinant and cofactor suite", 60, determinant_suite),
        ("gradient identity", 120, gradient_identity),
        ("hessian non-vanishing", 300, hessian_nonvanishing),
        ("theta determinant", 120, theta),
        ("codimension tables", 600, codimension_tables),
        ("gruson-peskine transfer", 300, gruson_peskine),
        ("poset suite", 5, poset),
        ("pluecker suite", 60, pluecker),
        ("fiber kernels", 600, fiber_kernels),
        ("reduction number", 600, reduction_number),
        ("linear rank", 60, linear_rank),
        ("minimal-prime containments", 600, minimal_primes),
        ("conjecture experiments", 600, conjecture_experiments),
    ];
    let out = tempfile::tempdir().expect("temp dir");
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check(out.path());
        let took = start.elapsed();
        let within = took <= Duration::from_secs(*limit);
        let (tag, detail) = match (&result, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name} ({:.1}s, limit {limit}s): {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
