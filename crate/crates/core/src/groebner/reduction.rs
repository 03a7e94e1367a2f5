//! Reduction numbers: the least `n` with `J·I^n = I^{n+1}`.

use crate::error::{AlgebraError, Result};
use crate::linalg::first_outside_span;
use crate::polyring::Polynomial;

use super::{Engine, Ideal};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReductionReport {
    /// Whether `J ⊆ I`; nothing else is checked otherwise.
    pub contained: bool,
    /// The least `n <= nmax` with `J·I^n = I^{n+1}`, if any.
    pub reduction_number: Option<usize>,
    /// `(n, equal)` for every exponent tried.
    pub steps: Vec<(usize, bool)>,
    /// For the first failing exponent, a generator of `I^{n+1}` outside `J·I^n`.
    pub witness: Option<Polynomial>,
    /// `"linear"` when equal-degree generators allowed a span comparison in
    /// each degree, `"groebner"` otherwise.
    pub method: &'static str,
}

/// All products of `k` elements of `gens` taken with repetition.
fn power_generators(gens: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let one = Polynomial::one(gens[0].field(), gens[0].nvars());
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if k == 0 {
        return vec![one];
    }
    loop {
        let mut p = one.clone();
        for &i in &idx {
            p = &p * &gens[i];
        }
        out.push(p);
        // next non-decreasing index tuple
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < gens.len() {
                idx[pos] += 1;
                for q in pos + 1..k {
                    idx[q] = idx[pos];
                }
                break;
            }
        }
    }
}

/// Finds the least `n <= nmax` with `J·I^n = I^{n+1}`, checking `J ⊆ I`
/// first. When all generators are forms of one common degree, both sides
/// are generated in a single degree and the comparison is an exact span
/// comparison in that degree; otherwise Gröbner bases decide equality.
pub fn reduction_check(
    j_gens: &[Polynomial],
    i_gens: &[Polynomial],
    nmax: usize,
    engine: &Engine,
) -> Result<ReductionReport> {
    let i_ideal = Ideal::from_polys(i_gens)?;
    let j_ideal = Ideal::from_polys(j_gens)?;
    let i_gens = i_ideal.generators().to_vec();
    let j_gens = j_ideal.generators().to_vec();
    if i_gens.is_empty() || j_gens.is_empty() {
        return Err(AlgebraError::InvalidParameters("both ideals need nonzero generators".into()));
    }
    let mut report = ReductionReport {
        contained: engine.is_subset(&j_ideal, &i_ideal)?,
        reduction_number: None,
        steps: Vec::new(),
        witness: None,
        method: "linear",
    };
    if !report.contained {
        return Ok(report);
    }
    let d = i_gens[0].total_degree();
    let equigenerated = i_gens.iter().chain(&j_gens).all(|g| g.is_homogeneous() && g.total_degree() == d);
    if !equigenerated {
        report.method = "groebner";
    }
    for n in 0..=nmax {
        let i_n = power_generators(&i_gens, n);
        let big = power_generators(&i_gens, n + 1);
        let mut small = Vec::with_capacity(j_gens.len() * i_n.len());
        for g in &j_gens {
            for p in &i_n {
                small.push(g * p);
            }
        }
        let (equal, witness) = if equigenerated {
            match first_outside_span(&small, &big) {
                None => (true, None),
                Some(k) => (false, Some(big[k].clone())),
            }
        } else {
            let a = Ideal::from_polys(&small)?;
            let b = Ideal::from_polys(&big)?;
            let gb = engine.groebner_basis(&a, crate::polyring::MonomialOrder::DegRevLex)?;
            match b.generators().iter().find(|g| !gb.contains(g)) {
                None => (true, None),
                Some(w) => (false, Some(w.clone())),
            }
        };
        report.steps.push((n, equal));
        if equal {
            report.reduction_number = Some(n);
            break;
        }
        if report.witness.is_none() {
            report.witness = witness;
        }
    }
    Ok(report)
}
