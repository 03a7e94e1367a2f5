//! The individual checks: parameter validation, the computation, and the
//! verdict rule for each command.

use clap::ValueEnum;
use serde_json::{json, Value};

use hankel_core::gradient_hessian::{
    appendix_check, cofactor_decomposition_check, cofactor_relations_check, gradient_codim, gradient_linear_syzygies,
    gradient_reduction_check, hessian_nonvanishing, minimal_primes_checks, regular_sequence_experiment, theta_check,
};
use hankel_core::groebner::Engine;
use hankel_core::minorposet::{
    build_poset, derivative_level_decomposition, fiber_kernel_compare, pluecker_check, pluecker_step_identities,
};
use hankel_core::polyring::{CoefficientField, MonomialOrder, Polynomial};
use hankel_core::symmatrix::{adjugate, determinant, gruson_peskine_check, minor_ideal_codim, square_hankel, SymMatrix};
use hankel_core::AlgebraError;

use crate::report::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Check {
    Det,
    Gradient,
    HessianCheck,
    AppendixCheck,
    ThetaCheck,
    CodimMinors,
    CodimGradient,
    GpCheck,
    Poset,
    Pluecker,
    LevelDecomp,
    FiberKernel,
    LinearRank,
    ReductionCheck,
    MinimalPrimes,
    RegularSeq,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Det => "det",
            Check::Gradient => "gradient",
            Check::HessianCheck => "hessian-check",
            Check::AppendixCheck => "appendix-check",
            Check::ThetaCheck => "theta-check",
            Check::CodimMinors => "codim-minors",
            Check::CodimGradient => "codim-gradient",
            Check::GpCheck => "gp-check",
            Check::Poset => "poset",
            Check::Pluecker => "pluecker",
            Check::LevelDecomp => "level-decomp",
            Check::FiberKernel => "fiber-kernel",
            Check::LinearRank => "linear-rank",
            Check::ReductionCheck => "reduction-check",
            Check::MinimalPrimes => "minimal-primes",
            Check::RegularSeq => "regular-seq",
        }
    }

    pub fn uses_r(self) -> bool {
        !matches!(self, Check::Poset | Check::Pluecker | Check::LevelDecomp | Check::RegularSeq)
    }

    pub fn uses_t(self) -> bool {
        matches!(self, Check::CodimMinors | Check::GpCheck)
    }

    /// Whether the command computes over a field other than the rationals.
    pub fn accepts_prime_field(self) -> bool {
        matches!(self, Check::Det | Check::LinearRank)
    }

    fn min_m(self) -> usize {
        match self {
            Check::Det | Check::Gradient | Check::CodimMinors | Check::CodimGradient | Check::GpCheck => 2,
            Check::Poset | Check::LevelDecomp => 2,
            Check::MinimalPrimes => 4,
            _ => 3,
        }
    }

    /// Whether `(m, r, t)` is inside the domain of the check.
    pub fn valid(self, m: usize, r: usize, t: Option<usize>) -> bool {
        if m < self.min_m() {
            return false;
        }
        if self.uses_t() != t.is_some() || t.is_some_and(|t| t == 0 || t > m) {
            return false;
        }
        if !self.uses_r() {
            return r == 0;
        }
        match self {
            Check::MinimalPrimes => r >= 1 && r + 3 <= m,
            _ => r + 2 <= m,
        }
    }
}

/// One point of parameter space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub m: usize,
    pub r: usize,
    pub t: Option<usize>,
}

pub struct Context {
    pub field: CoefficientField,
    pub order: MonomialOrder,
    pub seed: u64,
    pub engine: Engine,
}

pub struct Outcome {
    pub verdict: Verdict,
    pub summary: String,
    pub witness: Value,
}

/// Failures that are not verdicts.
#[derive(Debug)]
pub enum CheckError {
    Usage(String),
}

fn outcome(ok: bool, conjecture: bool, summary: String, witness: Value) -> Outcome {
    Outcome {
        verdict: Verdict::from_bool(ok, conjecture),
        summary,
        witness,
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Validates and runs one cell. Budget exhaustion and internal
/// inconsistencies become verdicts; bad parameters are usage errors.
pub fn run_check(check: Check, cell: Cell, ctx: &Context) -> Result<Outcome, CheckError> {
    if !check.accepts_prime_field() && ctx.field != CoefficientField::Rationals {
        return Err(CheckError::Usage(format!("{} only supports --field q", check.name())));
    }
    if !check.valid(cell.m, cell.r, cell.t) {
        let t = if check.uses_t() { ", 1 <= t <= m" } else { "" };
        let r = match check {
            Check::MinimalPrimes => "1 <= r <= m - 3",
            c if c.uses_r() => "0 <= r <= m - 2",
            _ => "no --r",
        };
        return Err(CheckError::Usage(format!(
            "{} needs m >= {}, {r}{t} (got m = {}, r = {}, t = {:?})",
            check.name(),
            check.min_m(),
            cell.m,
            cell.r,
            cell.t
        )));
    }
    match compute(check, cell, ctx) {
        Ok(o) => Ok(o),
        Err(AlgebraError::BudgetExceeded(why)) => Ok(Outcome {
            verdict: Verdict::BudgetExceeded,
            summary: why.clone(),
            witness: json!({ "error": why }),
        }),
        Err(
            e @ (AlgebraError::InvalidParameters(_)
            | AlgebraError::NotPrime(_)
            | AlgebraError::VariableOutOfRange { .. }
            | AlgebraError::MinorSizeOutOfRange { .. }),
        ) => Err(CheckError::Usage(e.to_string())),
        Err(e) => Ok(Outcome {
            verdict: Verdict::Fail,
            summary: e.to_string(),
            witness: json!({ "error": e.to_string() }),
        }),
    }
}

fn is_unit_sign(c: &hankel_core::polyring::Coeff, field: CoefficientField) -> bool {
    let c = Polynomial::constant(field, 0, c.clone());
    c == Polynomial::from_int(field, 0, 1) || c == Polynomial::from_int(field, 0, -1)
}

fn compute(check: Check, Cell { m, r, t }: Cell, ctx: &Context) -> hankel_core::Result<Outcome> {
    let engine = &ctx.engine;
    Ok(match check {
        Check::Det => {
            let h = square_hankel(m, r, ctx.field)?;
            let f = determinant(&h)?;
            let pure = f.pure_term_coefficient(m, m as u16);
            let adj_ok = adjugate(&h)?.mul(&h)? == SymMatrix::scalar(&f, m);
            let initial = if f.is_zero() {
                Value::Null
            } else {
                let it = f.initial_term(ctx.order)?;
                json!(Polynomial::monomial(ctx.field, it.monomial, it.coeff).to_text())
            };
            let pure_ok = is_unit_sign(&pure, ctx.field);
            outcome(
                !f.is_zero() && pure_ok && adj_ok,
                false,
                format!("terms={} pure_x{m}_coefficient={pure} adjugate_identity={adj_ok}", f.len()),
                json!({
                    "determinant": f,
                    "pure_coefficient": pure.to_string(),
                    "initial_term": initial,
                    "adjugate_identity": adj_ok,
                }),
            )
        }
        Check::Gradient => {
            let dec = cofactor_decomposition_check(m, r)?;
            let rel = cofactor_relations_check(m, r)?;
            outcome(
                dec.holds && rel.holds,
                false,
                format!("cofactor_sums={} euler={} cofactor_relations={}", dec.holds, dec.euler, rel.holds),
                json!({ "decomposition": dec, "cofactor_relations": rel }),
            )
        }
        Check::HessianCheck => {
            let rep = hessian_nonvanishing(m, r, ctx.seed)?;
            let lead = if rep.degenerated.is_zero() {
                "0".to_string()
            } else {
                let it = rep.degenerated.initial_term(MonomialOrder::DegRevLex)?;
                Polynomial::monomial(CoefficientField::Rationals, it.monomial, it.coeff).to_text()
            };
            outcome(rep.nonzero, false, format!("nonzero={} degenerated_lead={lead}", rep.nonzero), to_value(&rep))
        }
        Check::AppendixCheck => {
            let rep = appendix_check(m, r)?;
            let ok = rep.matches();
            outcome(ok, false, format!("nonzero={} closed_form_matches={ok}", rep.nonzero), to_value(&rep))
        }
        Check::ThetaCheck => {
            let rep = theta_check(m, r)?;
            let c = rep.coefficient.clone().unwrap_or_else(|| "none".into());
            outcome(rep.holds, false, format!("coefficient={c} exponent={}", rep.exponent), to_value(&rep))
        }
        Check::CodimMinors => {
            let rep = minor_ideal_codim(m, t.expect("validated"), r, engine)?;
            outcome(rep.holds, false, format!("codim={} expected={}", rep.codim, rep.expected), to_value(&rep))
        }
        Check::CodimGradient => {
            let rep = gradient_codim(m, r, engine)?;
            outcome(rep.holds, false, format!("codim={} expected={}", rep.codim, rep.expected), to_value(&rep))
        }
        Check::GpCheck => {
            let rep = gruson_peskine_check(m, t.expect("validated"), 2 * m - 1, r, CoefficientField::Rationals, engine)?;
            outcome(rep.equal, false, format!("equal={}", rep.equal), to_value(&rep))
        }
        Check::Poset => {
            let p = build_poset(m)?;
            let levels: std::collections::BTreeSet<usize> = p.levels.iter().copied().collect();
            let ok = p.len() == m * (m + 1) / 2
                && p.max_upper_covers() <= 2
                && p.max_lower_covers() <= 2
                && levels == (1..=2 * m - 1).collect();
            let mut w = p.to_json();
            w["level_sizes"] = json!(p.level_sizes());
            outcome(
                ok,
                false,
                format!("nodes={} max_upper_covers={} levels={}", p.len(), p.max_upper_covers(), levels.len()),
                w,
            )
        }
        Check::Pluecker => {
            let rel = pluecker_check(m)?;
            let step = pluecker_step_identities(m)?;
            let step_ok = step.holds_up_to_signs && step.xequation_as_displayed && step.delta_squared_in_f_algebra;
            outcome(
                rel.holds && step_ok,
                false,
                format!(
                    "relations={} vanish={} step_identity={} delta_squared_in_f_algebra={}",
                    rel.relations.len(),
                    rel.holds,
                    step.holds_up_to_signs,
                    step.delta_squared_in_f_algebra
                ),
                json!({ "relations": rel, "step": step }),
            )
        }
        Check::LevelDecomp => {
            let rep = derivative_level_decomposition(m)?;
            outcome(
                rep.holds,
                false,
                format!(
                    "reproduces={} bracket_coefficients_in_one_two={}",
                    rep.holds, rep.bracket_coefficients_in_one_two
                ),
                to_value(&rep),
            )
        }
        Check::FiberKernel => {
            let rep = fiber_kernel_compare(m, r, engine)?;
            let degrees: Vec<String> = rep.generator_degrees.iter().map(|(d, n)| format!("{n}x{d}")).collect();
            let (ok, conjecture) = if r == 0 {
                (rep.equals_generic == Some(true) && rep.pluecker_quadrics_in_kernel, false)
            } else {
                (rep.pluecker_quadrics_in_kernel, true)
            };
            outcome(
                ok,
                conjecture,
                format!(
                    "generators={} extra={} equals_generic={:?}",
                    degrees.join(" "),
                    rep.extra_generators.len(),
                    rep.equals_generic
                ),
                to_value(&rep),
            )
        }
        Check::LinearRank => {
            let rep = gradient_linear_syzygies(m, r, ctx.field, ctx.seed)?;
            let char0 = ctx.field == CoefficientField::Rationals;
            let (expected, conjecture) = if ctx.field == CoefficientField::PrimeField(3) && (m, r) == (4, 1) {
                (3, false)
            } else if r == 0 {
                (3, !char0)
            } else if r + 2 == m {
                (m, !char0)
            } else {
                (2, true)
            };
            outcome(
                rep.linear_rank == expected,
                conjecture,
                format!("linear_rank={} expected={expected}", rep.linear_rank),
                to_value(&rep),
            )
        }
        Check::ReductionCheck => {
            let nmax = if r == 0 { m - 2 } else { 3 };
            let rep = gradient_reduction_check(m, r, nmax, engine)?;
            let (ok, conjecture) = if r == 0 {
                (rep.contained && rep.reduction_number == Some(m - 2), false)
            } else if r + 3 <= m {
                (rep.contained && rep.reduction_number.is_none(), false)
            } else {
                (rep.contained, true)
            };
            let found = rep.reduction_number.map(|n| n.to_string()).unwrap_or_else(|| format!("none<={nmax}"));
            outcome(ok, conjecture, format!("reduction_number={found} method={}", rep.method), to_value(&rep))
        }
        Check::MinimalPrimes => {
            let radical = if m <= 4 { Some(engine) } else { None };
            let rep = minimal_primes_checks(m, r, engine, radical)?;
            outcome(
                rep.holds,
                false,
                format!(
                    "in_q={} in_p={} codims={} radical={:?}",
                    rep.in_q, rep.in_p, rep.codims_hold, rep.radical_spot_check
                ),
                to_value(&rep),
            )
        }
        Check::RegularSeq => {
            let rep = regular_sequence_experiment(m, None, engine)?;
            let ok = rep.first_failure.is_none();
            let steps: Vec<String> = rep.steps.iter().map(|(v, reg)| format!("x{v}:{reg}")).collect();
            outcome(ok, true, format!("steps={}", steps.join(" ")), to_value(&rep))
        }
    })
}
