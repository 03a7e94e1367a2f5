//! Gradient ideals and Hessians of `f = det H_m[r]`.
//!
//! Covers the cofactor description of the partial derivatives, Euler's
//! identity, the Hessian matrix and its degeneration `φ_v` onto the three
//! variables `x_1, x_{m-r-1}, x_{2m-r-1}`, the closed form of that
//! degenerated determinant, the Θ-submatrix bound, cofactor relations, and
//! the Gröbner-based codimension, prime-containment and regular-sequence
//! experiments.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{linear_syzygies, reduction_check, Engine, Ideal, ReductionReport, SyzygyReport};
use crate::polyring::{Coeff, CoefficientField, Monomial, MonomialOrder, Polynomial, RingMap};
use crate::symmatrix::{adjugate, cofactor, determinant, hankel, minor_ideal, square_hankel, HankelSpec, SymMatrix};

fn check_range(m: usize, r: usize) -> Result<()> {
    if m < 2 || r + 2 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "need m >= 2 and 0 <= r <= m - 2 (got m = {m}, r = {r})"
        )));
    }
    Ok(())
}

fn int(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

/// `f = det H_m[r]` with its partial derivatives and cofactor table.
#[derive(Clone, Debug)]
pub struct GradientData {
    pub m: usize,
    pub r: usize,
    pub matrix: SymMatrix,
    pub f: Polynomial,
    /// `partials[k-1] = ∂f/∂x_k` for `k = 1..=2m-r-1`.
    pub partials: Vec<Polynomial>,
    /// `Δ_{i,j}`, the signed cofactor of the `(j,i)` entry, i.e. the adjugate.
    pub cofactor_table: SymMatrix,
}

impl GradientData {
    pub fn nvars(&self) -> usize {
        self.matrix.nvars()
    }

    pub fn field(&self) -> CoefficientField {
        self.f.field()
    }

    /// `Δ_{i,j}` (1-based).
    pub fn delta(&self, i: usize, j: usize) -> &Polynomial {
        self.cofactor_table.get(i, j)
    }

    /// `Σ_{i+j=k+1} M_{i,j}` where `M_{i,j}` is the signed cofactor of the
    /// `(i,j)` entry.
    pub fn cofactor_sum(&self, k: usize) -> Polynomial {
        let mut acc = Polynomial::zero(self.field(), self.nvars());
        for i in 1..=self.m {
            if k + 1 > i && k + 1 - i >= 1 && k + 1 - i <= self.m {
                // M_{i,j} = Δ_{j,i}
                acc += self.cofactor_table.get(k + 1 - i, i);
            }
        }
        acc
    }

    /// `Σ_k x_k f_k`.
    pub fn euler_sum(&self) -> Polynomial {
        let n = self.nvars();
        let mut acc = Polynomial::zero(self.field(), n);
        for (k, fk) in self.partials.iter().enumerate() {
            let x = Polynomial::var(self.field(), n, k + 1).expect("index in range");
            acc += &(&x * fk);
        }
        acc
    }

    /// The gradient ideal `J`.
    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(self.field(), self.nvars(), self.partials.clone())
    }
}

/// Builds [`GradientData`] over the rationals.
pub fn gradient(m: usize, r: usize) -> Result<GradientData> {
    gradient_over(m, r, CoefficientField::Rationals)
}

/// Builds [`GradientData`] over `field`, checking the cofactor description
/// of every partial and Euler's identity.
pub fn gradient_over(m: usize, r: usize, field: CoefficientField) -> Result<GradientData> {
    check_range(m, r)?;
    let matrix = square_hankel(m, r, field)?;
    let f = determinant(&matrix)?;
    let n = matrix.nvars();
    let partials = (1..=n).map(|k| f.partial_derivative(k)).collect::<Result<Vec<_>>>()?;
    let cofactor_table = adjugate(&matrix)?;
    let data = GradientData {
        m,
        r,
        matrix,
        f,
        partials,
        cofactor_table,
    };
    for k in 1..=n {
        if data.partials[k - 1] != data.cofactor_sum(k) {
            return Err(AlgebraError::Inconsistent(format!(
                "f_{k} differs from its cofactor sum for m = {m}, r = {r}"
            )));
        }
    }
    if data.euler_sum() != data.f.scale_int(m as i64) {
        return Err(AlgebraError::Inconsistent(format!("Euler identity fails for m = {m}, r = {r}")));
    }
    Ok(data)
}

#[derive(Clone, Debug, Serialize)]
pub struct CofactorDecompositionReport {
    pub m: usize,
    pub r: usize,
    /// `(k, f_k == Σ_{i+j=k+1} M_{i,j})`.
    pub per_k: Vec<(usize, bool)>,
    pub euler: bool,
    pub holds: bool,
}

/// Recomputes each `f_k` by differentiation and by summing cofactors of the
/// `k`-th anti-diagonal, cofactors taken one at a time from minors.
pub fn cofactor_decomposition_check(m: usize, r: usize) -> Result<CofactorDecompositionReport> {
    check_range(m, r)?;
    let q = CoefficientField::Rationals;
    let h = square_hankel(m, r, q)?;
    let f = determinant(&h)?;
    let n = h.nvars();
    let mut per_k = Vec::with_capacity(n);
    let mut euler = Polynomial::zero(q, n);
    for k in 1..=n {
        let fk = f.partial_derivative(k)?;
        let mut sum = Polynomial::zero(q, n);
        for i in 1..=m {
            if k + 1 > i && k + 1 - i <= m {
                sum += &cofactor(&h, i, k + 1 - i)?;
            }
        }
        per_k.push((k, fk == sum));
        euler += &(&Polynomial::var(q, n, k)? * &fk);
    }
    let euler = euler == f.scale_int(m as i64);
    let holds = euler && per_k.iter().all(|e| e.1);
    Ok(CofactorDecompositionReport { m, r, per_k, euler, holds })
}

/// Hessian matrix of `f` and its `φ_v` degeneration.
#[derive(Clone, Debug)]
pub struct HessianData {
    pub m: usize,
    pub r: usize,
    pub hessian: SymMatrix,
    /// `det φ_v(H(f))`, a polynomial in `x_1, x_{m-r-1}, x_{2m-r-1}`.
    pub degenerated: Polynomial,
}

/// Matrix of second partials of `f`.
pub fn hessian_matrix(f: &Polynomial) -> Result<SymMatrix> {
    let n = f.nvars();
    let firsts = (1..=n).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            entries.push(firsts[i - 1].partial_derivative(j)?);
        }
    }
    SymMatrix::new(n, n, entries)
}

/// The map fixing `x_1, x_{m-r-1}, x_{2m-r-1}` and killing every other
/// variable of `H_m[r]`.
pub fn phi_v(m: usize, r: usize, field: CoefficientField) -> Result<RingMap> {
    check_range(m, r)?;
    let n = 2 * m - r - 1;
    let keep = v_indices(m, r);
    let killed: Vec<usize> = (1..=n).filter(|i| !keep.contains(i)).collect();
    RingMap::annihilating(field, n, &killed)
}

/// `{1, m-r-1, 2m-r-1}` (fewer when indices coincide).
pub fn v_indices(m: usize, r: usize) -> Vec<usize> {
    let mut v = vec![1, m - r - 1, 2 * m - r - 1];
    v.retain(|&i| i >= 1);
    v.sort_unstable();
    v.dedup();
    v
}

pub fn hessian(m: usize, r: usize) -> Result<HessianData> {
    check_range(m, r)?;
    let q = CoefficientField::Rationals;
    let f = determinant(&square_hankel(m, r, q)?)?;
    let h = hessian_matrix(&f)?;
    let degenerated = determinant(&h.map_entries(&phi_v(m, r, q)?)?)?;
    Ok(HessianData {
        m,
        r,
        hessian: h,
        degenerated,
    })
}

/// `det φ_v(H(f))`, computed by applying `φ_v` to the second partials
/// before taking the determinant.
pub fn hessian_degenerated(m: usize, r: usize) -> Result<Polynomial> {
    check_range(m, r)?;
    let q = CoefficientField::Rationals;
    let f = determinant(&square_hankel(m, r, q)?)?;
    let phi = phi_v(m, r, q)?;
    let n = f.nvars();
    let firsts = (1..=n).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>>>()?;
    let mut entries: Vec<Polynomial> = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let e = if j < i {
                entries[(j - 1) * n + (i - 1)].clone()
            } else {
                phi.apply(&firsts[i - 1].partial_derivative(j)?)?
            };
            entries.push(e);
        }
    }
    determinant(&SymMatrix::new(n, n, entries)?)
}

/// How non-vanishing of the Hessian determinant was certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HessianCertificate {
    /// `det φ_v(H(f)) ≠ 0`.
    Degeneration,
    /// `det H(f)` is nonzero at the recorded integer point.
    Evaluation { point: Vec<i64>, value: String },
    /// The full symbolic determinant is nonzero.
    Symbolic,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianCheckReport {
    pub m: usize,
    pub r: usize,
    pub nonzero: bool,
    pub degenerated: Polynomial,
    pub certificate: HessianCertificate,
    pub seed: u64,
}

/// Certifies `h(f) ≠ 0`: first through `φ_v`, then by evaluating `H(f)` at
/// up to five random integer points, finally symbolically.
pub fn hessian_nonvanishing(m: usize, r: usize, seed: u64) -> Result<HessianCheckReport> {
    let degenerated = hessian_degenerated(m, r)?;
    let mut report = HessianCheckReport {
        m,
        r,
        nonzero: true,
        degenerated: degenerated.clone(),
        certificate: HessianCertificate::Degeneration,
        seed,
    };
    if !degenerated.is_zero() {
        return Ok(report);
    }
    let q = CoefficientField::Rationals;
    let f = determinant(&square_hankel(m, r, q)?)?;
    let h = hessian_matrix(&f)?;
    let n = f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let point: Vec<i64> = (0..n).map(|_| rng.random_range(-50..=50)).collect();
        let coords: Vec<Coeff> = point.iter().map(|&v| int(v)).collect();
        let numeric = h.map_with(|p| {
            let v = p.evaluate(&coords)?;
            Ok(Polynomial::constant(q, 0, v))
        })?;
        let value = determinant(&numeric)?.constant_term();
        if !value.is_zero() {
            report.certificate = HessianCertificate::Evaluation {
                point,
                value: value.to_string(),
            };
            return Ok(report);
        }
    }
    report.nonzero = !determinant(&h)?.is_zero();
    report.certificate = if report.nonzero {
        HessianCertificate::Symbolic
    } else {
        HessianCertificate::None
    };
    Ok(report)
}

/// The closed form of `det φ_v(H(f))` for `r <= m - 3`:
/// `K·p^{2m-2r-4}·q^{r+1}·(± a ± b)` with
/// `K = 2^{r+1}(r+1)(m-r-1)!(m-r-2)!`, `p = x_{m-r-1}^{m-r-3} x_{2m-r-1}^{r+1}`,
/// `q = x_1 x_{m-r-1}^{m-r-3} x_{2m-r-1}^r`,
/// `a = r(m-r-2)·p·x_{m-r-1}^{m-r-1} x_{2m-r-1}^{r-1}` and
/// `b = (m-r-1)(r+1)·x_{m-r-1}^{2m-2r-4} x_{2m-r-1}^{2r}`.
#[derive(Clone, Debug, Serialize)]
pub struct AppendixClosedForm {
    pub m: usize,
    pub r: usize,
    pub prefactor: Polynomial,
    /// `[a, b]` with positive coefficients; `a = 0` when `r = 0`.
    pub inner: [Polynomial; 2],
    /// Whether the two inner terms have different monomials.
    pub inner_terms_distinct: bool,
    /// Monomials of the expansion for some choice of signs.
    pub support: BTreeSet<String>,
    /// For each monomial, the absolute values its coefficient can take over
    /// the sign choices.
    pub abs_coefficients: BTreeMap<String, BTreeSet<String>>,
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

pub fn appendix_closed_form(m: usize, r: usize) -> Result<AppendixClosedForm> {
    check_range(m, r)?;
    if r + 3 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "the closed form needs r <= m - 3; for r = m - 2 the Hessian is a pure power of x_{{m+1}} (got m = {m}, r = {r})"
        )));
    }
    let q_field = CoefficientField::Rationals;
    let n = 2 * m - r - 1;
    let (b, c) = (m - r - 1, n);
    let mono = |e1: u16, eb: u16, ec: u16| {
        let mut exps = vec![0u16; n];
        exps[0] += e1;
        exps[b - 1] += eb;
        exps[c - 1] += ec;
        Monomial::from_exponents(&exps)
    };
    let (mu, ru) = (m as u16, r as u16);
    let k = 2i64.pow(r as u32 + 1) * (r as i64 + 1) * factorial(m - r - 1) * factorial(m - r - 2);
    // p^{2m-2r-4} q^{r+1}
    let p_exp = 2 * mu - 2 * ru - 4;
    let pre = mono(
        ru + 1,
        (mu - ru - 3) * p_exp + (mu - ru - 3) * (ru + 1),
        (ru + 1) * p_exp + ru * (ru + 1),
    );
    let prefactor = Polynomial::monomial(q_field, pre, int(k));
    let a = if r == 0 {
        Polynomial::zero(q_field, n)
    } else {
        Polynomial::monomial(
            q_field,
            mono(0, (mu - ru - 3) + (mu - ru - 1), (ru + 1) + (ru - 1)),
            int(r as i64 * (m - r - 2) as i64),
        )
    };
    let bterm = Polynomial::monomial(
        q_field,
        mono(0, 2 * mu - 2 * ru - 4, 2 * ru),
        int((m - r - 1) as i64 * (r + 1) as i64),
    );
    let inner_terms_distinct = a.is_zero() || a.terms().next().map(|t| t.0) != bterm.terms().next().map(|t| t.0);
    let mut support = BTreeSet::new();
    let mut abs_coefficients: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for expansion in closed_form_expansions(&prefactor, &a, &bterm) {
        for (mono, c) in expansion.terms() {
            let key = Polynomial::monomial(q_field, mono.clone(), int(1)).to_text();
            support.insert(key.clone());
            abs_coefficients.entry(key).or_default().insert(c.abs().to_string());
        }
    }
    Ok(AppendixClosedForm {
        m,
        r,
        prefactor,
        inner: [a, bterm],
        inner_terms_distinct,
        support,
        abs_coefficients,
    })
}

/// `prefactor·(ε_a a + ε_b b)` for the four sign choices.
fn closed_form_expansions(prefactor: &Polynomial, a: &Polynomial, b: &Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for sa in [1i64, -1] {
        for sb in [1i64, -1] {
            out.push(prefactor * &(&a.scale_int(sa) + &b.scale_int(sb)));
        }
    }
    out
}

impl AppendixClosedForm {
    /// Sign choice `(ε_a, ε_b, global)` under which the closed form equals
    /// `value`, if any.
    pub fn matching_signs(&self, value: &Polynomial) -> Option<(i8, i8, i8)> {
        for sa in [1i8, -1] {
            for sb in [1i8, -1] {
                let e = &self.prefactor
                    * &(&self.inner[0].scale_int(sa as i64) + &self.inner[1].scale_int(sb as i64));
                if &e == value {
                    return Some((sa, sb, 1));
                }
                if &(-&e) == value {
                    return Some((sa, sb, -1));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub m: usize,
    pub r: usize,
    pub degenerated: Polynomial,
    pub nonzero: bool,
    /// `None` when the closed form does not apply (`r = m - 2`).
    pub closed_form: Option<AppendixClosedForm>,
    /// Signs `(ε_a, ε_b, global)` reproducing the computed determinant.
    pub matching_signs: Option<(i8, i8, i8)>,
    pub support_matches: Option<bool>,
    pub abs_coefficients_match: Option<bool>,
}

impl AppendixReport {
    /// Support and absolute coefficients agree with the closed form for one
    /// choice of signs.
    pub fn matches(&self) -> bool {
        self.matching_signs.is_some()
    }
}

/// Compares `det φ_v(H(f))` with the closed form.
pub fn appendix_check(m: usize, r: usize) -> Result<AppendixReport> {
    let degenerated = hessian_degenerated(m, r)?;
    let closed_form = if r + 3 <= m { Some(appendix_closed_form(m, r)?) } else { None };
    let (matching_signs, support_matches, abs_coefficients_match) = match &closed_form {
        None => (None, None, None),
        Some(cf) => {
            let mut sup = true;
            let mut abs = true;
            for (mono, c) in degenerated.terms() {
                let key = Polynomial::monomial(CoefficientField::Rationals, mono.clone(), int(1)).to_text();
                match cf.abs_coefficients.get(&key) {
                    None => {
                        sup = false;
                        abs = false;
                    }
                    Some(set) => abs &= set.contains(&c.abs().to_string()),
                }
            }
            (cf.matching_signs(&degenerated), Some(sup && !degenerated.is_zero()), Some(abs))
        }
    };
    Ok(AppendixReport {
        m,
        r,
        nonzero: !degenerated.is_zero(),
        degenerated,
        closed_form,
        matching_signs,
        support_matches,
        abs_coefficients_match,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub m: usize,
    pub r: usize,
    pub exponent: usize,
    pub determinant: Polynomial,
    /// `c` in `det Θ = c·x_{m+1}^{(m+1)(m-2)}`.
    pub coefficient: Option<String>,
    pub holds: bool,
}

/// `Θ` is the leading `(m+1)×(m+1)` principal submatrix of `H(f)` after
/// `x_{m+2}, …, x_{2m-r-1} ↦ 0`; checks `det Θ = c·x_{m+1}^{(m+1)(m-2)}`
/// with `c ≠ 0`.
pub fn theta_check(m: usize, r: usize) -> Result<ThetaReport> {
    check_range(m, r)?;
    if m < 3 {
        return Err(AlgebraError::InvalidParameters("theta check needs m >= 3".into()));
    }
    let q = CoefficientField::Rationals;
    let f = determinant(&square_hankel(m, r, q)?)?;
    let n = f.nvars();
    let killed: Vec<usize> = (m + 2..=n).collect();
    let section = RingMap::annihilating(q, n, &killed)?;
    let idx: Vec<usize> = (1..=m + 1).collect();
    let mut entries = Vec::new();
    for &i in &idx {
        let fi = f.partial_derivative(i)?;
        for &j in &idx {
            entries.push(section.apply(&fi.partial_derivative(j)?)?);
        }
    }
    let theta = SymMatrix::new(m + 1, m + 1, entries)?;
    let det = determinant(&theta)?;
    let exponent = (m + 1) * (m - 2);
    let c = det.pure_term_coefficient(m + 1, exponent as u16);
    let holds = !c.is_zero() && det.len() == 1;
    Ok(ThetaReport {
        m,
        r,
        exponent,
        determinant: det,
        coefficient: if c.is_zero() { None } else { Some(c.to_string()) },
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CofactorRelation {
    pub k: usize,
    pub j: usize,
    /// `x_{m-k+2}Δ_{1,j} + ⋯ + x_{m+1}Δ_{k,j} + x_{m+2}Δ_{k+1,j}`.
    pub value: Polynomial,
    /// The value is zero.
    pub vanishes: bool,
    /// The value is `f`, which happens when `j = m - k + 2`.
    pub equals_f: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CofactorRelationsReport {
    pub m: usize,
    pub r: usize,
    /// The displayed relations, present only when `m - r = 3`.
    pub relations: Vec<CofactorRelation>,
    /// Every relation equals `0` or `f` as dictated by `adj·H = f·I`.
    pub relations_hold: bool,
    /// `(j, identity holds)` for the block identity of each split `1 <= j <= m-2`.
    pub block_identities: Vec<(usize, bool)>,
    pub holds: bool,
}

/// Checks the linear relations `Σ_i x_{m-k+1+i} Δ_{i,j}` among cofactors
/// coming from row `m-k+2` of `H_m[r]` (for `m - r = 3`, `2 <= k <= m-1`),
/// and the block form of `adj·H = f·I` for every split.
pub fn cofactor_relations_check(m: usize, r: usize) -> Result<CofactorRelationsReport> {
    check_range(m, r)?;
    let data = gradient(m, r)?;
    let q = data.field();
    let n = data.nvars();
    let mut relations = Vec::new();
    if m - r == 3 {
        for k in 2..m {
            for j in 1..=k + 1 {
                let mut value = Polynomial::zero(q, n);
                for i in 1..=k + 1 {
                    let x = Polynomial::var(q, n, m - k + 1 + i)?;
                    value += &(&x * data.delta(i, j));
                }
                let vanishes = value.is_zero();
                let equals_f = value == data.f;
                relations.push(CofactorRelation {
                    k,
                    j,
                    value,
                    vanishes,
                    equals_f,
                });
            }
        }
    }
    let relations_hold = relations
        .iter()
        .all(|rel| if rel.j == m + 2 - rel.k { rel.equals_f } else { rel.vanishes });
    let mut block_identities = Vec::new();
    if m >= 3 {
        for j in 1..=m - 2 {
            let bp = crate::symmatrix::block_partition(m, r, j, q)?;
            block_identities.push((j, bp.verify_identity()?));
        }
    }
    let holds = relations_hold && block_identities.iter().all(|e| e.1);
    Ok(CofactorRelationsReport {
        m,
        r,
        relations,
        relations_hold,
        block_identities,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradientCodimReport {
    pub m: usize,
    pub r: usize,
    pub codim: i64,
    pub expected: i64,
    pub holds: bool,
}

/// Codimension of the gradient ideal, expected `2` when `m - r = 2` and `3`
/// otherwise.
pub fn gradient_codim(m: usize, r: usize, engine: &Engine) -> Result<GradientCodimReport> {
    check_range(m, r)?;
    let data = gradient(m, r)?;
    let codim = engine.codimension(&data.ideal()?)?;
    let expected = if m - r == 2 { 2 } else { 3 };
    Ok(GradientCodimReport {
        m,
        r,
        codim,
        expected,
        holds: codim == expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalPrimesReport {
    pub m: usize,
    pub r: usize,
    /// Every `f_k` vanishes modulo `Q = (x_m, …, x_{2m-r-1})`.
    pub in_q: bool,
    /// Every `f_k` lies in `P = I_{m-1}(H_m[r])`.
    pub in_p: bool,
    pub codim_q: i64,
    pub codim_p: i64,
    /// `codim Q = m - r` and `codim P = 3`.
    pub codims_hold: bool,
    /// Every generator of `P·Q` lies in the radical of `J`; `None` when the
    /// Gröbner budget ran out.
    pub radical_spot_check: Option<bool>,
    pub holds: bool,
}

/// The containments `J ⊆ P ∩ Q` and the codimensions of `P` and `Q`, plus
/// a radical-membership spot check of `P·Q ⊆ √J`.
pub fn minimal_primes_checks(m: usize, r: usize, engine: &Engine, radical_engine: Option<&Engine>) -> Result<MinimalPrimesReport> {
    check_range(m, r)?;
    if r == 0 || r + 3 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "need 1 <= r <= m - 3 (got m = {m}, r = {r})"
        )));
    }
    let data = gradient(m, r)?;
    let q = data.field();
    let n = data.nvars();
    let q_vars: Vec<usize> = (m..=n).collect();
    let kill_q = RingMap::annihilating(q, n, &q_vars)?;
    let mut in_q = true;
    for fk in &data.partials {
        in_q &= kill_q.apply(fk)?.is_zero();
    }
    let p_ideal = minor_ideal(&data.matrix, m - 1)?;
    let gb_p = engine.groebner_basis(&p_ideal, MonomialOrder::DegRevLex)?;
    let in_p = data.partials.iter().all(|fk| gb_p.contains(fk));
    let q_ideal = Ideal::variables(q, n, &q_vars)?;
    let codim_q = engine.codimension(&q_ideal)?;
    let codim_p = gb_p.codimension();
    let codims_hold = codim_q == (m - r) as i64 && codim_p == 3;
    let radical_spot_check = match radical_engine {
        None => None,
        Some(eng) => {
            let j = data.ideal()?;
            let mut ok = Some(true);
            'outer: for g in p_ideal.generators() {
                for &v in &q_vars {
                    let prod = g * &Polynomial::var(q, n, v)?;
                    match eng.radical_membership(&prod, &j) {
                        Ok(true) => {}
                        Ok(false) => {
                            ok = Some(false);
                            break 'outer;
                        }
                        Err(AlgebraError::BudgetExceeded(_)) => {
                            ok = None;
                            break 'outer;
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            ok
        }
    };
    Ok(MinimalPrimesReport {
        m,
        r,
        in_q,
        in_p,
        codim_q,
        codim_p,
        codims_hold,
        radical_spot_check,
        holds: in_q && in_p && codims_hold && radical_spot_check != Some(false),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularSequenceReport {
    pub m: usize,
    /// The variables tested, in the order used.
    pub sequence: Vec<usize>,
    /// `(variable index, regular modulo J + previous variables)`.
    pub steps: Vec<(usize, bool)>,
    /// First variable found to be a zero divisor, with a witness in
    /// `(J_current : x) \ J_current`.
    pub first_failure: Option<(usize, Polynomial)>,
}

/// Tests whether `x_{2m-1}, x_{2m-2}, …, x_{m+3}` (stopping at `x_lowest`
/// when given) is a regular sequence modulo the gradient ideal of
/// `det H_m`, adding each regular variable to the ideal before the next.
pub fn regular_sequence_experiment(m: usize, lowest: Option<usize>, engine: &Engine) -> Result<RegularSequenceReport> {
    check_range(m, 0)?;
    let data = gradient(m, 0)?;
    let q = data.field();
    let n = data.nvars();
    let stop = lowest.unwrap_or(m + 3).max(m + 3);
    let sequence: Vec<usize> = (stop..=2 * m - 1).rev().collect();
    let mut current = data.ideal()?;
    let mut steps = Vec::new();
    let mut first_failure = None;
    for &v in &sequence {
        let x = Polynomial::var(q, n, v)?;
        let quotient = engine.ideal_quotient(&current, &x)?;
        let gb = engine.groebner_basis(&current, MonomialOrder::DegRevLex)?;
        let witness = quotient.generators().iter().find(|g| !gb.contains(g)).cloned();
        steps.push((v, witness.is_none()));
        if let Some(w) = witness {
            first_failure = Some((v, w));
            break;
        }
        current = current.sum(&Ideal::variables(q, n, &[v])?)?;
    }
    Ok(RegularSequenceReport {
        m,
        sequence,
        steps,
        first_failure,
    })
}

/// Linear syzygies of the gradient of `det H_m[r]` over `field`.
pub fn gradient_linear_syzygies(m: usize, r: usize, field: CoefficientField, seed: u64) -> Result<SyzygyReport> {
    let data = gradient_over(m, r, field)?;
    linear_syzygies(&data.partials, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyShapeReport {
    pub m: usize,
    /// Dimension of the linear syzygies `(λ_k)` with `λ_k` a multiple of
    /// `x_{k+s}`, for shifts `s = -1, 0, 1`.
    pub by_shift: BTreeMap<i64, usize>,
    /// Every linear syzygy decomposes into those three shifts.
    pub only_unit_shifts: bool,
    /// The shift `-1` syzygy has a nonzero last coordinate.
    pub last_coordinate_nonzero: bool,
}

/// Shape of the linear syzygies of the generic gradient ideal: with `x_i` of
/// weight `i`, a syzygy of weight shift `s` has `k`-th coordinate a multiple
/// of `x_{k+s}`.
pub fn generic_syzygy_shape(m: usize, seed: u64) -> Result<SyzygyShapeReport> {
    let data = gradient(m, 0)?;
    let report = linear_syzygies(&data.partials, seed)?;
    let n = data.nvars();
    let mut by_shift: BTreeMap<i64, usize> = BTreeMap::new();
    let mut only_unit_shifts = true;
    let mut last_coordinate_nonzero = false;
    // group each syzygy's terms by shift; the syzygy space is spanned by
    // weight-homogeneous pieces, counted through their ranks per shift
    let mut pieces: BTreeMap<i64, Vec<Polynomial>> = BTreeMap::new();
    let ring = n + data.partials.len();
    for syz in &report.syzygies {
        let mut split: BTreeMap<i64, Vec<(usize, Polynomial)>> = BTreeMap::new();
        for (k, lam) in syz.iter().enumerate() {
            for (mono, c) in lam.terms() {
                let var = mono.support()[0] + 1;
                let shift = var as i64 - (k as i64 + 1);
                split
                    .entry(shift)
                    .or_default()
                    .push((k, Polynomial::monomial(lam.field(), mono.clone(), c.clone())));
            }
        }
        for (shift, parts) in split {
            if !(-1..=1).contains(&shift) {
                only_unit_shifts = false;
            }
            if shift == -1 && parts.iter().any(|(k, _)| *k + 1 == n) {
                last_coordinate_nonzero = true;
            }
            // encode the piece as one polynomial in n + |F| variables
            let mut enc = Polynomial::zero(lam_field(syz), ring);
            for (k, p) in parts {
                let tag = Polynomial::var(lam_field(syz), ring, n + k + 1)?;
                enc += &(&p.embed(ring, 0) * &tag);
            }
            pieces.entry(shift).or_default().push(enc);
        }
    }
    for (shift, ps) in pieces {
        by_shift.insert(shift, crate::linalg::polynomial_span_rank(&ps));
    }
    Ok(SyzygyShapeReport {
        m,
        by_shift,
        only_unit_shifts,
        last_coordinate_nonzero,
    })
}

fn lam_field(syz: &[Polynomial]) -> CoefficientField {
    syz[0].field()
}


/// Reduction check of the gradient ideal `J` of `det H_m[r]` against the
/// ideal `I` of maximal minors of `H_{m-1,m+1}[r]`, exponents up to `nmax`.
pub fn gradient_reduction_check(m: usize, r: usize, nmax: usize, engine: &Engine) -> Result<ReductionReport> {
    check_range(m, r)?;
    let data = gradient(m, r)?;
    let h = hankel(HankelSpec::new(m - 1, m + 1, r), data.field())?;
    let i = minor_ideal(&h, m - 1)?;
    reduction_check(&data.partials, i.generators(), nmax, engine)
}
