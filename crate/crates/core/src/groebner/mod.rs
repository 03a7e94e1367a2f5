//! Gröbner bases and the ideal operations built on them.
//!
//! The engine is Buchberger's algorithm with the Gebauer–Möller criteria and
//! the normal selection strategy. Over the rationals the computation runs on
//! primitive integer polynomials; the reduced basis is reported monic.
//! Results are deterministic for a given generator list, which makes the
//! optional disk cache sound.

pub mod cache;
mod dimension;
mod engine;
mod reduction;
mod syzygy;

use std::sync::Arc;

use num_rational::BigRational;

use crate::domain::{Domain, IntDomain, PrimeDomain, RatDomain};
use crate::error::{AlgebraError, Result};
use crate::polyring::{CoefficientField, Monomial, MonomialOrder, Polynomial};

pub use cache::{CacheStats, CacheVerifyReport, GbCache};
pub use dimension::{dimension_of_monomial_ideal, dimension_of_monomial_ideal_brute_force};
pub use engine::EngineStats;
pub use reduction::{reduction_check, ReductionReport};
pub use syzygy::{linear_syzygies, SyzygyReport};

use engine::{export_monic, export_poly, import_poly, GPoly};

/// Bumped whenever basis output could change; part of every cache key.
pub const ENGINE_VERSION: &str = "1";

/// Resource caps for a single basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pair_reductions: usize,
    pub max_basis_size: usize,
    /// Cap on the number of terms of any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pair_reductions: 200_000,
            max_basis_size: 5_000,
            max_terms: 1_000_000,
        }
    }
}

/// An ideal given by generators in a fixed ring.
///
/// Generators are stored nonzero, deduplicated and normalized: integer
/// primitive with positive leading coefficient over the rationals, monic over
/// a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    field: CoefficientField,
    nvars: usize,
    generators: Vec<Polynomial>,
}

fn normalize_generator(p: &Polynomial) -> Polynomial {
    match p.field() {
        CoefficientField::Rationals => {
            let g = import_poly(&IntDomain, &MonomialOrder::DegRevLex, p, true);
            export_poly(&IntDomain, &g, p.field(), p.nvars())
        }
        CoefficientField::PrimeField(_) => p.make_monic(MonomialOrder::DegRevLex),
    }
}

impl Ideal {
    pub fn new(field: CoefficientField, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens: Vec<Polynomial> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.field() != field {
                return Err(AlgebraError::FieldMismatch(g.field(), field));
            }
            if g.nvars() != nvars {
                return Err(AlgebraError::ArityMismatch(g.nvars(), nvars));
            }
            if g.is_zero() {
                continue;
            }
            let g = normalize_generator(&g);
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal {
            field,
            nvars,
            generators: gens,
        })
    }

    /// Ideal of the given polynomials; the ring is taken from the first one.
    pub fn from_polys(gens: &[Polynomial]) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| AlgebraError::InvalidParameters("no generators; use Ideal::new for the zero ideal".into()))?;
        Ideal::new(first.field(), first.nvars(), gens.to_vec())
    }

    pub fn zero(field: CoefficientField, nvars: usize) -> Self {
        Ideal {
            field,
            nvars,
            generators: Vec::new(),
        }
    }

    /// The ideal `(x_i : i in indices)`, 1-based.
    pub fn variables(field: CoefficientField, nvars: usize, indices: &[usize]) -> Result<Self> {
        let gens = indices
            .iter()
            .map(|&i| Polynomial::var(field, nvars, i))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(field, nvars, gens)
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.field, self.nvars, gens)
    }

    /// Product of ideals, generated by pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(self.field, self.nvars, gens)
    }

    /// Canonical text: one generator per line.
    pub fn to_text(&self) -> String {
        self.generators.iter().map(|g| g.to_text()).collect::<Vec<_>>().join("\n")
    }
}

#[derive(Clone, Debug)]
enum BasisData {
    Rat(Vec<GPoly<BigRational>>),
    Prime(u64, Vec<GPoly<u64>>),
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: CoefficientField,
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    data: BasisData,
    stats: EngineStats,
    from_cache: bool,
}

impl GroebnerBasis {
    /// Wraps a list of monic polynomials already forming a reduced basis.
    pub(crate) fn from_monic(
        field: CoefficientField,
        nvars: usize,
        order: MonomialOrder,
        basis: Vec<Polynomial>,
        stats: EngineStats,
        from_cache: bool,
    ) -> Self {
        let data = match field {
            CoefficientField::Rationals => {
                BasisData::Rat(basis.iter().map(|p| import_poly(&RatDomain, &order, p, false)).collect())
            }
            CoefficientField::PrimeField(p) => BasisData::Prime(
                p,
                basis
                    .iter()
                    .map(|q| import_poly(&PrimeDomain { p }, &order, q, false))
                    .collect(),
            ),
        };
        GroebnerBasis {
            field,
            nvars,
            order,
            basis,
            data,
            stats,
            from_cache,
        }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Monic basis elements, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn from_cache(&self) -> bool {
        self.from_cache
    }

    /// Basis elements scaled to primitive integer polynomials (identical to
    /// [`basis`](Self::basis) over a prime field).
    pub fn primitive_basis(&self) -> Vec<Polynomial> {
        self.basis.iter().map(normalize_generator).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| p.initial_term(self.order).expect("basis elements are nonzero").monomial)
            .collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.is_constant())
    }

    /// Remainder of `p` on division by the basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.field() != self.field {
            return Err(AlgebraError::FieldMismatch(p.field(), self.field));
        }
        if p.nvars() != self.nvars {
            return Err(AlgebraError::ArityMismatch(p.nvars(), self.nvars));
        }
        fn run<D: Domain>(
            dom: &D,
            order: &MonomialOrder,
            basis: &[GPoly<D::Elem>],
            p: &Polynomial,
        ) -> Result<Polynomial> {
            let refs: Vec<&GPoly<D::Elem>> = basis.iter().collect();
            let g = import_poly(dom, order, p, false);
            let r = engine::reduce(dom, order, g, &refs, true, false, usize::MAX)?;
            Ok(export_poly(dom, &r, p.field(), p.nvars()))
        }
        match &self.data {
            BasisData::Rat(b) => run(&RatDomain, &self.order, b, p),
            BasisData::Prime(q, b) => run(&PrimeDomain { p: *q }, &self.order, b, p),
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Krull dimension of `R/I` from the initial ideal; `-1` for the unit ideal.
    pub fn dimension(&self) -> i64 {
        dimension_of_monomial_ideal(self.nvars, &self.leading_monomials())
    }

    pub fn codimension(&self) -> i64 {
        self.nvars as i64 - self.dimension()
    }

    /// Re-checks that all S-polynomials reduce to zero.
    pub fn verify(&self) -> Result<bool> {
        match &self.data {
            BasisData::Rat(_) => {
                let prim: Vec<GPoly<_>> = self
                    .basis
                    .iter()
                    .map(|p| import_poly(&IntDomain, &self.order, p, true))
                    .collect();
                engine::verify_basis(&IntDomain, &self.order, &prim, true, usize::MAX)
            }
            BasisData::Prime(p, b) => engine::verify_basis(&PrimeDomain { p: *p }, &self.order, b, false, usize::MAX),
        }
    }

    /// One polynomial per line, each in the canonical text form.
    pub fn to_lines(&self) -> Vec<String> {
        self.basis.iter().map(|p| p.to_text()).collect()
    }
}

fn compute_basis(ideal: &Ideal, order: MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let field = ideal.field;
    let nvars = ideal.nvars;
    match field {
        CoefficientField::Rationals => {
            let dom = IntDomain;
            let gens: Vec<GPoly<_>> = ideal
                .generators
                .iter()
                .map(|p| import_poly(&dom, &order, p, true))
                .collect();
            let (basis, stats) = engine::buchberger(&dom, order, gens, budget, true)?;
            if !engine::verify_basis(&dom, &order, &basis, true, budget.max_terms)? {
                return Err(AlgebraError::Inconsistent("S-polynomial check failed on computed basis".into()));
            }
            let monic = basis.iter().map(|g| export_monic(&dom, g, field, nvars)).collect();
            Ok(GroebnerBasis::from_monic(field, nvars, order, monic, stats, false))
        }
        CoefficientField::PrimeField(p) => {
            let dom = PrimeDomain { p };
            let gens: Vec<GPoly<_>> = ideal
                .generators
                .iter()
                .map(|q| import_poly(&dom, &order, q, true))
                .collect();
            let (basis, stats) = engine::buchberger(&dom, order, gens, budget, false)?;
            if !engine::verify_basis(&dom, &order, &basis, false, budget.max_terms)? {
                return Err(AlgebraError::Inconsistent("S-polynomial check failed on computed basis".into()));
            }
            let monic = basis.iter().map(|g| export_monic(&dom, g, field, nvars)).collect();
            Ok(GroebnerBasis::from_monic(field, nvars, order, monic, stats, false))
        }
    }
}

/// Runs basis computations under a budget, optionally through a disk cache.
#[derive(Clone, Debug)]
pub struct Engine {
    pub budget: Budget,
    /// Order used for membership, equality and dimension queries.
    pub order: MonomialOrder,
    cache: Option<Arc<GbCache>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Budget::default())
    }
}

impl Engine {
    pub fn new(budget: Budget) -> Self {
        Engine {
            budget,
            order: MonomialOrder::DegRevLex,
            cache: None,
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_cache(mut self, cache: Arc<GbCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn cache(&self) -> Option<&Arc<GbCache>> {
        self.cache.as_ref()
    }

    pub fn groebner_basis(&self, ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
        if let Some(cache) = &self.cache {
            if let Some(gb) = cache.load(ideal, order) {
                return Ok(gb);
            }
        }
        let gb = compute_basis(ideal, order, self.budget)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store(ideal, &gb) {
                log::warn!("could not write cache entry: {e}");
            }
        }
        Ok(gb)
    }

    pub fn contains(&self, p: &Polynomial, ideal: &Ideal) -> Result<bool> {
        let gb = self.groebner_basis(ideal, self.order)?;
        Ok(gb.normal_form(p)?.is_zero())
    }

    /// Mutual containment of generators.
    pub fn ideal_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        if a.field != b.field || a.nvars != b.nvars {
            return Err(AlgebraError::InvalidParameters("ideals live in different rings".into()));
        }
        let ga = self.groebner_basis(a, self.order)?;
        if !b.generators.iter().all(|g| ga.contains(g)) {
            return Ok(false);
        }
        let gb = self.groebner_basis(b, self.order)?;
        Ok(a.generators.iter().all(|g| gb.contains(g)))
    }

    /// Whether `a ⊆ b`.
    pub fn is_subset(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        let gb = self.groebner_basis(b, self.order)?;
        Ok(a.generators.iter().all(|g| gb.contains(g)))
    }

    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub fn dimension(&self, ideal: &Ideal) -> Result<i64> {
        Ok(self.groebner_basis(ideal, self.order)?.dimension())
    }

    pub fn codimension(&self, ideal: &Ideal) -> Result<i64> {
        Ok(ideal.nvars as i64 - self.dimension(ideal)?)
    }

    /// `I ∩ k[remaining variables]`, returned in the ring of the remaining
    /// variables (in their original relative order). Indices are 1-based.
    pub fn elimination(&self, ideal: &Ideal, elim_vars: &[usize]) -> Result<Ideal> {
        let n = ideal.nvars;
        let mut elim: Vec<usize> = elim_vars.to_vec();
        elim.sort_unstable();
        elim.dedup();
        for &i in &elim {
            if i == 0 || i > n {
                return Err(AlgebraError::VariableOutOfRange { index: i, nvars: n });
            }
        }
        let rest: Vec<usize> = (1..=n).filter(|i| !elim.contains(i)).collect();
        let k = elim.len();
        // move eliminated variables to the front
        let mut position = vec![0usize; n];
        for (new, &old) in elim.iter().chain(rest.iter()).enumerate() {
            position[old - 1] = new;
        }
        let permute = |p: &Polynomial| -> Polynomial {
            let mut out = Polynomial::zero(p.field(), n);
            for (m, c) in p.terms() {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[position[i]] = x;
                }
                out.add_term(Monomial::from_exponents(&e), c.clone());
            }
            out
        };
        let moved = Ideal::new(ideal.field, n, ideal.generators.iter().map(permute).collect())?;
        let gb = self.groebner_basis(&moved, MonomialOrder::Block { elim_count: k })?;
        let kept: Vec<Polynomial> = gb
            .basis()
            .iter()
            .filter_map(|p| p.restrict(k, n - k))
            .collect();
        Ideal::new(ideal.field, n - k, kept)
    }

    pub fn intersection(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        let n = a.nvars;
        let field = a.field;
        let t = Polynomial::var(field, n + 1, 1)?;
        let one_minus_t = &Polynomial::one(field, n + 1) - &t;
        let mut gens = Vec::new();
        for g in &a.generators {
            gens.push(&t * &g.embed(n + 1, 1));
        }
        for g in &b.generators {
            gens.push(&one_minus_t * &g.embed(n + 1, 1));
        }
        let big = Ideal::new(field, n + 1, gens)?;
        self.elimination(&big, &[1])
    }

    /// `(I : f)`, via `I ∩ (f)` divided by `f`.
    pub fn ideal_quotient(&self, ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let principal = Ideal::new(ideal.field, ideal.nvars, vec![f.clone()])?;
        let inter = self.intersection(ideal, &principal)?;
        let gens = inter
            .generators
            .iter()
            .map(|g| g.div_exact(f))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ideal.field, ideal.nvars, gens)
    }

    /// Whether `f` is a nonzerodivisor modulo `I`, i.e. `(I : f) = I`.
    pub fn is_regular(&self, ideal: &Ideal, f: &Polynomial) -> Result<bool> {
        let q = self.ideal_quotient(ideal, f)?;
        self.is_subset(&q, ideal)
    }

    /// Whether `p` lies in the radical of `I` (Rabinowitsch).
    pub fn radical_membership(&self, p: &Polynomial, ideal: &Ideal) -> Result<bool> {
        let n = ideal.nvars;
        let field = ideal.field;
        let mut gens: Vec<Polynomial> = ideal.generators.iter().map(|g| g.embed(n + 1, 0)).collect();
        let y = Polynomial::var(field, n + 1, n + 1)?;
        gens.push(&Polynomial::one(field, n + 1) - &(&y * &p.embed(n + 1, 0)));
        let big = Ideal::new(field, n + 1, gens)?;
        Ok(self.groebner_basis(&big, self.order)?.is_unit())
    }

    /// Relations among `images`: the kernel of `k[t_1..t_N] → R`,
    /// `t_i ↦ images[i]`, as an ideal in `N` variables.
    pub fn kernel_of_algebra_map(&self, images: &[Polynomial]) -> Result<Ideal> {
        let first = images
            .first()
            .ok_or_else(|| AlgebraError::InvalidParameters("no images".into()))?;
        let field = first.field();
        let n = first.nvars();
        let big_n = images.len();
        let total = n + big_n;
        let mut gens = Vec::with_capacity(big_n);
        for (i, g) in images.iter().enumerate() {
            if g.field() != field || g.nvars() != n {
                return Err(AlgebraError::InvalidParameters("images live in different rings".into()));
            }
            let t = Polynomial::var(field, total, n + i + 1)?;
            gens.push(&t - &g.embed(total, 0));
        }
        let big = Ideal::new(field, total, gens)?;
        let elim: Vec<usize> = (1..=n).collect();
        self.elimination(&big, &elim)
    }
}

/// Reduced basis under `order` with the default budget.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    Engine::default().groebner_basis(ideal, order)
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(p)
}

pub fn dimension(ideal: &Ideal) -> Result<i64> {
    Engine::default().dimension(ideal)
}

pub fn codimension(ideal: &Ideal) -> Result<i64> {
    Engine::default().codimension(ideal)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    Engine::default().ideal_equal(a, b)
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    Engine::default().contains(p, ideal)
}

pub fn elimination(ideal: &Ideal, elim_vars: &[usize]) -> Result<Ideal> {
    Engine::default().elimination(ideal, elim_vars)
}

pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    Engine::default().ideal_quotient(ideal, f)
}

pub fn radical_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    Engine::default().radical_membership(p, ideal)
}

pub fn kernel_of_algebra_map(images: &[Polynomial]) -> Result<Ideal> {
    Engine::default().kernel_of_algebra_map(images)
}
