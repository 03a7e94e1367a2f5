//! Buchberger's algorithm with the Gebauer–Möller criteria.
//!
//! Polynomials are dense-in-terms vectors sorted by decreasing monomial.
//! Over the integers every intermediate result is kept primitive.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::domain::Domain;
use crate::error::{AlgebraError, Result};
use crate::polyring::{Coeff, CoefficientField, Monomial, MonomialOrder, Polynomial};

use super::Budget;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    e: SmallVec<[u16; 16]>,
    deg: u32,
    mask: u64,
}

fn mask_of(e: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

impl Mono {
    pub(crate) fn from_exps(e: &[u16]) -> Self {
        Mono {
            e: SmallVec::from_slice(e),
            deg: e.iter().map(|&x| x as u32).sum(),
            mask: mask_of(e),
        }
    }

    pub(crate) fn to_monomial(&self) -> Monomial {
        Monomial::from_exponents(&self.e)
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono {
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    #[inline]
    pub(crate) fn divides(&self, o: &Mono) -> bool {
        self.mask & !o.mask == 0 && self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    fn quotient(&self, o: &Mono) -> Mono {
        Mono::from_exps(&o.e.iter().zip(&self.e).map(|(a, b)| a - b).collect::<SmallVec<[u16; 16]>>())
    }

    fn lcm(&self, o: &Mono) -> Mono {
        Mono::from_exps(&self.e.iter().zip(&o.e).map(|(a, b)| *a.max(b)).collect::<SmallVec<[u16; 16]>>())
    }

    fn coprime(&self, o: &Mono) -> bool {
        // the mask is exact for up to 64 variables
        if self.e.len() <= 64 {
            self.mask & o.mask == 0
        } else {
            self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
        }
    }
}

#[inline]
pub(crate) fn mcmp(order: &MonomialOrder, a: &Mono, b: &Mono) -> Ordering {
    match order {
        MonomialOrder::DegRevLex => match a.deg.cmp(&b.deg) {
            Ordering::Equal => {
                for (x, y) in a.e.iter().rev().zip(b.e.iter().rev()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            other => other,
        },
        MonomialOrder::Lex => a.e.cmp(&b.e),
        _ => order.cmp_exps(&a.e, &b.e),
    }
}

pub(crate) type GPoly<E> = Vec<(Mono, E)>;

pub(crate) fn import_poly<D: Domain>(dom: &D, order: &MonomialOrder, p: &Polynomial, normalize: bool) -> GPoly<D::Elem> {
    let cs: Vec<Coeff> = p.terms().map(|(_, c)| c.clone()).collect();
    let vals = dom.import(&cs);
    let mut g: GPoly<D::Elem> = p
        .terms()
        .zip(vals)
        .map(|((m, _), c)| (Mono::from_exps(m.exponents()), c))
        .collect();
    g.sort_by(|a, b| mcmp(order, &b.0, &a.0));
    if normalize {
        normalize_poly(dom, &mut g);
    }
    g
}

pub(crate) fn export_poly<D: Domain>(
    dom: &D,
    g: &GPoly<D::Elem>,
    field: CoefficientField,
    nvars: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(field, nvars);
    for (m, c) in g {
        p.add_term(m.to_monomial(), dom.export(c));
    }
    p
}

/// Exports with leading coefficient one.
pub(crate) fn export_monic<D: Domain>(
    dom: &D,
    g: &GPoly<D::Elem>,
    field: CoefficientField,
    nvars: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(field, nvars);
    let Some(lead) = g.first() else {
        return p;
    };
    let inv = field
        .inv(&dom.export(&lead.1))
        .expect("leading coefficient is nonzero");
    for (m, c) in g {
        p.add_term(m.to_monomial(), field.mul(&dom.export(c), &inv));
    }
    p
}

fn normalize_poly<D: Domain>(dom: &D, g: &mut GPoly<D::Elem>) {
    let mut cs: Vec<D::Elem> = g.iter().map(|t| t.1.clone()).collect();
    dom.normalize(&mut cs);
    for (t, c) in g.iter_mut().zip(cs) {
        t.1 = c;
    }
}

/// `u*p - v*m*g` for sorted `p` (from position `start`) and `g`.
fn sub_mul<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    u: &D::Elem,
    p: &[(Mono, D::Elem)],
    v: &D::Elem,
    m: &Mono,
    g: &[(Mono, D::Elem)],
) -> GPoly<D::Elem> {
    let u_one = *u == dom.one();
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<Mono> = g.first().map(|t| t.0.mul(m));
    while i < p.len() || j < g.len() {
        let ord = match (i < p.len(), &gm) {
            (true, Some(b)) => mcmp(order, &p[i].0, b),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                let c = if u_one { p[i].1.clone() } else { dom.mul(u, &p[i].1) };
                out.push((p[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                let c = dom.neg(&dom.mul(v, &g[j].1));
                out.push((gm.take().expect("pending term"), c));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let a = if u_one { p[i].1.clone() } else { dom.mul(u, &p[i].1) };
                let c = dom.sub(&a, &dom.mul(v, &g[j].1));
                if !dom.is_zero(&c) {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

fn find_reducer<'a, E>(basis: &'a [&'a GPoly<E>], m: &Mono) -> Option<&'a GPoly<E>> {
    let mut best: Option<&GPoly<E>> = None;
    for g in basis {
        if g[0].0.divides(m) && best.map_or(true, |b| g.len() < b.len()) {
            best = Some(g);
        }
    }
    best
}

/// Reduces `p` by `basis`. With `tail` every term is reduced, otherwise only
/// the leading one. With `primitive` intermediate results are made primitive
/// (integer domain); otherwise the result is the exact field remainder when
/// the basis is monic.
pub(crate) fn reduce<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    p: GPoly<D::Elem>,
    basis: &[&GPoly<D::Elem>],
    tail: bool,
    primitive: bool,
    max_terms: usize,
) -> Result<GPoly<D::Elem>> {
    let mut done: GPoly<D::Elem> = Vec::new();
    let mut cur = p;
    let mut start = 0;
    while start < cur.len() {
        let lead = &cur[start];
        match find_reducer(basis, &lead.0) {
            Some(g) => {
                let q = g[0].0.quotient(&lead.0);
                let (u, v) = dom.cancel(&g[0].1, &lead.1);
                let next = sub_mul(dom, order, &u, &cur[start..], &v, &q, g);
                if u != dom.one() {
                    for t in done.iter_mut() {
                        t.1 = dom.mul(&u, &t.1);
                    }
                }
                cur = next;
                start = 0;
                if primitive && !dom.is_unit(&u) {
                    let mut all: Vec<D::Elem> = done.iter().chain(cur.iter()).map(|t| t.1.clone()).collect();
                    dom.normalize(&mut all);
                    let (a, b) = all.split_at(done.len());
                    for (t, c) in done.iter_mut().zip(a) {
                        t.1 = c.clone();
                    }
                    for (t, c) in cur.iter_mut().zip(b) {
                        t.1 = c.clone();
                    }
                }
                if cur.len() + done.len() > max_terms {
                    return Err(AlgebraError::BudgetExceeded(format!(
                        "intermediate polynomial exceeded {max_terms} terms"
                    )));
                }
            }
            None => {
                if !tail {
                    done.extend(cur.drain(start..));
                    break;
                }
                done.push(cur[start].clone());
                start += 1;
            }
        }
    }
    if primitive {
        normalize_poly(dom, &mut done);
    }
    Ok(done)
}

fn spoly<D: Domain>(dom: &D, order: &MonomialOrder, f: &GPoly<D::Elem>, g: &GPoly<D::Elem>) -> GPoly<D::Elem> {
    let l = f[0].0.lcm(&g[0].0);
    let qf = f[0].0.quotient(&l);
    let qg = g[0].0.quotient(&l);
    // u*lc(f) = v*lc(g)
    let (u, v) = dom.cancel(&g[0].1, &f[0].1);
    let one = dom.one();
    let fm = sub_mul(dom, order, &one, &[], &dom.neg(&u), &qf, f);
    sub_mul(dom, order, &one, &fm, &v, &qg, g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    deg: u32,
}

/// Counters from one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

struct State<D: Domain> {
    budget: Budget,
    polys: Vec<GPoly<D::Elem>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: EngineStats,
}

impl<D: Domain> State<D> {
    fn active_refs(&self) -> Vec<&GPoly<D::Elem>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn lead(&self, i: usize) -> &Mono {
        &self.polys[i][0].0
    }

    fn add(&mut self, h: GPoly<D::Elem>) -> Result<()> {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(false);
        let live = self.active.iter().filter(|&&a| a).count();
        if live + 1 > self.budget.max_basis_size {
            return Err(AlgebraError::BudgetExceeded(format!(
                "basis exceeded {} elements",
                self.budget.max_basis_size
            )));
        }
        let lh = self.lead(hi).clone();

        let cands: Vec<(usize, Mono)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lead(g).lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = lh.coprime(self.lead(*g));
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.coprime(self.lead(*g)))
            .map(|(g, l)| Pair { i: g, j: hi, deg: l.deg })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                let l = self.lead(p.i).lcm(self.lead(p.j));
                !(lh.divides(&l) && self.lead(p.i).lcm(&lh) != l && self.lead(p.j).lcm(&lh) != l)
            })
            .collect();
        for g in 0..hi {
            if self.active[g] && lh.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
        self.pairs.extend(new_pairs);
        // pop from the back: largest key first in the vector
        self.pairs.sort_by(|a, b| (b.deg, b.i, b.j).cmp(&(a.deg, a.i, a.j)));
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, as primitive
/// (integer domain) or monic (field domain) polynomials sorted by increasing
/// leading monomial.
pub(crate) fn buchberger<D: Domain>(
    dom: &D,
    order: MonomialOrder,
    gens: Vec<GPoly<D::Elem>>,
    budget: Budget,
    primitive: bool,
) -> Result<(Vec<GPoly<D::Elem>>, EngineStats)> {
    let mut st: State<D> = State {
        budget,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: EngineStats::default(),
    };
    for g in gens {
        if g.is_empty() {
            continue;
        }
        let basis = st.active_refs();
        let h = reduce(dom, &order, g, &basis, true, primitive, budget.max_terms)?;
        if !h.is_empty() {
            let h = if primitive { h } else { monic(dom, h) };
            st.add(h)?;
        }
    }
    while let Some(pair) = st.pairs.pop() {
        st.stats.pairs_reduced += 1;
        if st.stats.pairs_reduced > budget.max_pair_reductions {
            return Err(AlgebraError::BudgetExceeded(format!(
                "more than {} pair reductions",
                budget.max_pair_reductions
            )));
        }
        let s = spoly(dom, &order, &st.polys[pair.i], &st.polys[pair.j]);
        let basis = st.active_refs();
        let h = reduce(dom, &order, s, &basis, true, primitive, budget.max_terms)?;
        if h.is_empty() {
            st.stats.zero_reductions += 1;
            continue;
        }
        let h = if primitive { h } else { monic(dom, h) };
        st.add(h)?;
    }

    // inter-reduce the minimal basis
    let minimal: Vec<GPoly<D::Elem>> = st
        .polys
        .iter()
        .zip(&st.active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&GPoly<D::Elem>> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        // no other leading monomial divides g's, so only the tail changes
        let mut r = reduce(dom, &order, g.clone(), &others, true, false, budget.max_terms)?;
        if primitive {
            normalize_poly(dom, &mut r);
        } else {
            r = monic(dom, r);
        }
        reduced.push(r);
    }
    reduced.sort_by(|a, b| mcmp(&order, &a[0].0, &b[0].0));
    st.stats.basis_size = reduced.len();
    Ok((reduced, st.stats))
}

fn monic<D: Domain>(dom: &D, mut g: GPoly<D::Elem>) -> GPoly<D::Elem> {
    normalize_poly(dom, &mut g);
    g
}

/// Checks that every S-polynomial of `basis` reduces to zero. Pairs with
/// coprime leading monomials are skipped since they always reduce to zero.
pub(crate) fn verify_basis<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    basis: &[GPoly<D::Elem>],
    primitive: bool,
    max_terms: usize,
) -> Result<bool> {
    let refs: Vec<&GPoly<D::Elem>> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i][0].0.coprime(&basis[j][0].0) {
                continue;
            }
            let s = spoly(dom, order, &basis[i], &basis[j]);
            if !reduce(dom, order, s, &refs, false, primitive, max_terms)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
