//! Exact linear algebra over the coefficient field.
//!
//! Sparse row reduction with combination tracking provides ranks, left
//! kernels and span membership; polynomial vectors are handled through their
//! coefficient rows. Ranks of polynomial matrices over the fraction field use
//! fraction-free (Bareiss) elimination.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{Domain, IntDomain, PrimeDomain};
use crate::error::{AlgebraError, Result};
use crate::polyring::{Coeff, CoefficientField, Monomial, Polynomial};

/// Sparse vector as `(index, coefficient)` pairs with increasing indices.
pub type SparseVec = Vec<(usize, Coeff)>;

type Row<E> = Vec<(usize, E)>;

/// `u*x - v*y` on sparse rows.
fn combine<D: Domain>(dom: &D, u: &D::Elem, x: &Row<D::Elem>, v: &D::Elem, y: &Row<D::Elem>) -> Row<D::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, dom.mul(u, &x[i].1)));
            i += 1;
        } else if take_y {
            out.push((y[j].0, dom.neg(&dom.mul(v, &y[j].1))));
            j += 1;
        } else {
            let val = dom.sub(&dom.mul(u, &x[i].1), &dom.mul(v, &y[j].1));
            if !dom.is_zero(&val) {
                out.push((x[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Reducer<D: Domain> {
    dom: D,
    pivots: HashMap<usize, (Row<D::Elem>, Row<D::Elem>)>,
    kernel: Vec<Row<D::Elem>>,
    track: bool,
}

impl<D: Domain> Reducer<D> {
    fn new(dom: D, track: bool) -> Self {
        Reducer {
            dom,
            pivots: HashMap::new(),
            kernel: Vec::new(),
            track,
        }
    }

    fn normalize(&self, row: &mut Row<D::Elem>, combo: &mut Row<D::Elem>) {
        let mut all: Vec<D::Elem> = row.iter().map(|e| e.1.clone()).collect();
        all.extend(combo.iter().map(|e| e.1.clone()));
        self.dom.normalize(&mut all);
        let (a, b) = all.split_at(row.len());
        for (e, v) in row.iter_mut().zip(a) {
            e.1 = v.clone();
        }
        for (e, v) in combo.iter_mut().zip(b) {
            e.1 = v.clone();
        }
    }

    /// Reduces `row` against the current pivots; returns `true` if it was
    /// independent.
    fn insert(&mut self, mut row: Row<D::Elem>, id: usize) -> bool {
        let mut combo: Row<D::Elem> = if self.track {
            vec![(id, self.dom.one())]
        } else {
            Vec::new()
        };
        self.normalize(&mut row, &mut combo);
        while let Some(&(lead, _)) = row.first() {
            let Some((prow, pcombo)) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, (row, combo));
                return true;
            };
            let (u, v) = self.dom.cancel(&prow[0].1, &row[0].1);
            let mut next = combine(&self.dom, &u, &row, &v, prow);
            let mut next_combo = if self.track {
                combine(&self.dom, &u, &combo, &v, pcombo)
            } else {
                Vec::new()
            };
            if !self.dom.is_unit(&u) || next.first().map_or(false, |e| !self.dom.is_unit(&e.1)) {
                self.normalize(&mut next, &mut next_combo);
            }
            row = next;
            combo = next_combo;
        }
        if self.track {
            let mut c = combo;
            let mut empty = Vec::new();
            self.normalize(&mut empty, &mut c);
            self.kernel.push(c);
        }
        false
    }
}

enum AnyReducer {
    Int(Reducer<IntDomain>, Vec<Coeff>),
    Prime(Reducer<PrimeDomain>),
}

/// Incremental row reducer over a coefficient field.
///
/// Rows are added one at a time; the reducer keeps an echelon basis of
/// their span and, when tracking is on, the relations among added rows.
pub struct RowReducer {
    field: CoefficientField,
    inner: AnyReducer,
    count: usize,
}

impl RowReducer {
    pub fn new(field: CoefficientField, track_relations: bool) -> Self {
        let inner = match field {
            CoefficientField::Rationals => AnyReducer::Int(Reducer::new(IntDomain, track_relations), Vec::new()),
            CoefficientField::PrimeField(p) => AnyReducer::Prime(Reducer::new(PrimeDomain { p }, track_relations)),
        };
        RowReducer { field, inner, count: 0 }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, row: &SparseVec) -> bool {
        let id = self.count;
        self.count += 1;
        let cs: Vec<Coeff> = row.iter().map(|e| e.1.clone()).collect();
        match &mut self.inner {
            AnyReducer::Int(r, scales) => {
                let vals = r.dom.import(&cs);
                // import multiplies by the lcm of denominators; remember it
                let scale = match row.first() {
                    Some((_, c)) => Coeff::from_integer(vals[0].clone()) / c,
                    None => Coeff::from_integer(1.into()),
                };
                scales.push(scale);
                let v: Row<_> = row.iter().map(|e| e.0).zip(vals).filter(|e| !e.1.is_zero()).collect();
                r.insert(v, id)
            }
            AnyReducer::Prime(r) => {
                let vals = r.dom.import(&cs);
                let v: Row<_> = row.iter().map(|e| e.0).zip(vals).filter(|e| e.1 != 0).collect();
                r.insert(v, id)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            AnyReducer::Int(r, _) => r.pivots.len(),
            AnyReducer::Prime(r) => r.pivots.len(),
        }
    }

    pub fn rows_added(&self) -> usize {
        self.count
    }

    /// Basis of the relations `Σ c_i row_i = 0` among the rows added so far,
    /// each as a sparse vector over row indices.
    pub fn relations(&self) -> Vec<SparseVec> {
        match &self.inner {
            AnyReducer::Int(r, scales) => r
                .kernel
                .iter()
                .map(|k| k.iter().map(|(i, c)| (*i, r.dom.export(c) * &scales[*i])).collect())
                .collect(),
            AnyReducer::Prime(r) => r
                .kernel
                .iter()
                .map(|k| k.iter().map(|(i, c)| (*i, r.dom.export(c))).collect())
                .collect(),
        }
    }

    /// Whether `row` lies in the span of the rows added so far. Does not
    /// modify the reducer.
    pub fn contains(&self, row: &SparseVec) -> bool {
        let cs: Vec<Coeff> = row.iter().map(|e| e.1.clone()).collect();
        fn run<D: Domain>(r: &Reducer<D>, idx: Vec<usize>, vals: Vec<D::Elem>) -> bool {
            let mut row: Row<D::Elem> = idx.into_iter().zip(vals).filter(|e| !r.dom.is_zero(&e.1)).collect();
            let mut empty = Vec::new();
            r.normalize(&mut row, &mut empty);
            while let Some(&(lead, _)) = row.first() {
                let Some((prow, _)) = r.pivots.get(&lead) else {
                    return false;
                };
                let (u, v) = r.dom.cancel(&prow[0].1, &row[0].1);
                row = combine(&r.dom, &u, &row, &v, prow);
                r.normalize(&mut row, &mut empty);
            }
            true
        }
        let idx: Vec<usize> = row.iter().map(|e| e.0).collect();
        match &self.inner {
            AnyReducer::Int(r, _) => run(r, idx, r.dom.import(&cs)),
            AnyReducer::Prime(r) => run(r, idx, r.dom.import(&cs)),
        }
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: CoefficientField, rows: &[SparseVec]) -> usize {
    let mut r = RowReducer::new(field, false);
    for row in rows {
        r.push(row);
    }
    r.rank()
}

/// Basis of `{c : Σ c_i rows_i = 0}`.
pub fn left_kernel(field: CoefficientField, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut r = RowReducer::new(field, true);
    for row in rows {
        r.push(row);
    }
    r.relations()
}

/// Assigns column indices to monomials and converts polynomials to rows.
#[derive(Default)]
pub struct MonomialIndex {
    index: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        MonomialIndex::default()
    }

    pub fn row(&mut self, p: &Polynomial) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .map(|(m, c)| {
                let next = self.index.len();
                (*self.index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Row for `p` if all its monomials are already indexed.
    pub fn existing_row(&self, p: &Polynomial) -> Option<SparseVec> {
        let mut v = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            v.push((*self.index.get(m)?, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// Dimension of the linear span of `polys`.
pub fn polynomial_span_rank(polys: &[Polynomial]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let mut idx = MonomialIndex::new();
    let rows: Vec<SparseVec> = polys.iter().map(|p| idx.row(p)).collect();
    rank(first.field(), &rows)
}

/// Basis of linear relations among `polys`, as dense coefficient vectors.
pub fn polynomial_relations(polys: &[Polynomial]) -> Vec<Vec<Coeff>> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let mut idx = MonomialIndex::new();
    let rows: Vec<SparseVec> = polys.iter().map(|p| idx.row(p)).collect();
    left_kernel(first.field(), &rows)
        .into_iter()
        .map(|k| {
            let mut dense = vec![Coeff::zero(); polys.len()];
            for (i, c) in k {
                dense[i] = c;
            }
            dense
        })
        .collect()
}

/// Coefficients `c` with `target = Σ c_i polys_i`, if `target` lies in the
/// span. The solution is unique when `polys` are independent.
pub fn express_in_span(polys: &[Polynomial], target: &Polynomial) -> Option<Vec<Coeff>> {
    let field = target.field();
    if target.is_zero() {
        return Some(vec![Coeff::zero(); polys.len()]);
    }
    let mut all = polys.to_vec();
    all.push(target.clone());
    for rel in polynomial_relations(&all) {
        let last = rel[polys.len()].clone();
        if !last.is_zero() {
            let inv = field.inv(&last).ok()?;
            return Some(
                rel[..polys.len()]
                    .iter()
                    .map(|c| field.neg(&field.mul(c, &inv)))
                    .collect(),
            );
        }
    }
    None
}

/// Total degree and weighted degree (`x_i` has weight `i`) of a polynomial
/// homogeneous for both gradings.
pub fn bidegree(p: &Polynomial) -> Option<(u32, u64)> {
    let mut key = None;
    for (m, _) in p.terms() {
        let w: u64 = m.exponents().iter().enumerate().map(|(i, &e)| (i as u64 + 1) * e as u64).sum();
        let k = (m.degree(), w);
        match key {
            None => key = Some(k),
            Some(prev) if prev != k => return None,
            _ => {}
        }
    }
    key
}

/// Index of the first target outside the linear span of `spanning`, or
/// `None` if all targets lie in it. When every polynomial is bihomogeneous
/// the problem splits into independent blocks by bidegree.
pub fn first_outside_span(spanning: &[Polynomial], targets: &[Polynomial]) -> Option<usize> {
    let field = match spanning.first().or(targets.first()) {
        Some(p) => p.field(),
        None => return None,
    };
    let keys_s: Vec<Option<(u32, u64)>> = spanning.iter().map(bidegree).collect();
    let keys_t: Vec<Option<(u32, u64)>> = targets.iter().map(bidegree).collect();
    let graded = keys_s.iter().chain(&keys_t).all(|k| k.is_some())
        || spanning.iter().chain(targets).all(|p| p.is_zero());
    let group = |k: &Option<(u32, u64)>| if graded { *k } else { None };
    let mut blocks: BTreeMap<Option<(u32, u64)>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, k) in keys_s.iter().enumerate() {
        if !spanning[i].is_zero() {
            blocks.entry(group(k)).or_default().0.push(i);
        }
    }
    for (i, k) in keys_t.iter().enumerate() {
        if !targets[i].is_zero() {
            blocks.entry(group(k)).or_default().1.push(i);
        }
    }
    let mut first_bad: Option<usize> = None;
    for (sp, tg) in blocks.values() {
        if tg.is_empty() {
            continue;
        }
        let mut index = MonomialIndex::new();
        let mut reducer = RowReducer::new(field, false);
        for &i in sp {
            reducer.push(&index.row(&spanning[i]));
        }
        for &t in tg {
            let inside = match index.existing_row(&targets[t]) {
                Some(row) => reducer.contains(&row),
                None => false,
            };
            if !inside {
                first_bad = Some(first_bad.map_or(t, |b| b.min(t)));
                break;
            }
        }
    }
    first_bad
}

fn numeric_rank(matrix: &[Vec<Polynomial>], point: &[Coeff], field: CoefficientField) -> Result<usize> {
    let mut rows = Vec::with_capacity(matrix.len());
    for row in matrix {
        let mut v = SparseVec::new();
        for (j, p) in row.iter().enumerate() {
            let x = p.evaluate(point)?;
            if !x.is_zero() {
                v.push((j, x));
            }
        }
        rows.push(v);
    }
    Ok(rank(field, &rows))
}

/// Rank over the fraction field of a matrix of polynomials.
///
/// A random evaluation gives a certified lower bound; when it is not already
/// maximal, the exact rank comes from fraction-free elimination.
pub fn fraction_field_rank(matrix: &[Vec<Polynomial>], seed: u64) -> Result<usize> {
    let nrows = matrix.len();
    let ncols = matrix.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 {
        return Ok(0);
    }
    if matrix.iter().any(|r| r.len() != ncols) {
        return Err(AlgebraError::InvalidParameters("ragged matrix".into()));
    }
    let sample = &matrix[0][0];
    let field = sample.field();
    let nvars = sample.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = match field {
        CoefficientField::Rationals => 1_000_000i64,
        CoefficientField::PrimeField(p) => p.min(1_000_000) as i64,
    };
    let point: Vec<Coeff> = (0..nvars)
        .map(|_| field.from_int(rng.random_range(0..bound)))
        .collect();
    let lower = numeric_rank(matrix, &point, field)?;
    if lower == nrows.min(ncols) {
        return Ok(lower);
    }
    bareiss_rank(matrix)
}

/// Fraction-free elimination with exact division by the previous pivot.
pub fn bareiss_rank(matrix: &[Vec<Polynomial>]) -> Result<usize> {
    let mut a: Vec<Vec<Polynomial>> = matrix.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 {
        return Ok(0);
    }
    let field = a[0][0].field();
    let nvars = a[0][0].nvars();
    let mut prev = Polynomial::one(field, nvars);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // prefer the sparsest available pivot
        let pivot = (rank..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].len());
        let Some(p) = pivot else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &(&a[rank][col] * &a[i][j]) - &(&a[i][col] * &a[rank][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][col] = Polynomial::zero(field, nvars);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    const Q: CoefficientField = CoefficientField::Rationals;

    #[test]
    fn kernel_of_dependent_rows() {
        let rows = vec![
            vec![(0, int(1)), (1, int(2))],
            vec![(0, rat(1, 2)), (1, int(1))],
            vec![(1, int(3))],
        ];
        assert_eq!(rank(Q, &rows), 2);
        let k = left_kernel(Q, &rows);
        assert_eq!(k.len(), 1);
        // row0 - 2*row1 = 0
        let v: HashMap<usize, Coeff> = k[0].iter().cloned().collect();
        assert_eq!(&v[&0] * int(-2), v[&1]);
    }

    #[test]
    fn prime_field_rank_drops() {
        let rows = vec![vec![(0, int(1)), (1, int(1))], vec![(0, int(1)), (1, int(4))]];
        assert_eq!(rank(Q, &rows), 2);
        assert_eq!(rank(CoefficientField::PrimeField(3), &rows), 1);
    }

    #[test]
    fn span_membership() {
        let p = |s: &str| Polynomial::parse(s, Q, 3).unwrap();
        let polys = vec![p("x1+x2"), p("x2-x3")];
        let c = express_in_span(&polys, &p("x1+3*x2-2*x3")).unwrap();
        assert_eq!(c, vec![int(1), int(2)]);
        assert!(express_in_span(&polys, &p("x1")).is_none());
    }

    #[test]
    fn bareiss_matches_determinant_rank() {
        let p = |s: &str| Polynomial::parse(s, Q, 3).unwrap();
        let m = vec![vec![p("x1"), p("x2")], vec![p("x1*x3"), p("x2*x3")]];
        assert_eq!(bareiss_rank(&m).unwrap(), 1);
        let m = vec![vec![p("x1"), p("x2")], vec![p("x2"), p("x3")]];
        assert_eq!(bareiss_rank(&m).unwrap(), 2);
    }
}
