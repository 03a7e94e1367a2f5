//! Matrices of polynomials: Hankel constructors and their coordinate-section
//! degenerations, exact determinants, cofactors and minors.
//!
//! Indices in the public API are 1-based, matching the usual `(i, j)` entry
//! notation.

use std::collections::HashMap;

use serde_json::Value;

use crate::error::{AlgebraError, Result};
use crate::groebner::{Engine, Ideal};
use crate::polyring::{CoefficientField, Polynomial, RingMap};

/// Row-major matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    field: CoefficientField,
    nvars: usize,
    entries: Vec<Polynomial>,
}

/// Shape of a Hankel matrix `H_{s,t}[r]`: `s` rows, `t` columns and the last
/// `r` anti-diagonals set to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HankelSpec {
    pub rows: usize,
    pub cols: usize,
    pub zeros: usize,
}

impl HankelSpec {
    pub fn new(rows: usize, cols: usize, zeros: usize) -> Self {
        HankelSpec { rows, cols, zeros }
    }

    /// The square degeneration `H_m[r]`.
    pub fn square(m: usize, r: usize) -> Self {
        HankelSpec::new(m, m, r)
    }

    /// Number of variables of the ground ring, `s + t - 1 - r`.
    pub fn nvars(&self) -> usize {
        (self.rows + self.cols).saturating_sub(1 + self.zeros)
    }
}

/// A minor with its 1-based row and column index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

impl SymMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::InvalidParameters("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::InvalidParameters(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let field = entries[0].field();
        let nvars = entries[0].nvars();
        for e in &entries {
            if e.field() != field {
                return Err(AlgebraError::FieldMismatch(e.field(), field));
            }
            if e.nvars() != nvars {
                return Err(AlgebraError::ArityMismatch(e.nvars(), nvars));
            }
        }
        Ok(SymMatrix {
            rows,
            cols,
            field,
            nvars,
            entries,
        })
    }

    /// Builds a matrix from a closure over 1-based indices.
    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Polynomial,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        SymMatrix::new(rows, cols, entries)
    }

    pub fn identity(field: CoefficientField, nvars: usize, n: usize) -> Self {
        SymMatrix::scalar(&Polynomial::one(field, nvars), n)
    }

    /// `p` times the `n×n` identity.
    pub fn scalar(p: &Polynomial, n: usize) -> Self {
        let zero = Polynomial::zero(p.field(), p.nvars());
        SymMatrix::from_fn(n, n, |i, j| if i == j { p.clone() } else { zero.clone() })
            .expect("valid shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Entry `(i, j)`, 1-based; panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&Polynomial> {
        self.check_index(i, j)?;
        Ok(self.get(i, j))
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > self.rows || j == 0 || j > self.cols {
            return Err(AlgebraError::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (1..=self.rows).all(|i| (1..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> SymMatrix {
        SymMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()).expect("valid shape")
    }

    /// Submatrix on the given 1-based rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<SymMatrix> {
        for &i in rows {
            for &j in cols {
                self.check_index(i, j)?;
            }
        }
        SymMatrix::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a - 1], cols[b - 1]).clone())
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn delete(&self, i: usize, j: usize) -> Result<SymMatrix> {
        self.check_index(i, j)?;
        let rows: Vec<usize> = (1..=self.rows).filter(|&a| a != i).collect();
        let cols: Vec<usize> = (1..=self.cols).filter(|&b| b != j).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn mul(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::InvalidParameters(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, other.nvars));
        }
        SymMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(self.field, self.nvars);
            for k in 1..=self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }

    /// Applies a ring map to every entry.
    pub fn map_entries(&self, map: &RingMap) -> Result<SymMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| map.apply(e))
            .collect::<Result<Vec<_>>>()?;
        SymMatrix::new(self.rows, self.cols, entries)
    }

    /// Applies an arbitrary function to every entry.
    pub fn map_with<F>(&self, f: F) -> Result<SymMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        SymMatrix::new(self.rows, self.cols, entries)
    }

    /// JSON array of rows, each an array of polynomial strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (1..=self.rows)
                .map(|i| {
                    Value::Array(
                        (1..=self.cols)
                            .map(|j| Value::String(self.get(i, j).to_text()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, field: CoefficientField, nvars: usize) -> Result<SymMatrix> {
        let bad = || AlgebraError::InvalidParameters("matrix JSON must be an array of string arrays".into());
        let rows = v.as_array().ok_or_else(bad)?;
        let mut entries = Vec::new();
        let mut cols = None;
        for row in rows {
            let row = row.as_array().ok_or_else(bad)?;
            if *cols.get_or_insert(row.len()) != row.len() {
                return Err(bad());
            }
            for e in row {
                entries.push(Polynomial::parse(e.as_str().ok_or_else(bad)?, field, nvars)?);
            }
        }
        SymMatrix::new(rows.len(), cols.unwrap_or(0), entries)
    }
}

/// The Hankel matrix `H_{s,t}[r]` with entry `x_{i+j-1}` when
/// `i + j - 1 <= s + t - 1 - r` and zero otherwise.
///
/// Any `r <= s + t - 2` is accepted, so the ground ring keeps at least one
/// variable; matrices with whole zero columns arise when `r >= t`.
pub fn hankel(spec: HankelSpec, field: CoefficientField) -> Result<SymMatrix> {
    let HankelSpec { rows, cols, zeros } = spec;
    if rows == 0 || cols == 0 {
        return Err(AlgebraError::InvalidParameters("Hankel matrix needs s, t >= 1".into()));
    }
    if zeros + 2 > rows + cols {
        return Err(AlgebraError::InvalidParameters(format!(
            "r = {zeros} leaves no variables in H_{{{rows},{cols}}}"
        )));
    }
    let n = spec.nvars();
    SymMatrix::from_fn(rows, cols, |i, j| {
        let k = i + j - 1;
        if k <= n {
            Polynomial::var(field, n, k).expect("index in range")
        } else {
            Polynomial::zero(field, n)
        }
    })
}

/// The square degeneration `H_m[r]`, requiring `r <= m - 1` so the
/// anti-diagonal product survives.
pub fn square_hankel(m: usize, r: usize, field: CoefficientField) -> Result<SymMatrix> {
    if m == 0 || r + 1 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "H_m[r] needs m >= 1 and r <= m - 1 (got m = {m}, r = {r})"
        )));
    }
    hankel(HankelSpec::square(m, r), field)
}

/// Endomorphism of `k[x_1..x_nvars]` killing the last `r` variables.
pub fn coordinate_section(nvars: usize, r: usize, field: CoefficientField) -> Result<RingMap> {
    if r > nvars {
        return Err(AlgebraError::InvalidParameters(format!("cannot kill {r} of {nvars} variables")));
    }
    let killed: Vec<usize> = (nvars - r + 1..=nvars).collect();
    RingMap::annihilating(field, nvars, &killed)
}

/// The endomorphism of `k[x_1..x_{2m-1}]` sending the variables absent from
/// `H_m[r]` (indices above `2m - 1 - r`) to zero.
pub fn phi_endomorphism(m: usize, r: usize, field: CoefficientField) -> Result<RingMap> {
    if m < 2 || r + 2 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "need 0 <= r <= m - 2 (got m = {m}, r = {r})"
        )));
    }
    coordinate_section(2 * m - 1, r, field)
}

/// Checks that the degeneration commutes with taking minors: applying the
/// coordinate section to each `t`-minor of `H_{s,t'}` gives the matching
/// minor of `H_{s,t'}[r]`.
pub fn degeneration_commutes_with_minors(spec: HankelSpec, t: usize, field: CoefficientField) -> Result<bool> {
    let generic = hankel(HankelSpec::new(spec.rows, spec.cols, 0), field)?;
    let degen = hankel(spec, field)?;
    let map = coordinate_section(generic.nvars(), spec.zeros, field)?;
    let lhs = minors(&generic, t)?;
    let rhs = minors(&degen, t)?;
    for (a, b) in lhs.iter().zip(&rhs) {
        let image = map.apply(&a.value)?;
        let restricted = image
            .restrict(0, degen.nvars())
            .ok_or_else(|| AlgebraError::Inconsistent("image uses killed variables".into()))?;
        if restricted != b.value {
            return Ok(false);
        }
    }
    Ok(lhs.len() == rhs.len())
}

fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    lex_subsets(n, k)
        .into_iter()
        .map(|s| s.into_iter().map(|i| i + 1).collect())
        .collect()
}

/// Determinants of every `k×k` submatrix on the first `k` of `rows` and any
/// `k` columns, for `k = 1..=depth`, by expansion along the newest row.
/// The table at the end maps column bitmasks of size `depth` to minors.
fn column_subset_table(m: &SymMatrix, rows: &[usize], depth: usize) -> HashMap<u64, Polynomial> {
    let zero = Polynomial::zero(m.field, m.nvars);
    let mut prev: HashMap<u64, Polynomial> = HashMap::new();
    prev.insert(0, Polynomial::one(m.field, m.nvars));
    for k in 1..=depth {
        let row = rows[k - 1];
        let mut next: HashMap<u64, Polynomial> = HashMap::new();
        for (&mask, sub) in &prev {
            if sub.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                let bit = 1u64 << j;
                if mask & bit != 0 {
                    continue;
                }
                let a = m.get(row, j + 1);
                if a.is_zero() {
                    continue;
                }
                // position of column j inside mask|bit, counted from 1
                let pos = (mask & (bit - 1)).count_ones() as usize + 1;
                let term = a * sub;
                let term = if (k + pos) % 2 == 1 { -&term } else { term };
                *next.entry(mask | bit).or_insert_with(|| zero.clone()) += &term;
            }
        }
        prev = next;
    }
    prev
}

/// Exact determinant by memoized expansion over column subsets.
pub fn determinant(m: &SymMatrix) -> Result<Polynomial> {
    m.check_square()?;
    if m.cols > 63 {
        return Err(AlgebraError::InvalidParameters("matrix too large".into()));
    }
    let rows: Vec<usize> = (1..=m.rows).collect();
    let full = (1u64 << m.cols) - 1;
    let table = column_subset_table(m, &rows, m.rows);
    Ok(table
        .get(&full)
        .cloned()
        .unwrap_or_else(|| Polynomial::zero(m.field, m.nvars)))
}

/// Determinant as a signed sum over all permutations. Exponential; meant as a
/// cross-check for small matrices.
pub fn determinant_permutation_sum(m: &SymMatrix) -> Result<Polynomial> {
    m.check_square()?;
    let n = m.rows;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Polynomial::zero(m.field, m.nvars);
    // Heap's algorithm; each swap flips the sign
    let mut c = vec![0usize; n];
    let mut sign_positive = true;
    let add = |perm: &[usize], positive: bool, acc: &mut Polynomial| {
        let mut t = Polynomial::one(m.field, m.nvars);
        for (i, &j) in perm.iter().enumerate() {
            t = &t * m.get(i + 1, j + 1);
            if t.is_zero() {
                return;
            }
        }
        if positive {
            *acc += &t;
        } else {
            *acc -= &t;
        }
    };
    add(&perm, sign_positive, &mut acc);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_positive = !sign_positive;
            add(&perm, sign_positive, &mut acc);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(acc)
}

/// Determinant of the submatrix on the given 1-based rows and columns.
pub fn minor(m: &SymMatrix, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    determinant(&m.submatrix(rows, cols)?)
}

/// `(-1)^{i+j}` times the minor obtained by deleting row `i` and column `j`.
pub fn cofactor(m: &SymMatrix, i: usize, j: usize) -> Result<Polynomial> {
    m.check_square()?;
    m.check_index(i, j)?;
    if m.rows == 1 {
        return Ok(Polynomial::one(m.field, m.nvars));
    }
    let d = determinant(&m.delete(i, j)?)?;
    Ok(if (i + j) % 2 == 1 { -d } else { d })
}

/// The signed cofactor of the `(j, i)` entry, written `Δ_{i,j}`.
pub fn delta(m: &SymMatrix, i: usize, j: usize) -> Result<Polynomial> {
    cofactor(m, j, i)
}

/// Adjugate: entry `(i, j)` is the cofactor of `(j, i)`, so that
/// `adj(M)·M = det(M)·I`.
pub fn adjugate(m: &SymMatrix) -> Result<SymMatrix> {
    m.check_square()?;
    let mut cof = vec![vec![None; m.cols]; m.rows];
    for (i, row) in cof.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = Some(cofactor(m, i + 1, j + 1)?);
        }
    }
    SymMatrix::from_fn(m.rows, m.cols, |i, j| cof[j - 1][i - 1].take().expect("filled once"))
}

/// All `t`-minors, ordered lexicographically by (row set, column set).
pub fn minors(m: &SymMatrix, t: usize) -> Result<Vec<Minor>> {
    if t == 0 || t > m.rows.min(m.cols) {
        return Err(AlgebraError::MinorSizeOutOfRange {
            t,
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.cols > 63 {
        return Err(AlgebraError::InvalidParameters("matrix too large".into()));
    }
    let col_sets = combinations(m.cols, t);
    let mut out = Vec::with_capacity(col_sets.len() * lex_subsets(m.rows, t).len());
    for rows in combinations(m.rows, t) {
        let table = column_subset_table(m, &rows, t);
        for cols in &col_sets {
            let mask = cols.iter().fold(0u64, |acc, &c| acc | (1 << (c - 1)));
            let value = table
                .get(&mask)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(m.field, m.nvars));
            out.push(Minor {
                rows: rows.clone(),
                cols: cols.clone(),
                value,
            });
        }
    }
    Ok(out)
}

/// Nonzero `t`-minors as an ideal, in enumeration order.
pub fn minor_ideal(m: &SymMatrix, t: usize) -> Result<Ideal> {
    let gens = minors(m, t)?.into_iter().map(|x| x.value).collect();
    Ideal::new(m.field, m.nvars, gens)
}

/// Dimension of the linear span of the `t`-minors over the ground field.
pub fn minor_span_dimension(m: &SymMatrix, t: usize) -> Result<usize> {
    let polys: Vec<Polynomial> = minors(m, t)?.into_iter().map(|x| x.value).collect();
    Ok(crate::linalg::polynomial_span_rank(&polys))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MinorCodimReport {
    pub m: usize,
    pub t: usize,
    pub r: usize,
    pub codim: i64,
    /// `min{2(m-t)+1, 2m-t-r}`.
    pub expected: i64,
    pub holds: bool,
}

/// Codimension of `I_t(H_m[r])` against `min{2(m-t)+1, 2m-t-r}`.
pub fn minor_ideal_codim(m: usize, t: usize, r: usize, engine: &Engine) -> Result<MinorCodimReport> {
    if t == 0 || t > m || r + 2 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "need 1 <= t <= m and 0 <= r <= m - 2 (got m = {m}, t = {t}, r = {r})"
        )));
    }
    let h = square_hankel(m, r, CoefficientField::Rationals)?;
    let codim = engine.codimension(&minor_ideal(&h, t)?)?;
    let (m, t, r) = (m as i64, t as i64, r as i64);
    let expected = (2 * (m - t) + 1).min(2 * m - t - r);
    Ok(MinorCodimReport {
        m: m as usize,
        t: t as usize,
        r: r as usize,
        codim,
        expected,
        holds: codim == expected,
    })
}

/// Outcome of comparing `I_t(H_{s,n-s+1}[r])` with `I_t(H_{t,n-t+1}[r])`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GrusonPeskineReport {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub r: usize,
    pub equal: bool,
    pub left_generators: usize,
    pub right_generators: usize,
}

/// Compares the ideal of `t`-minors of the `s`-rowed Hankel matrix on
/// `x_1..x_n` (last `r` variables killed) with the maximal-minor ideal of the
/// `t`-rowed one on the same variables.
pub fn gruson_peskine_check(
    s: usize,
    t: usize,
    n: usize,
    r: usize,
    field: CoefficientField,
    engine: &Engine,
) -> Result<GrusonPeskineReport> {
    if t == 0 || t > s || s > n || r + 1 > n || t > n + 1 - s {
        return Err(AlgebraError::InvalidParameters(format!(
            "need 1 <= t <= s, t <= n - s + 1 and r < n (got s = {s}, t = {t}, n = {n}, r = {r})"
        )));
    }
    let big = hankel(HankelSpec::new(s, n - s + 1, r), field)?;
    let small = hankel(HankelSpec::new(t, n - t + 1, r), field)?;
    let left = minor_ideal(&big, t)?;
    let right = minor_ideal(&small, t)?;
    let equal = engine.ideal_equal(&left, &right)?;
    Ok(GrusonPeskineReport {
        s,
        t,
        n,
        r,
        equal,
        left_generators: left.generators().len(),
        right_generators: right.generators().len(),
    })
}

/// Row blocks `U` (top `m-j` rows) and `D` (last `j` rows) of `H_m[r]`, and
/// the matching blocks of its adjugate `[[A, B], [B', C]]`.
#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub m: usize,
    pub r: usize,
    pub j: usize,
    pub f: Polynomial,
    pub u: SymMatrix,
    pub d: SymMatrix,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub b_prime: SymMatrix,
    pub c: SymMatrix,
}

pub fn block_partition(m: usize, r: usize, j: usize, field: CoefficientField) -> Result<BlockPartition> {
    if m < 3 || j == 0 || j + 2 > m || r + 2 > m {
        return Err(AlgebraError::InvalidParameters(format!(
            "need 1 <= j <= m - 2 and r <= m - 2 (got m = {m}, r = {r}, j = {j})"
        )));
    }
    let h = square_hankel(m, r, field)?;
    let adj = adjugate(&h)?;
    let top: Vec<usize> = (1..=m - j).collect();
    let bottom: Vec<usize> = (m - j + 1..=m).collect();
    let all: Vec<usize> = (1..=m).collect();
    Ok(BlockPartition {
        m,
        r,
        j,
        f: determinant(&h)?,
        u: h.submatrix(&top, &all)?,
        d: h.submatrix(&bottom, &all)?,
        a: adj.submatrix(&top, &top)?,
        b: adj.submatrix(&top, &bottom)?,
        b_prime: adj.submatrix(&bottom, &top)?,
        c: adj.submatrix(&bottom, &bottom)?,
    })
}

fn add_matrices(x: &SymMatrix, y: &SymMatrix) -> Result<SymMatrix> {
    if x.rows != y.rows || x.cols != y.cols {
        return Err(AlgebraError::InvalidParameters("shape mismatch".into()));
    }
    let entries = x
        .entries
        .iter()
        .zip(&y.entries)
        .map(|(a, b)| a.try_add(b))
        .collect::<Result<Vec<_>>>()?;
    SymMatrix::new(x.rows, x.cols, entries)
}

impl BlockPartition {
    /// `A·U + B·D` and `B'·U + C·D`.
    pub fn products(&self) -> Result<(SymMatrix, SymMatrix)> {
        let top = add_matrices(&self.a.mul(&self.u)?, &self.b.mul(&self.d)?)?;
        let bottom = add_matrices(&self.b_prime.mul(&self.u)?, &self.c.mul(&self.d)?)?;
        Ok((top, bottom))
    }

    /// Checks the blockwise identity `adj·H = f·I` and `B' = Bᵗ`.
    pub fn verify_identity(&self) -> Result<bool> {
        let (top, bottom) = self.products()?;
        let zero = Polynomial::zero(self.f.field(), self.f.nvars());
        let k = self.m - self.j;
        let top_ok = (1..=k).all(|i| {
            (1..=self.m).all(|c| top.get(i, c) == if c == i { &self.f } else { &zero })
        });
        let bottom_ok = (1..=self.j).all(|i| {
            (1..=self.m).all(|c| bottom.get(i, c) == if c == k + i { &self.f } else { &zero })
        });
        Ok(top_ok && bottom_ok && self.b_prime == self.b.transpose())
    }

    /// Whether every entry of `A·U + B·D` lies in the ideal `J`.
    pub fn top_products_in(&self, j_ideal: &Ideal, engine: &Engine) -> Result<bool> {
        let (top, _) = self.products()?;
        let gb = engine.groebner_basis(j_ideal, crate::polyring::MonomialOrder::DegRevLex)?;
        Ok(top.entries().iter().all(|e| gb.contains(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientField = CoefficientField::Rationals;

    #[test]
    fn hankel_shapes() {
        let h = square_hankel(3, 1, Q).unwrap();
        assert_eq!(h.nvars(), 4);
        assert!(h.get(3, 3).is_zero());
        assert_eq!(h.get(2, 3).to_text(), "x4");
        assert!(square_hankel(3, 3, Q).is_err());
        let wide = hankel(HankelSpec::new(2, 4, 0), Q).unwrap();
        assert_eq!(wide.get(2, 4).to_text(), "x5");
    }

    #[test]
    fn lex_subset_order() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn one_by_one_adjugate() {
        let h = square_hankel(1, 0, Q).unwrap();
        assert_eq!(adjugate(&h).unwrap().get(1, 1).to_text(), "1");
    }
}
