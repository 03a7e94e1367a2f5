use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::field::{Coeff, CoefficientField};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{AlgebraError, Result};

/// Sparse multivariate polynomial over a [`CoefficientField`].
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored. Two polynomials are equal iff field, arity and terms agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: CoefficientField,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

/// A single term `coeff * monomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub monomial: Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic.
pub fn arith(p: &Polynomial, q: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Sub => p.try_sub(q),
        ArithOp::Mul => p.try_mul(q),
    }
}

impl Polynomial {
    pub fn zero(field: CoefficientField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: CoefficientField, nvars: usize, c: Coeff) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: CoefficientField, nvars: usize) -> Self {
        Polynomial::constant(field, nvars, Coeff::one())
    }

    pub fn from_int(field: CoefficientField, nvars: usize, c: i64) -> Self {
        Polynomial::constant(field, nvars, field.from_int(c))
    }

    /// The variable `x_i`, 1-based.
    pub fn var(field: CoefficientField, nvars: usize, i: usize) -> Result<Self> {
        check_index(i, nvars)?;
        Ok(Polynomial::monomial(field, Monomial::var_power(nvars, i - 1, 1), Coeff::one()))
    }

    pub fn monomial(field: CoefficientField, m: Monomial, c: Coeff) -> Self {
        let mut p = Polynomial::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; coefficients
    /// are mapped into the field and like terms combined.
    pub fn from_terms<I>(field: CoefficientField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coeff, Vec<u16>)>,
    {
        let mut p = Polynomial::zero(field, nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(AlgebraError::ArityMismatch(e.len(), nvars));
            }
            p.add_term(Monomial::from_exponents(&e), field.element(c)?);
        }
        Ok(p)
    }

    #[inline]
    pub fn field(&self) -> CoefficientField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// 0-based indices of variables that occur in some term.
    pub fn support_variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Terms sorted decreasingly under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.clone(),
                monomial: m.clone(),
            })
            .collect();
        v.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        v
    }

    /// The maximal term under `order`.
    pub fn initial_term(&self, order: MonomialOrder) -> Result<Term> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| Term {
                coeff: c.clone(),
                monomial: m.clone(),
            })
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        // iterate the shorter operand in the outer loop
        let (a, b) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let c = self.field.element(c.clone()).expect("scalar must lie in the field");
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, &c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Polynomial {
        self.scale(&self.field.from_int(n))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x_i` (1-based). Over a prime
    /// field the exponent is reduced modulo the characteristic.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        check_index(i, self.nvars)?;
        let idx = i - 1;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps_mut()[idx] = e - 1;
            out.add_term(dm, self.field.mul_int(c, e as u64));
        }
        Ok(out)
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch(point.len(), self.nvars));
        }
        let pt: Vec<Coeff> = point
            .iter()
            .map(|c| self.field.element(c.clone()))
            .collect::<Result<_>>()?;
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in pt.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v = self.field.mul(&v, x);
                }
            }
            acc = self.field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Coefficient of `x_i^d`, zero if absent or if the index is invalid.
    pub fn pure_term_coefficient(&self, i: usize, d: u16) -> Coeff {
        if i == 0 || i > self.nvars {
            return Coeff::zero();
        }
        self.coefficient(&Monomial::var_power(self.nvars, i - 1, d))
    }

    /// Moves the polynomial into a ring with `new_nvars` variables, placing
    /// old variable `x_j` at position `offset + j`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= new_nvars);
        let mut out = Polynomial::zero(self.field, new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; new_nvars];
            e[offset..offset + self.nvars].copy_from_slice(m.exponents());
            out.terms.insert(Monomial::from_exponents(&e), c.clone());
        }
        out
    }

    /// Inverse of [`embed`](Self::embed): keeps variables
    /// `offset..offset+nvars`, failing if any other variable occurs.
    pub fn restrict(&self, offset: usize, nvars: usize) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e[..offset].iter().any(|&x| x != 0) || e[offset + nvars..].iter().any(|&x| x != 0) {
                return None;
            }
            out.terms
                .insert(Monomial::from_exponents(&e[offset..offset + nvars]), c.clone());
        }
        Some(out)
    }

    /// Same polynomial read over another field (coefficients re-mapped).
    pub fn change_field(&self, field: CoefficientField) -> Result<Polynomial> {
        let mut out = Polynomial::zero(field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), field.element(c.clone())?);
        }
        Ok(out)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn make_monic(&self, order: MonomialOrder) -> Polynomial {
        match self.initial_term(order) {
            Err(_) => self.clone(),
            Ok(t) => self.scale(&self.field.inv(&t.coeff).expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / divisor`, failing when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(divisor)?;
        let order = MonomialOrder::DegRevLex;
        let lt = divisor.initial_term(order).map_err(|_| AlgebraError::DivisionByZero)?;
        let inv = self.field.inv(&lt.coeff)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.field, self.nvars);
        while let Ok(t) = rem.initial_term(order) {
            let qm = lt.monomial.quotient_of(&t.monomial).ok_or(AlgebraError::InexactDivision)?;
            let qc = self.field.mul(&t.coeff, &inv);
            quot.add_term(qm.clone(), qc.clone());
            let sub = divisor.mul_monomial(&qm).scale(&qc);
            rem = rem.try_sub(&sub)?;
        }
        Ok(quot)
    }

    /// Canonical text form; see the crate README for the grammar.
    pub fn to_text(&self) -> String {
        super::text::format_polynomial(self)
    }

    pub fn parse(s: &str, field: CoefficientField, nvars: usize) -> Result<Polynomial> {
        super::text::parse_polynomial(s, field, nvars)
    }
}

pub(crate) fn check_index(i: usize, nvars: usize) -> Result<()> {
    if i == 0 || i > nvars {
        Err(AlgebraError::VariableOutOfRange { index: i, nvars })
    } else {
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Serializes as the canonical text form.
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}; {}]({})", self.field, self.nvars, self.to_text())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale_int(-1)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_compatible(rhs).expect("incompatible polynomials");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_compatible(rhs).expect("incompatible polynomials");
        let field = self.field;
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), field.neg(c));
        }
    }
}
