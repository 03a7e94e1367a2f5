//! Coefficient fields: the rationals and prime fields.
//!
//! Every coefficient is stored as a [`BigRational`]. Over a prime field the
//! value is kept as the canonical residue in `0..p` with denominator one, so
//! both fields share a single polynomial type.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

pub type Coeff = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "q"),
            CoefficientField::PrimeField(p) => write!(f, "f{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::PrimeField(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    /// Parses the CLI spelling: `q` or `f<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            return Ok(CoefficientField::Rationals);
        }
        let digits = s
            .strip_prefix('f')
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| AlgebraError::InvalidParameters(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| AlgebraError::InvalidParameters(format!("unknown field `{s}`")))?;
        CoefficientField::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, CoefficientField::Rationals)
    }

    /// Maps a rational number into the field.
    pub fn element(&self, c: Coeff) -> Result<Coeff> {
        match self {
            CoefficientField::Rationals => Ok(c),
            CoefficientField::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let num = c.numer().mod_floor(&p_big);
                let den = c.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(AlgebraError::NotInvertible(*p));
                }
                let inv = mod_inverse(&den, &p_big).ok_or(AlgebraError::NotInvertible(*p))?;
                Ok(BigRational::from_integer((num * inv).mod_floor(&p_big)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.element(BigRational::from_integer(BigInt::from(n)))
            .expect("integers always map into the field")
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    #[inline]
    fn reduce(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => c,
            CoefficientField::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                // Residues have unit denominators, so integer reduction suffices.
                debug_assert!(c.denom().is_one());
                BigRational::from_integer(c.numer().mod_floor(&p_big))
            }
        }
    }

    #[inline]
    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    #[inline]
    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a - b)
    }

    #[inline]
    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    #[inline]
    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match self {
            CoefficientField::Rationals => Ok(a.recip()),
            CoefficientField::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let inv = mod_inverse(a.numer(), &p_big).ok_or(AlgebraError::NotInvertible(*p))?;
                Ok(BigRational::from_integer(inv))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplies by a small integer such as an exponent.
    pub fn mul_int(&self, a: &Coeff, n: u64) -> Coeff {
        self.reduce(a * BigRational::from_integer(BigInt::from(n)))
    }

    /// Absolute value as a rational; residues are returned as-is.
    pub fn abs(&self, a: &Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => a.abs(),
            CoefficientField::PrimeField(_) => a.clone(),
        }
    }

    /// Symmetric representative for residues, identity over the rationals.
    pub fn signed_repr(&self, a: &Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => a.clone(),
            CoefficientField::PrimeField(p) => {
                let v = a.numer().to_u64().unwrap_or(0);
                if v > p / 2 {
                    BigRational::from_integer(BigInt::from(v) - BigInt::from(*p))
                } else {
                    a.clone()
                }
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prime_validation() {
        assert!(CoefficientField::prime(3).is_ok());
        assert!(CoefficientField::prime(32003).is_ok());
        assert_eq!(CoefficientField::prime(1), Err(AlgebraError::NotPrime(1)));
        assert_eq!(CoefficientField::prime(9), Err(AlgebraError::NotPrime(9)));
    }

    #[test]
    fn parse_spellings() {
        assert_eq!(CoefficientField::parse("q").unwrap(), CoefficientField::Rationals);
        assert_eq!(CoefficientField::parse("f3").unwrap(), CoefficientField::PrimeField(3));
        assert!(CoefficientField::parse("f4").is_err());
        assert!(CoefficientField::parse("z").is_err());
    }

    #[test]
    fn residues_are_canonical() {
        let f3 = CoefficientField::PrimeField(3);
        assert_eq!(f3.element(q(-1, 1)).unwrap(), q(2, 1));
        // 1/2 = 2 in F_3
        assert_eq!(f3.element(q(1, 2)).unwrap(), q(2, 1));
        assert_eq!(f3.element(q(1, 3)), Err(AlgebraError::NotInvertible(3)));
        assert_eq!(f3.mul_int(&q(1, 1), 3), q(0, 1));
        assert_eq!(f3.inv(&q(2, 1)).unwrap(), q(2, 1));
    }
}
