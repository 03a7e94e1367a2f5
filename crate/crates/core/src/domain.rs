//! Coefficient domains used by the elimination kernels.
//!
//! Over the rationals, kernels work with integer vectors kept primitive, so
//! only integer arithmetic is performed. Over a prime field they work with
//! machine-word residues.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::{Coeff, CoefficientField};

pub(crate) trait Domain: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multipliers `(u, v)` with `u*b - v*a = 0` and `u != 0`, used to cancel
    /// a coefficient `b` against a pivot `a`.
    fn cancel(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Scales a vector so it is canonical up to units: primitive with a
    /// positive first entry over the integers, first entry one over a field.
    fn normalize(&self, v: &mut [Self::Elem]);

    /// Maps a list of field coefficients into the domain, up to a common
    /// nonzero scalar.
    fn import(&self, cs: &[Coeff]) -> Vec<Self::Elem>;

    fn export(&self, a: &Self::Elem) -> Coeff;

    /// Whether `a` is a unit; used to skip needless content computations.
    fn is_unit(&self, a: &Self::Elem) -> bool;
}

#[derive(Clone, Debug)]
pub(crate) struct IntDomain;

impl Domain for IntDomain {
    type Elem = BigInt;

    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn cancel(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let g = a.gcd(b);
        (a / &g, b / &g)
    }

    fn normalize(&self, v: &mut [BigInt]) {
        let mut g = BigInt::zero();
        for x in v.iter() {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    break;
                }
            }
        }
        if g.is_zero() {
            return;
        }
        let flip = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
        if flip {
            g = -g;
        }
        if !g.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
    }

    fn import(&self, cs: &[Coeff]) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in cs {
            l = l.lcm(c.denom());
        }
        cs.iter().map(|c| c.numer() * (&l / c.denom())).collect()
    }

    fn export(&self, a: &BigInt) -> Coeff {
        BigRational::from_integer(a.clone())
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct PrimeDomain {
    pub p: u64,
}

impl PrimeDomain {
    fn inv(&self, a: u64) -> u64 {
        // Fermat inversion
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        r
    }
}

impl Domain for PrimeDomain {
    type Elem = u64;

    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn cancel(&self, a: &u64, b: &u64) -> (u64, u64) {
        (1, self.mul(b, &self.inv(*a)))
    }

    fn normalize(&self, v: &mut [u64]) {
        if let Some(&lead) = v.iter().find(|x| **x != 0) {
            if lead != 1 {
                let inv = self.inv(lead);
                for x in v.iter_mut() {
                    *x = self.mul(x, &inv);
                }
            }
        }
    }

    fn import(&self, cs: &[Coeff]) -> Vec<u64> {
        let field = CoefficientField::PrimeField(self.p);
        cs.iter()
            .map(|c| {
                field
                    .element(c.clone())
                    .expect("coefficients already lie in the field")
                    .numer()
                    .to_u64()
                    .expect("residue fits in u64")
            })
            .collect()
    }

    fn export(&self, a: &u64) -> Coeff {
        BigRational::from_integer(BigInt::from(*a))
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
}

/// The rationals as a field; used where exact remainders are needed.
#[derive(Clone, Debug)]
pub(crate) struct RatDomain;

impl Domain for RatDomain {
    type Elem = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn cancel(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (BigRational::one(), b / a)
    }

    fn normalize(&self, v: &mut [BigRational]) {
        if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
            if !lead.is_one() {
                for x in v.iter_mut() {
                    *x = &*x / &lead;
                }
            }
        }
    }

    fn import(&self, cs: &[Coeff]) -> Vec<BigRational> {
        cs.to_vec()
    }

    fn export(&self, a: &BigRational) -> Coeff {
        a.clone()
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
}
