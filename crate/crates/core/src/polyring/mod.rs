//! Exact sparse multivariate polynomials over the rationals or a prime field.
//!
//! Variables are `x_1, ..., x_n` with `x_i` stored at index `i - 1`. All
//! values are immutable once built and can be shared across threads.

mod field;
mod monomial;
mod polynomial;
mod ring_map;
mod text;

pub use field::{Coeff, CoefficientField};
pub use monomial::{Exponents, Monomial, MonomialOrder};
pub use polynomial::{arith, ArithOp, Polynomial, Term};
pub use ring_map::{apply_map, RingMap};

/// Shorthand for a rational number `n/d`.
pub fn rat(n: i64, d: i64) -> Coeff {
    Coeff::new(n.into(), d.into())
}

/// Shorthand for an integer coefficient.
pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}
