//! Canonical text form of polynomials.
//!
//! Terms are printed in decreasing degrevlex order and joined by `+`/`-`.
//! A term is `c` or `c*x<i>^<e>*...` where `c` is `p/q` (the `/q` dropped
//! when `q = 1`, the whole `c*` dropped when `c = 1`, `^e` dropped when
//! `e = 1`). Variables appear in increasing index. The zero polynomial is `0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{Coeff, CoefficientField};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use crate::error::{AlgebraError, Result};

pub(crate) fn format_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

pub(crate) fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in p.sorted_terms(MonomialOrder::DegRevLex).iter().enumerate() {
        let neg = t.coeff.is_negative();
        let abs = t.coeff.abs();
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mono = format_monomial(&t.monomial);
        if mono.is_empty() {
            out.push_str(&format_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_coeff(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn parse_err(input: &str, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_rational(input: &str, s: &str) -> Result<Coeff> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| parse_err(input, format!("bad number `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| parse_err(input, format!("bad number `{s}`")))?;
    if d == BigInt::from(0) {
        return Err(parse_err(input, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses the text form. Whitespace is ignored and terms may come in any
/// order; like terms are combined.
pub(crate) fn parse_polynomial(
    input: &str,
    field: CoefficientField,
    nvars: usize,
) -> Result<Polynomial> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err(input, "empty input"));
    }
    let mut poly = Polynomial::zero(field, nvars);
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut i = 0;
    let mut terms = Vec::new();
    while i <= bytes.len() {
        let at_sep = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start);
        if at_sep {
            terms.push(&s[start..i]);
            start = i;
        }
        i += 1;
    }
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'+' => (1, &term[1..]),
            b'-' => (-1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(parse_err(input, "dangling sign"));
        }
        let mut coeff = Coeff::one();
        let mut exps = vec![0u16; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(parse_err(input, "empty factor"));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((a, b)) => (a, b),
                    None => (rest, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| parse_err(input, format!("bad variable `{factor}`")))?;
                let exp: u16 = exp
                    .parse()
                    .map_err(|_| parse_err(input, format!("bad exponent `{factor}`")))?;
                if idx == 0 || idx > nvars {
                    return Err(AlgebraError::VariableOutOfRange { index: idx, nvars });
                }
                exps[idx - 1] = exps[idx - 1]
                    .checked_add(exp)
                    .ok_or_else(|| parse_err(input, "exponent overflow"))?;
            } else {
                coeff *= parse_rational(input, factor)?;
            }
        }
        if sign < 0 {
            coeff = -coeff;
        }
        poly.add_term(Monomial::from_exponents(&exps), field.element(coeff)?);
    }
    Ok(poly)
}
