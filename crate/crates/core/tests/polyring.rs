use std::collections::BTreeMap;

use hankel_core::polyring::{int, rat, Coeff, CoefficientField, Monomial, MonomialOrder, Polynomial, RingMap};
use hankel_core::symmatrix::{determinant, determinant_permutation_sum, phi_endomorphism, square_hankel};
use proptest::prelude::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, Q, n).unwrap()
}

fn det_h3() -> Polynomial {
    p("x1*x3*x5 - x1*x4^2 - x2^2*x5 + 2*x2*x3*x4 - x3^3", 5)
}

/// Schoolbook product on exponent maps, independent of the library's
/// multiplication.
fn convolve(a: &Polynomial, b: &Polynomial) -> BTreeMap<Vec<u16>, Coeff> {
    let mut out: BTreeMap<Vec<u16>, Coeff> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e: Vec<u16> = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(|| int(0)) += ca * cb;
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

fn as_map(p: &Polynomial) -> BTreeMap<Vec<u16>, Coeff> {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

#[test]
fn difference_of_squares() {
    let a = p("x1 + x2", 2);
    let b = p("x1 - x2", 2);
    assert_eq!(&a * &b, p("x1^2 - x2^2", 2));
    assert_eq!(&a + &Polynomial::zero(Q, 2), a);
}

#[test]
fn square_matches_convolution() {
    let g = p("x1*x3 - x2^2", 3);
    let sq = &g * &g;
    assert_eq!(as_map(&sq), convolve(&g, &g));
    assert_eq!(sq, p("x1^2*x3^2 - 2*x1*x2^2*x3 + x2^4", 3));
}

#[test]
fn det_h3_matches_permutation_sum() {
    let h = square_hankel(3, 0, Q).unwrap();
    assert_eq!(determinant_permutation_sum(&h).unwrap(), det_h3());
    assert_eq!(determinant(&h).unwrap(), det_h3());
}

#[test]
fn derivative_examples() {
    let f = det_h3();
    assert_eq!(f.partial_derivative(1).unwrap(), p("x3*x5 - x4^2", 5));
    assert!(Polynomial::from_int(Q, 5, 7).partial_derivative(2).unwrap().is_zero());
    let x = Polynomial::var(Q, 3, 2).unwrap();
    assert_eq!(x.pow(4).partial_derivative(2).unwrap(), x.pow(3).scale_int(4));
    assert!(f.partial_derivative(6).is_err());
}

#[test]
fn derivative_reduces_exponent_mod_p() {
    let f3 = CoefficientField::prime(3).unwrap();
    let x = Polynomial::var(f3, 1, 1).unwrap();
    assert!(x.pow(3).partial_derivative(1).unwrap().is_zero());
    assert_eq!(x.pow(4).partial_derivative(1).unwrap(), x.pow(3));
}

#[test]
fn phi_on_det_h3() {
    let phi = phi_endomorphism(3, 1, Q).unwrap();
    let img = phi.apply(&det_h3()).unwrap();
    assert_eq!(img, p("-x1*x4^2 + 2*x2*x3*x4 - x3^3", 5));
    // same result by substituting into the permutation-sum oracle
    let h = square_hankel(3, 0, Q).unwrap().map_entries(&phi).unwrap();
    assert_eq!(determinant_permutation_sum(&h).unwrap(), img);
    assert_eq!(phi_endomorphism(3, 0, Q).unwrap().apply(&det_h3()).unwrap(), det_h3());
    let kill5 = RingMap::annihilating(Q, 5, &[5]).unwrap();
    assert!(kill5.apply(&p("x2^2*x5", 5)).unwrap().is_zero());
}

#[test]
fn initial_terms() {
    let it = det_h3().initial_term(MonomialOrder::DegRevLex).unwrap();
    assert_eq!(it.monomial, Monomial::from_exponents(&[0, 0, 3, 0, 0]));
    assert_eq!(it.coeff, int(-1));
    // oracle: among the degree-3 monomials of det H_3, the degrevlex maximum
    // is the one with the smallest exponent vector read from the right
    let mut supp: Vec<Vec<u16>> = det_h3().terms().map(|(m, _)| m.exponents().to_vec()).collect();
    supp.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    assert_eq!(supp[0], vec![0, 0, 3, 0, 0]);

    let x1 = Polynomial::var(Q, 3, 1).unwrap();
    assert_eq!(x1.initial_term(MonomialOrder::DegRevLex).unwrap().monomial, Monomial::var_power(3, 0, 1));

    let h = square_hankel(4, 1, Q).unwrap();
    let f1 = determinant(&h).unwrap().partial_derivative(1).unwrap();
    let it = f1.initial_term(MonomialOrder::DegRevLex).unwrap();
    assert_eq!(it.monomial, Monomial::var_power(6, 4, 3));
    assert!(Polynomial::zero(Q, 2).initial_term(MonomialOrder::Lex).is_err());
}

#[test]
fn evaluation_examples() {
    let pt: Vec<Coeff> = [1, 0, 0, 0, 1].iter().map(|&v| int(v)).collect();
    assert_eq!(det_h3().evaluate(&pt).unwrap(), int(0));
    assert_eq!(p("x1*x3 - x2^2", 3).evaluate(&[int(2), int(3), int(5)]).unwrap(), int(1));
    let g = p("3*x1^2 - x2 + 7/2", 2);
    assert_eq!(g.evaluate(&[int(0), int(0)]).unwrap(), rat(7, 2));
    assert!(g.evaluate(&[int(1)]).is_err());
}

#[test]
fn pure_term_coefficients() {
    assert_eq!(det_h3().pure_term_coefficient(3, 3), int(-1));
    assert_eq!(det_h3().pure_term_coefficient(1, 3), int(0));
    for m in 2..=6 {
        for r in 0..=m - 2 {
            let f = determinant(&square_hankel(m, r, Q).unwrap()).unwrap();
            let c = f.pure_term_coefficient(m, m as u16);
            assert!(c == int(1) || c == int(-1), "m={m} r={r} c={c}");
        }
    }
}

#[test]
fn text_grammar_examples() {
    let f = det_h3();
    assert_eq!(Polynomial::parse(&f.to_text(), Q, 5).unwrap(), f);
    let f7 = CoefficientField::prime(7).unwrap();
    assert_eq!(Polynomial::parse("8*x1 + 1/2", f7, 1).unwrap(), Polynomial::parse("x1 + 4", f7, 1).unwrap());
    assert!(Polynomial::parse("x9", Q, 3).is_err());
    assert!(Polynomial::parse("x1 +* x2", Q, 3).is_err());
}

fn poly(nvars: usize, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (-6i64..=6, 1i64..=3, prop::collection::vec(0..=max_exp, nvars)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(Q, nvars, terms.into_iter().map(|(n, d, e)| (rat(n, d), e))).unwrap()
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Coeff>> {
    prop::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d)), nvars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(4, 5, 3), b in poly(4, 5, 3), c in poly(4, 5, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(as_map(&(&a * &b)), convolve(&a, &b));
    }

    #[test]
    fn leibniz_rule(a in poly(6, 4, 2), b in poly(6, 4, 2), i in 1usize..=6) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &(&a * &b.partial_derivative(i).unwrap()) + &(&b * &a.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_map_is_multiplicative(
        a in poly(3, 4, 2),
        b in poly(3, 4, 2),
        images in prop::collection::vec(poly(4, 3, 2), 3),
    ) {
        let map = RingMap::new(Q, 4, images).unwrap();
        let lhs = map.apply(&(&a * &b)).unwrap();
        let rhs = &map.apply(&a).unwrap() * &map.apply(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(map.apply(&(&a + &b)).unwrap(), &map.apply(&a).unwrap() + &map.apply(&b).unwrap());
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly(4, 5, 3), b in poly(4, 5, 3), pt in point(4)) {
        let lhs = (&a * &b).evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
        prop_assert_eq!(
            (&a + &b).evaluate(&pt).unwrap(),
            a.evaluate(&pt).unwrap() + b.evaluate(&pt).unwrap()
        );
    }

    #[test]
    fn initial_term_is_multiplicative(a in poly(4, 5, 3), b in poly(4, 5, 3), lex in any::<bool>()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let ia = a.initial_term(ord).unwrap();
        let ib = b.initial_term(ord).unwrap();
        let iab = (&a * &b).initial_term(ord).unwrap();
        prop_assert_eq!(iab.monomial, ia.monomial.mul(&ib.monomial));
        prop_assert_eq!(iab.coeff, ia.coeff * ib.coeff);
    }

    #[test]
    fn text_round_trip(a in poly(5, 6, 4)) {
        prop_assert_eq!(Polynomial::parse(&a.to_text(), Q, 5).unwrap(), a);
    }
}
