use hankel_core::gradient_hessian::{
    appendix_check, appendix_closed_form, cofactor_decomposition_check, cofactor_relations_check, generic_syzygy_shape,
    gradient, gradient_codim, gradient_linear_syzygies, hessian, hessian_degenerated, hessian_matrix, minimal_primes_checks,
    phi_v, regular_sequence_experiment, theta_check, v_indices,
};
use hankel_core::groebner::Engine;
use hankel_core::polyring::{int, CoefficientField, Monomial, MonomialOrder, Polynomial};
use hankel_core::symmatrix::{determinant, square_hankel};

const Q: CoefficientField = CoefficientField::Rationals;

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, Q, n).unwrap()
}

fn is_scalar_times(p: &Polynomial, mono: &Monomial) -> bool {
    p.len() == 1 && p.terms().all(|(m, c)| m == mono && *c != int(0))
}

#[test]
fn partial_derivative_examples() {
    let g = gradient(3, 0).unwrap();
    assert_eq!(g.partials[0], p("x3*x5 - x4^2", 5));
    assert_eq!(g.partials[4], p("x1*x3 - x2^2", 5));
    let g = gradient(3, 1).unwrap();
    assert_eq!(g.partials[0], p("-x4^2", 4));
}

#[test]
fn partials_from_cofactors_in_small_cases() {
    // f_1 = Δ_{1,1}, f_2 = 2Δ_{2,1}, f_3 = Δ_{2,2} + 2Δ_{3,1}
    for (m, r) in [(3, 0), (4, 1), (5, 2)] {
        let g = gradient(m, r).unwrap();
        assert_eq!(g.partials[0], *g.delta(1, 1));
        assert_eq!(g.partials[1], g.delta(2, 1).scale_int(2));
        assert_eq!(g.partials[2], g.delta(2, 2) + &g.delta(3, 1).scale_int(2));
    }
}

#[test]
fn cofactor_sums_and_euler() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let rep = cofactor_decomposition_check(m, r).unwrap();
            assert!(rep.holds && rep.euler, "m={m} r={r}");
            let g = gradient(m, r).unwrap();
            for k in 1..=g.nvars() {
                assert_eq!(g.partials[k - 1], g.cofactor_sum(k), "m={m} r={r} k={k}");
            }
            assert_eq!(g.euler_sum(), g.f.scale_int(m as i64));
        }
    }
    assert!(cofactor_decomposition_check(3, 2).is_err());
}

#[test]
fn hessian_examples() {
    let h = hessian(2, 0).unwrap();
    assert_eq!(h.hessian.rows(), 3);
    assert!(h.hessian.entries().iter().all(|e| e.is_constant()));
    let d = determinant(&h.hessian).unwrap();
    assert!(d == Polynomial::from_int(Q, 3, 2) || d == Polynomial::from_int(Q, 3, -2));

    let h31 = hessian(3, 1).unwrap();
    let d = determinant(&h31.hessian).unwrap();
    assert!(is_scalar_times(&d, &Monomial::var_power(4, 3, 4)), "{d}");
}

#[test]
fn mixed_partials_commute() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let f = determinant(&square_hankel(m, r, Q).unwrap()).unwrap();
            let h = hessian_matrix(&f).unwrap();
            assert!(h.is_symmetric());
            let n = f.nvars();
            for i in 1..=n {
                for j in i..=n {
                    let ij = f.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
                    let ji = f.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
                    assert_eq!(ij, ji);
                    assert_eq!(h.get(i, j), &ij);
                }
            }
        }
    }
}

#[test]
fn degenerated_hessian_nonzero() {
    for m in 3..=5 {
        for r in 0..=m - 2 {
            assert!(!hessian_degenerated(m, r).unwrap().is_zero(), "m={m} r={r}");
        }
    }
}

#[test]
fn degeneration_commutes_with_determinant() {
    // φ_v before or after the determinant gives the same polynomial
    for (m, r) in [(3, 0), (3, 1), (4, 0), (4, 1)] {
        let data = hessian(m, r).unwrap();
        let phi = phi_v(m, r, Q).unwrap();
        let after = phi.apply(&determinant(&data.hessian).unwrap()).unwrap();
        assert_eq!(after, data.degenerated);
        assert_eq!(after, hessian_degenerated(m, r).unwrap());
    }
    assert_eq!(v_indices(5, 1), vec![1, 3, 8]);
}

#[test]
fn appendix_examples() {
    let cf = appendix_closed_form(4, 0).unwrap();
    assert!(cf.inner[0].is_zero());
    let rep = appendix_check(4, 0).unwrap();
    assert!(rep.matches());
    assert_eq!(rep.support_matches, Some(true));
    // for r >= 1 both inner terms sit on x_{m-r-1}^{2m-2r-4} x_{2m-r-1}^{2r};
    // their coefficients r(m-r-2) and (m-r-1)(r+1) never cancel
    let cf = appendix_closed_form(5, 1).unwrap();
    assert!(!cf.inner_terms_distinct);
    assert!(!cf.inner[0].is_zero() && !cf.inner[1].is_zero());
    for sa in [1, -1] {
        for sb in [1, -1] {
            assert!(!(&cf.inner[0].scale_int(sa) + &cf.inner[1].scale_int(sb)).is_zero());
        }
    }
    assert!(appendix_check(5, 1).unwrap().matches());
    assert!(appendix_closed_form(4, 2).is_err());
}

#[test]
fn theta_examples() {
    for (m, r, e) in [(3, 0, 4), (3, 1, 4), (4, 0, 10), (4, 1, 10), (4, 2, 10)] {
        let rep = theta_check(m, r).unwrap();
        assert_eq!(rep.exponent, e);
        assert!(rep.holds, "m={m} r={r}");
        let nv = 2 * m - 1 - r;
        assert!(is_scalar_times(&rep.determinant, &Monomial::var_power(nv, m, e as u16)));
    }
}

#[test]
fn cofactor_relation_examples() {
    let rep = cofactor_relations_check(4, 1).unwrap();
    assert!(rep.relations_hold && rep.holds);
    assert!(!rep.relations.is_empty());
    for m in 3..=5 {
        for r in 0..=m - 2 {
            assert!(cofactor_relations_check(m, r).unwrap().holds, "m={m} r={r}");
        }
    }
}

#[test]
fn gradient_codim_examples() {
    let e = Engine::default();
    assert_eq!(gradient_codim(3, 1, &e).unwrap().codim, 2);
    assert_eq!(gradient_codim(3, 0, &e).unwrap().codim, 3);
    assert_eq!(gradient_codim(4, 1, &e).unwrap().codim, 3);
    assert_eq!(gradient_codim(4, 2, &e).unwrap().codim, 2);
}

#[test]
fn minimal_primes_at_four_one() {
    let e = Engine::default();
    let rep = minimal_primes_checks(4, 1, &e, Some(&e)).unwrap();
    assert!(rep.in_q && rep.in_p && rep.codims_hold);
    assert_eq!((rep.codim_q, rep.codim_p), (3, 3));
    assert_eq!(rep.radical_spot_check, Some(true));
    let f = gradient(4, 1).unwrap();
    assert!(e.contains(&f.f, &f.ideal().unwrap()).unwrap());
    assert!(minimal_primes_checks(4, 0, &e, None).is_err());
}

#[test]
fn regular_sequence_examples() {
    let e = Engine::default();
    let rep = regular_sequence_experiment(3, None, &e).unwrap();
    assert!(rep.sequence.is_empty() && rep.steps.is_empty());
    let rep = regular_sequence_experiment(4, None, &e).unwrap();
    assert_eq!(rep.sequence, vec![7]);
    assert_eq!(rep.steps, vec![(7, true)]);
    assert!(rep.first_failure.is_none());
}

#[test]
fn linear_rank_by_field() {
    let f3 = CoefficientField::prime(3).unwrap();
    assert_eq!(gradient_linear_syzygies(4, 1, f3, 1).unwrap().linear_rank, 3);
    let q = gradient_linear_syzygies(4, 1, Q, 1).unwrap();
    assert_eq!(q.linear_rank, 2);
    assert!(q.verify(&gradient(4, 1).unwrap().partials));
}

#[test]
fn generic_syzygy_shape_examples() {
    for m in 3..=5 {
        let rep = generic_syzygy_shape(m, 1).unwrap();
        assert!(rep.only_unit_shifts && rep.last_coordinate_nonzero, "m={m}");
        assert_eq!(rep.by_shift.keys().copied().collect::<Vec<_>>(), vec![-1, 0, 1]);
    }
}

#[test]
fn initial_term_of_determinant() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let f = gradient(m, r).unwrap().f;
            let it = f.initial_term(MonomialOrder::DegRevLex).unwrap();
            assert_eq!(it.monomial, Monomial::var_power(2 * m - 1 - r, m - 1, m as u16), "m={m} r={r}");
        }
    }
}
