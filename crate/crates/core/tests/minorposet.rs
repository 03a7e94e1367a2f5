use hankel_core::gradient_hessian::gradient;
use hankel_core::groebner::Engine;
use hankel_core::minorposet::{
    bracket_matrix, build_poset, derivative_level_decomposition, fiber_kernel_compare, generic_matrix,
    pluecker_check, pluecker_relations, pluecker_step_identities, relations_to_lines, Bracket, MinorPoset,
};
use hankel_core::polyring::{int, Coeff, CoefficientField, Polynomial};
use hankel_core::symmatrix::{cofactor, square_hankel, SymMatrix};
use proptest::prelude::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn br(m: usize, cols: &[usize]) -> Bracket {
    Bracket::new(m, cols.to_vec()).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Covers by definition: `a < b` with nothing strictly between.
fn brute_force_covers(p: &MinorPoset) -> Vec<Vec<usize>> {
    let lt = |a: &Bracket, b: &Bracket| a != b && MinorPoset::leq(a, b);
    p.nodes
        .iter()
        .map(|a| {
            (0..p.len())
                .filter(|&j| {
                    let b = &p.nodes[j];
                    lt(a, b) && !p.nodes.iter().any(|c| lt(a, c) && lt(c, b))
                })
                .collect()
        })
        .collect()
}

#[test]
fn node_counts_and_cover_bounds() {
    for m in 2..=8 {
        let p = build_poset(m).unwrap();
        assert_eq!(p.len(), binom(m + 1, 2));
        assert!(p.max_upper_covers() <= 2 && p.max_lower_covers() <= 2, "m={m}");
        let levels: Vec<usize> = p.level_sizes();
        assert_eq!(levels.len(), 2 * m - 1);
        for (i, b) in p.nodes.iter().enumerate() {
            assert_eq!(b.level(m), b.index_sum() + 1 - binom(m, 2));
            assert_eq!(p.levels[i], b.level(m));
            let (x, y) = b.complement(m);
            assert!(x < y && !b.cols.contains(&x) && !b.cols.contains(&y));
        }
    }
    assert!(build_poset(1).is_err());
}

#[test]
fn covers_match_definition() {
    for m in 2..=7 {
        let p = build_poset(m).unwrap();
        assert_eq!(p.upper_covers, brute_force_covers(&p), "m={m}");
    }
}

#[test]
fn diagram_at_five() {
    let p = build_poset(5).unwrap();
    assert_eq!(p.len(), 15);
    assert_eq!(p.level_sizes(), vec![1, 1, 2, 2, 3, 2, 2, 1, 1]);
    let up: Vec<String> = p.upper_covers_of(&br(5, &[1, 2, 4, 5])).iter().map(|b| b.to_string()).collect();
    assert_eq!(up, vec!["[1246]", "[1345]"]);
    let edges = [
        ("[1234]", vec!["[1235]"]),
        ("[1235]", vec!["[1236]", "[1245]"]),
        ("[1236]", vec!["[1246]"]),
        ("[1245]", vec!["[1246]", "[1345]"]),
        ("[1246]", vec!["[1256]", "[1346]"]),
        ("[1256]", vec!["[1356]"]),
        ("[1345]", vec!["[1346]", "[2345]"]),
        ("[1346]", vec!["[1356]", "[2346]"]),
        ("[1356]", vec!["[1456]", "[2356]"]),
        ("[1456]", vec!["[2456]"]),
        ("[2345]", vec!["[2346]"]),
        ("[2346]", vec!["[2356]"]),
        ("[2356]", vec!["[2456]"]),
        ("[2456]", vec!["[3456]"]),
        ("[3456]", vec![]),
    ];
    let mut total = 0;
    for (node, covers) in edges {
        let b = p.nodes.iter().find(|b| b.to_string() == node).unwrap();
        let got: Vec<String> = p.upper_covers_of(b).iter().map(|c| c.to_string()).collect();
        assert_eq!(got, covers, "{node}");
        total += got.len();
    }
    assert_eq!(total, p.upper_covers.iter().map(Vec::len).sum::<usize>());
    let json = p.to_json();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 15);
}

#[test]
fn poset_of_two_is_a_chain() {
    let p = build_poset(2).unwrap();
    let names: Vec<String> = p.nodes.iter().map(|b| b.to_string()).collect();
    assert_eq!(names, vec!["[1]", "[2]", "[3]"]);
    assert_eq!(p.upper_covers, vec![vec![1], vec![2], vec![]]);
}

#[test]
fn cofactors_are_symmetric() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let h = square_hankel(m, r, Q).unwrap();
            for t in 1..=m {
                for u in t + 1..=m {
                    assert_eq!(cofactor(&h, t, u).unwrap(), cofactor(&h, u, t).unwrap(), "m={m} r={r}");
                }
            }
        }
    }
}

fn parse_coeff(s: &str) -> Coeff {
    match s.split_once('/') {
        Some((n, d)) => Coeff::new(n.parse().unwrap(), d.parse().unwrap()),
        None => Coeff::from_integer(s.parse().unwrap()),
    }
}

#[test]
fn level_decomposition_reproduces_partials() {
    for m in 2..=5 {
        let rep = derivative_level_decomposition(m).unwrap();
        assert!(rep.holds && rep.cofactor_expansion_holds, "m={m}");
        let g = gradient(m, 0).unwrap();
        let h = bracket_matrix(m, 0, Q).unwrap();
        assert_eq!(rep.entries.len(), 2 * m - 1);
        for e in &rep.entries {
            assert_eq!(e.k + e.level, 2 * m);
            let mut acc = Polynomial::zero(Q, g.nvars());
            for (b, c) in &e.coefficients {
                assert_eq!(b.level(m), e.level);
                acc += &b.evaluate(&h).unwrap().scale(&parse_coeff(c));
            }
            assert_eq!(acc, g.partials[e.k - 1], "m={m} k={}", e.k);
            assert!(e.cofactor_span_matches);
        }
    }
}

#[test]
fn level_decomposition_examples() {
    let rep = derivative_level_decomposition(3).unwrap();
    let entry = |k: usize| rep.entries.iter().find(|e| e.k == k).unwrap();
    let only = |k: usize| {
        let e = entry(k);
        assert_eq!(e.coefficients.len(), 1);
        (e.coefficients[0].0.to_string(), parse_coeff(&e.coefficients[0].1))
    };
    let (b, c) = only(5);
    assert_eq!(b, "[12]");
    assert!(c == int(1) || c == int(-1));
    let (b, c) = only(1);
    assert_eq!(b, "[34]");
    assert!(c == int(1) || c == int(-1));
    let (b, c) = only(2);
    assert_eq!(b, "[24]");
    assert!(c == int(2) || c == int(-2));
    // f_3 = [14] + 3[23]: bracket coefficients are not confined to {1, 2}
    let mut f3: Vec<(String, String)> = entry(3).coefficients.iter().map(|(b, c)| (b.to_string(), c.clone())).collect();
    f3.sort();
    assert_eq!(f3, vec![("[14]".to_string(), "1".to_string()), ("[23]".to_string(), "3".to_string())]);
    assert!(!rep.bracket_coefficients_in_one_two);

    let rep5 = derivative_level_decomposition(5).unwrap();
    let f9 = rep5.entries.iter().find(|e| e.k == 9).unwrap();
    assert_eq!(f9.coefficients.len(), 1);
    assert_eq!(f9.coefficients[0].0.to_string(), "[1234]");
    // cofactor form: 1 on the diagonal slot, 2 off it
    for e in &rep5.entries {
        for ((t, u), c) in &e.cofactor_coefficients {
            assert_eq!(*c, if t == u { 1 } else { 2 });
        }
    }
}

#[test]
fn pluecker_relation_examples() {
    let rels = pluecker_relations(3).unwrap();
    assert_eq!(rels.len(), 1);
    assert_eq!(relations_to_lines(&rels), vec!["[34][12]-[24][13]+[23][14]"]);
    for m in 3..=6 {
        assert_eq!(pluecker_relations(m).unwrap().len(), binom(m + 1, 4));
    }
    assert!(pluecker_relations(2).is_err());
}

#[test]
fn pluecker_relations_vanish() {
    for m in 3..=5 {
        let rep = pluecker_check(m).unwrap();
        assert!(rep.vanish_generic && rep.holds, "m={m}");
        assert_eq!(rep.vanish_hankel.len(), m - 1);
        assert!(rep.vanish_hankel.iter().all(|(_, ok)| *ok));
    }
    let h = bracket_matrix(4, 0, Q).unwrap();
    for rel in pluecker_relations(4).unwrap() {
        assert!(rel.evaluate(&h).unwrap().is_zero());
    }
    let g = generic_matrix(3, 5, Q).unwrap();
    assert_eq!(g.nvars(), 15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Numerical check on random integer matrices.
    #[test]
    fn pluecker_relations_vanish_on_integer_matrices(
        m in 3usize..=5,
        vals in prop::collection::vec(-20i64..=20, 24),
    ) {
        let mat = SymMatrix::from_fn(m - 1, m + 1, |i, j| {
            Polynomial::from_int(Q, 0, vals[(i - 1) * 6 + (j - 1)])
        })
        .unwrap();
        for rel in pluecker_relations(m).unwrap() {
            prop_assert!(rel.evaluate(&mat).unwrap().is_zero());
        }
    }
}

#[test]
fn step_identities_small() {
    for m in 3..=4 {
        let rep = pluecker_step_identities(m).unwrap();
        assert!(rep.holds_up_to_signs && rep.xequation_as_displayed && rep.delta_squared_in_f_algebra, "m={m}");
        assert_eq!(rep.level_coefficients, Some(("3".to_string(), "1".to_string())));
        assert_eq!(rep.solved_coefficients, Some(("-1/2".to_string(), "-1".to_string())));
        assert!(!rep.holds_as_displayed);
    }
    let rep = pluecker_step_identities(3).unwrap();
    assert_eq!(rep.delta.to_string(), "[23]");
    assert_eq!(rep.delta_prime.to_string(), "[14]");
}

#[test]
fn fiber_kernels_at_three() {
    let e = Engine::default();
    let rep = fiber_kernel_compare(3, 0, &e).unwrap();
    assert_eq!(rep.equals_generic, Some(true));
    assert_eq!(rep.generator_degrees.into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
    assert!(rep.pluecker_quadrics_in_kernel && rep.extra_generators.is_empty());
    let rep = fiber_kernel_compare(3, 1, &e).unwrap();
    assert_eq!(rep.equals_generic, None);
    assert_eq!(rep.generator_degrees.into_iter().collect::<Vec<_>>(), vec![(2, 2)]);
    assert!(rep.pluecker_quadrics_in_kernel);
}
