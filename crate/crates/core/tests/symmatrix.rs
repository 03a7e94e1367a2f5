use std::collections::BTreeMap;

use hankel_core::gradient_hessian::gradient;
use hankel_core::groebner::Engine;
use hankel_core::polyring::{int, Coeff, CoefficientField, Polynomial};
use hankel_core::symmatrix::{
    adjugate, block_partition, cofactor, combinations, degeneration_commutes_with_minors, determinant,
    determinant_permutation_sum, gruson_peskine_check, hankel, minor_ideal_codim, minor_span_dimension, minors,
    phi_endomorphism, square_hankel, HankelSpec, SymMatrix,
};
use proptest::prelude::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, Q, n).unwrap()
}

/// Cofactor expansion along the first row, written out independently.
fn laplace_det(m: &SymMatrix) -> Polynomial {
    let n = m.rows();
    if n == 1 {
        return m.get(1, 1).clone();
    }
    let mut acc = Polynomial::zero(m.field(), m.nvars());
    for j in 1..=n {
        let rows: Vec<usize> = (2..=n).collect();
        let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
        let sub = laplace_det(&m.submatrix(&rows, &cols).unwrap());
        let term = m.get(1, j) * &sub;
        if j % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Exact rank of the coefficient matrix of `polys` by plain Gaussian
/// elimination over the rationals.
fn span_rank(polys: &[Polynomial]) -> usize {
    let mut cols: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for q in polys {
        for (mono, _) in q.terms() {
            let k = cols.len();
            cols.entry(mono.exponents().to_vec()).or_insert(k);
        }
    }
    let mut rows: Vec<Vec<Coeff>> = polys
        .iter()
        .map(|q| {
            let mut row = vec![int(0); cols.len()];
            for (mono, c) in q.terms() {
                row[cols[mono.exponents()]] = c.clone();
            }
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != int(0)) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != int(0) {
                let factor = &rows[i][c] / &rows[rank][c];
                for k in c..cols.len() {
                    let d = &factor * &rows[rank][k];
                    rows[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn hankel_shapes() {
    let h = hankel(HankelSpec::new(3, 3, 0), Q).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            assert_eq!(h.get(i, j), &Polynomial::var(Q, 5, i + j - 1).unwrap());
        }
    }
    let h1 = hankel(HankelSpec::new(3, 3, 1), Q).unwrap();
    assert_eq!(h1.nvars(), 4);
    assert!(h1.get(3, 3).is_zero());
    assert_eq!(h1.get(2, 3), &Polynomial::var(Q, 4, 4).unwrap());
    let h11 = hankel(HankelSpec::new(1, 1, 0), Q).unwrap();
    assert_eq!(h11.get(1, 1), &Polynomial::var(Q, 1, 1).unwrap());
    let rect = hankel(HankelSpec::new(2, 4, 0), Q).unwrap();
    assert_eq!((rect.rows(), rect.cols(), rect.nvars()), (2, 4, 5));
    assert!(square_hankel(4, 2, Q).unwrap().is_symmetric());
}

#[test]
fn small_determinants() {
    let h2 = square_hankel(2, 0, Q).unwrap();
    assert_eq!(determinant(&h2).unwrap(), p("x1*x3 - x2^2", 3));
    let h3 = square_hankel(3, 0, Q).unwrap();
    assert_eq!(
        determinant(&h3).unwrap(),
        p("x1*x3*x5 - x1*x4^2 - x2^2*x5 + 2*x2*x3*x4 - x3^3", 5)
    );
    assert_eq!(cofactor(&h3, 1, 1).unwrap(), p("x3*x5 - x4^2", 5));
    let adj = adjugate(&h2).unwrap();
    assert_eq!(adj.mul(&h2).unwrap(), SymMatrix::scalar(&determinant(&h2).unwrap(), 2));
    let one = hankel(HankelSpec::new(1, 1, 0), Q).unwrap();
    assert_eq!(adjugate(&one).unwrap(), SymMatrix::identity(Q, 1, 1));
}

#[test]
fn determinants_nonzero_and_match_oracles() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let h = square_hankel(m, r, Q).unwrap();
            let f = determinant(&h).unwrap();
            assert!(!f.is_zero());
            assert_eq!(f, laplace_det(&h), "m={m} r={r}");
            assert_eq!(f, determinant_permutation_sum(&h).unwrap(), "m={m} r={r}");
        }
    }
    let f6 = determinant(&square_hankel(6, 4, Q).unwrap()).unwrap();
    assert!(!f6.is_zero());
}

#[test]
fn adjugate_identity_both_sides() {
    for m in 2..=5 {
        for r in 0..=m - 2 {
            let h = square_hankel(m, r, Q).unwrap();
            let f = determinant(&h).unwrap();
            let adj = adjugate(&h).unwrap();
            let fi = SymMatrix::scalar(&f, m);
            assert_eq!(adj.mul(&h).unwrap(), fi, "m={m} r={r}");
            assert_eq!(h.mul(&adj).unwrap(), fi, "m={m} r={r}");
            assert!(adj.is_symmetric());
        }
    }
}

#[test]
fn laplace_along_first_row() {
    for m in 2..=5 {
        let h = square_hankel(m, 1.min(m - 2), Q).unwrap();
        let mut acc = Polynomial::zero(Q, h.nvars());
        for j in 1..=m {
            acc += &(h.get(1, j) * &cofactor(&h, 1, j).unwrap());
        }
        assert_eq!(acc, determinant(&h).unwrap());
    }
}

#[test]
fn minor_lists() {
    let h24 = hankel(HankelSpec::new(2, 4, 0), Q).unwrap();
    let ms = minors(&h24, 2).unwrap();
    assert_eq!(ms.len(), 6);
    assert_eq!(ms[0].cols, vec![1, 2]);
    assert_eq!(ms[0].value, p("x1*x3 - x2^2", 5));
    for m in 3..=6 {
        let h = hankel(HankelSpec::new(m - 1, m + 1, 0), Q).unwrap();
        assert_eq!(minors(&h, m - 1).unwrap().len(), m * (m + 1) / 2);
    }
    let h3 = square_hankel(3, 0, Q).unwrap();
    let top = minors(&h3, 3).unwrap();
    assert_eq!(top.len(), 1);
    assert_eq!(top[0].value, determinant(&h3).unwrap());
    assert!(minors(&h3, 4).is_err());
    // every minor agrees with the Laplace oracle on its submatrix
    for mi in minors(&h3, 2).unwrap() {
        assert_eq!(mi.value, laplace_det(&h3.submatrix(&mi.rows, &mi.cols).unwrap()));
    }
}

#[test]
fn minor_span_dimension_survives_degeneration_below_t() {
    for m in 2..=5 {
        for t in 1..=m {
            let generic = minors(&square_hankel(m, 0, Q).unwrap(), t).unwrap();
            let gvals: Vec<Polynomial> = generic.into_iter().map(|x| x.value).collect();
            let base = span_rank(&gvals);
            for r in 0..=m - 2 {
                let h = square_hankel(m, r, Q).unwrap();
                let dim = minor_span_dimension(&h, t).unwrap();
                let vals: Vec<Polynomial> = minors(&h, t).unwrap().into_iter().map(|x| x.value).collect();
                assert_eq!(dim, span_rank(&vals), "m={m} t={t} r={r}");
                if r < t {
                    assert_eq!(dim, base, "m={m} t={t} r={r}");
                }
            }
        }
    }
}

/// For `r >= t` the span shrinks; already at `t = 1` the entries of
/// `H_m[r]` span only `2m-1-r` variables. Measured values, `r = 0..=m-2`.
#[test]
fn minor_span_dimension_table() {
    let table: &[(usize, usize, &[usize])] = &[
        (3, 1, &[5, 4]),
        (3, 2, &[6, 6]),
        (4, 1, &[7, 6, 5]),
        (4, 2, &[15, 15, 10]),
        (4, 3, &[10, 10, 10]),
        (5, 1, &[9, 8, 7, 6]),
        (5, 2, &[28, 28, 21, 15]),
        (5, 3, &[35, 35, 35, 20]),
        (5, 4, &[15, 15, 15, 15]),
    ];
    for &(m, t, dims) in table {
        let got: Vec<usize> = (0..=m - 2)
            .map(|r| minor_span_dimension(&square_hankel(m, r, Q).unwrap(), t).unwrap())
            .collect();
        assert_eq!(got, dims, "m={m} t={t}");
    }
}

#[test]
fn phi_carries_minors_to_degenerate_minors() {
    assert_eq!(phi_endomorphism(3, 1, Q).unwrap().images()[4], Polynomial::zero(Q, 5));
    for (s, t) in [(3, 3), (2, 4), (3, 5), (4, 4)] {
        let n = s + t - 1;
        for r in 0..=n.min(2 * s) - 2 {
            let spec = HankelSpec::new(s, t, r);
            if spec.nvars() < s.max(t) {
                continue;
            }
            for k in 1..=s.min(t) {
                assert!(degeneration_commutes_with_minors(spec, k, Q).unwrap(), "{spec:?} t={k}");
            }
        }
    }
}

#[test]
fn minor_codim_examples() {
    let e = Engine::default();
    assert_eq!(minor_ideal_codim(3, 2, 0, &e).unwrap().codim, 3);
    assert_eq!(minor_ideal_codim(4, 3, 1, &e).unwrap().codim, 3);
    for m in 2..=4 {
        for r in 0..=m - 2 {
            let rep = minor_ideal_codim(m, 1, r, &e).unwrap();
            assert_eq!(rep.codim as usize, 2 * m - 1 - r);
        }
    }
}

#[test]
fn gruson_peskine_examples() {
    let e = Engine::default();
    assert!(gruson_peskine_check(3, 2, 5, 0, Q, &e).unwrap().equal);
    assert!(gruson_peskine_check(3, 3, 5, 0, Q, &e).unwrap().equal);
    assert!(gruson_peskine_check(4, 3, 7, 1, Q, &e).unwrap().equal);
    assert!(gruson_peskine_check(3, 4, 5, 0, Q, &e).is_err());
}

#[test]
fn block_partition_examples() {
    let e = Engine::default();
    let b = block_partition(3, 0, 1, Q).unwrap();
    assert_eq!((b.u.rows(), b.u.cols(), b.d.rows()), (2, 3, 1));
    let h = square_hankel(3, 0, Q).unwrap();
    assert_eq!(b.d.get(1, 2), h.get(3, 2));
    for m in 3..=4 {
        for r in 0..=m - 2 {
            let j_ideal = gradient(m, r).unwrap().ideal().unwrap();
            for j in 1..=m - 2 {
                let bp = block_partition(m, r, j, Q).unwrap();
                assert!(bp.verify_identity().unwrap());
                assert_eq!(bp.b_prime, bp.b.transpose());
                assert!(bp.top_products_in(&j_ideal, &e).unwrap(), "m={m} r={r} j={j}");
            }
        }
    }
    assert!(block_partition(3, 0, 2, Q).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn row_swap_flips_sign(m in 2usize..=4, r_seed in 0usize..3, a in 1usize..=4, b in 1usize..=4) {
        let r = r_seed % (m - 1);
        let (a, b) = (1 + (a - 1) % m, 1 + (b - 1) % m);
        prop_assume!(a != b);
        let h = square_hankel(m, r, Q).unwrap();
        let mut order: Vec<usize> = (1..=m).collect();
        order.swap(a - 1, b - 1);
        let all: Vec<usize> = (1..=m).collect();
        let swapped = h.submatrix(&order, &all).unwrap();
        prop_assert_eq!(determinant(&swapped).unwrap(), -determinant(&h).unwrap());
    }

    #[test]
    fn determinant_matches_oracle_on_random_matrices(
        n in 1usize..=4,
        entries in prop::collection::vec((-3i64..=3, 1usize..=4), 16),
    ) {
        let m = SymMatrix::from_fn(n, n, |i, j| {
            let (c, v) = entries[(i - 1) * 4 + (j - 1)];
            Polynomial::var(Q, 4, v).unwrap().scale_int(c)
        })
        .unwrap();
        let d = determinant(&m).unwrap();
        prop_assert_eq!(&d, &laplace_det(&m));
        prop_assert_eq!(&d, &determinant_permutation_sum(&m).unwrap());
    }
}

#[test]
fn combinations_are_lex_ordered() {
    let c = combinations(4, 2);
    assert_eq!(c, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
}
