//! Krull dimension of monomial ideals.

use crate::polyring::Monomial;

/// Smallest number of variables meeting every support, by branch and bound.
fn min_hitting_set(sets: &[u128], chosen: u128, count: usize, best: &mut usize) {
    let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else {
        *best = (*best).min(count);
        return;
    };
    if count + 1 >= *best {
        return;
    }
    let mut bits = open;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        min_hitting_set(sets, chosen | v, count + 1, best);
        bits &= bits - 1;
    }
}

fn minimal_supports(nvars: usize, gens: &[Monomial]) -> Option<Vec<u128>> {
    assert!(nvars <= 128, "at most 128 variables supported");
    let mut sets: Vec<u128> = gens
        .iter()
        .map(|m| m.support().iter().fold(0u128, |acc, &i| acc | (1 << i)))
        .collect();
    if sets.iter().any(|&s| s == 0) {
        return None;
    }
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    Some(minimal)
}

/// Dimension of `k[x_1..x_n]/(gens)`: the largest set of variables containing
/// no generator's support. Returns `-1` when a generator is constant.
pub fn dimension_of_monomial_ideal(nvars: usize, gens: &[Monomial]) -> i64 {
    let Some(sets) = minimal_supports(nvars, gens) else {
        return -1;
    };
    let mut best = nvars;
    min_hitting_set(&sets, 0, 0, &mut best);
    (nvars - best) as i64
}

/// Same as [`dimension_of_monomial_ideal`] by enumerating all variable
/// subsets. Exponential; for cross-checks on small rings.
pub fn dimension_of_monomial_ideal_brute_force(nvars: usize, gens: &[Monomial]) -> i64 {
    assert!(nvars <= 20);
    let Some(sets) = minimal_supports(nvars, gens) else {
        return -1;
    };
    let mut best = 0;
    for s in 0u128..(1 << nvars) {
        if sets.iter().all(|&g| g & s != g) {
            best = best.max(s.count_ones());
        }
    }
    best as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn small_cases() {
        assert_eq!(dimension_of_monomial_ideal(3, &[]), 3);
        assert_eq!(dimension_of_monomial_ideal(3, &[m(&[0, 0, 0])]), -1);
        assert_eq!(dimension_of_monomial_ideal(3, &[m(&[2, 0, 0]), m(&[0, 1, 1])]), 1);
        assert_eq!(dimension_of_monomial_ideal(4, &[m(&[1, 1, 0, 0]), m(&[0, 0, 1, 1])]), 2);
    }
}
