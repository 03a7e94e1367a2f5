//! Linear syzygies of a list of forms.

use crate::error::{AlgebraError, Result};
use crate::linalg::{fraction_field_rank, MonomialIndex, RowReducer};
use crate::polyring::Polynomial;

/// Linear relations `Σ λ_i F_i = 0` with `λ_i` linear forms.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SyzygyReport {
    pub generator_count: usize,
    /// Dimension of the space of linear syzygies over the ground field.
    pub syzygy_dimension: usize,
    /// Rank over the fraction field of the matrix whose columns are the
    /// syzygies in [`syzygies`](Self::syzygies).
    pub linear_rank: usize,
    /// A basis of linear syzygies; entry `i` multiplies `F_i`.
    pub syzygies: Vec<Vec<Polynomial>>,
}

impl SyzygyReport {
    /// Re-checks `Σ λ_i F_i = 0` for every reported syzygy.
    pub fn verify(&self, forms: &[Polynomial]) -> bool {
        self.syzygies.iter().all(|lam| {
            lam.len() == forms.len()
                && lam
                    .iter()
                    .zip(forms)
                    .fold(Polynomial::zero(forms[0].field(), forms[0].nvars()), |acc, (l, f)| &acc + &(l * f))
                    .is_zero()
        })
    }
}

/// Solves `Σ_i (Σ_j c_ij x_j) F_i = 0` exactly and reports the linear rank.
/// `seed` drives the randomized lower bound used before exact elimination.
pub fn linear_syzygies(forms: &[Polynomial], seed: u64) -> Result<SyzygyReport> {
    let first = forms
        .first()
        .ok_or_else(|| AlgebraError::InvalidParameters("no forms given".into()))?;
    let field = first.field();
    let n = first.nvars();
    let degree = first.total_degree();
    for f in forms {
        if f.field() != field || f.nvars() != n {
            return Err(AlgebraError::InvalidParameters("forms live in different rings".into()));
        }
        if !f.is_homogeneous() || f.total_degree() != degree {
            return Err(AlgebraError::InvalidParameters("forms must be homogeneous of one degree".into()));
        }
    }
    let vars: Vec<Polynomial> = (1..=n).map(|j| Polynomial::var(field, n, j)).collect::<Result<_>>()?;
    let mut index = MonomialIndex::new();
    let mut reducer = RowReducer::new(field, true);
    for f in forms {
        for x in &vars {
            reducer.push(&index.row(&(x * f)));
        }
    }
    let syzygies: Vec<Vec<Polynomial>> = reducer
        .relations()
        .into_iter()
        .map(|rel| {
            let mut lam = vec![Polynomial::zero(field, n); forms.len()];
            for (id, c) in rel {
                let (i, j) = (id / n, id % n);
                lam[i] += &vars[j].scale(&c);
            }
            lam
        })
        .collect();
    let linear_rank = if syzygies.is_empty() {
        0
    } else {
        let matrix: Vec<Vec<Polynomial>> = (0..forms.len())
            .map(|i| syzygies.iter().map(|s| s[i].clone()).collect())
            .collect();
        fraction_field_rank(&matrix, seed)?
    };
    Ok(SyzygyReport {
        generator_count: forms.len(),
        syzygy_dimension: syzygies.len(),
        linear_rank,
        syzygies,
    })
}

