use super::field::CoefficientField;
use super::polynomial::{check_index, Polynomial};
use crate::error::{AlgebraError, Result};

/// A substitution `x_i ↦ images[i-1]` from a ring with `images.len()`
/// variables into the ring shared by all images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    images: Vec<Polynomial>,
    field: CoefficientField,
    target_nvars: usize,
}

impl RingMap {
    pub fn new(field: CoefficientField, target_nvars: usize, images: Vec<Polynomial>) -> Result<Self> {
        for g in &images {
            if g.field() != field {
                return Err(AlgebraError::FieldMismatch(g.field(), field));
            }
            if g.nvars() != target_nvars {
                return Err(AlgebraError::ArityMismatch(g.nvars(), target_nvars));
            }
        }
        Ok(RingMap {
            images,
            field,
            target_nvars,
        })
    }

    pub fn identity(field: CoefficientField, nvars: usize) -> Self {
        let images = (1..=nvars)
            .map(|i| Polynomial::var(field, nvars, i).expect("index in range"))
            .collect();
        RingMap {
            images,
            field,
            target_nvars: nvars,
        }
    }

    /// Sends every variable whose 1-based index is in `killed` to zero and
    /// fixes the rest; source and target rings coincide.
    pub fn annihilating(field: CoefficientField, nvars: usize, killed: &[usize]) -> Result<Self> {
        let mut map = RingMap::identity(field, nvars);
        for &i in killed {
            check_index(i, nvars)?;
            map.images[i - 1] = Polynomial::zero(field, nvars);
        }
        Ok(map)
    }

    pub fn source_nvars(&self) -> usize {
        self.images.len()
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Image of `x_i`, 1-based.
    pub fn image(&self, i: usize) -> Result<&Polynomial> {
        check_index(i, self.images.len())?;
        Ok(&self.images[i - 1])
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        apply_map(self, p)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        let images = self
            .images
            .iter()
            .map(|g| other.apply(g))
            .collect::<Result<Vec<_>>>()?;
        RingMap::new(self.field, other.target_nvars, images)
    }
}

/// Substitutes each variable of `p` by its image and expands.
pub fn apply_map(map: &RingMap, p: &Polynomial) -> Result<Polynomial> {
    if p.field() != map.field {
        return Err(AlgebraError::FieldMismatch(p.field(), map.field));
    }
    if p.nvars() != map.source_nvars() {
        return Err(AlgebraError::ArityMismatch(p.nvars(), map.source_nvars()));
    }
    // Cache powers of images; exponents in these workloads are small.
    let mut powers: Vec<Vec<Polynomial>> = map
        .images
        .iter()
        .map(|g| vec![Polynomial::one(map.field, map.target_nvars), g.clone()])
        .collect();
    let mut out = Polynomial::zero(map.field, map.target_nvars);
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(map.field, map.target_nvars, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= e as usize {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            t = &t * &cache[e as usize];
            if t.is_zero() {
                break;
            }
        }
        out += &t;
    }
    Ok(out)
}
