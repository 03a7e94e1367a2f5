//! Exact computations with Hankel matrices and their coordinate-section
//! degenerations: determinants, gradient ideals, Hessians, ideals of minors,
//! the maximal-minor poset and Plücker relations, backed by a Gröbner basis
//! engine over the rationals and prime fields.

pub mod error;
pub mod polyring;
pub mod symmatrix;
pub mod linalg;
pub mod groebner;
pub mod gradient_hessian;
pub mod minorposet;
mod domain;

pub use error::{AlgebraError, Result};
