//! Field-generic dense linear algebra over `R` and `C`.

mod matrix;
mod subspace;
mod svd;
mod vector;

pub use matrix::{cross_gram, det, gram, Matrix};
pub use subspace::{orthonormalize, project, Subspace};
pub(crate) use subspace::extend_from;
pub use svd::{svd, Svd};
pub use vector::{inner, re_inner, Field, Vector};
