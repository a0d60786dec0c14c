//! Projection factors between real and complex subspaces.
//!
//! The projection factor `π_{V,W}` is the ratio by which Lebesgue measures of
//! sets in `V` shrink under orthogonal projection onto `W`. This crate
//! computes it along several independent routes (principal singular values,
//! orthonormal and general Gram determinants, blade inner and interior
//! products, Grassmann angles), and checks the generalized real and complex
//! Pythagorean theorems that follow from it.
//!
//! Real factors multiply lengths of principal lines; complex factors multiply
//! areas of principal complex lines, which is why the complex Pythagorean
//! identities carry unsquared measures.

pub mod error;
pub mod exterior;
pub mod linalg;
pub mod measure;
pub mod projection;
pub mod pythagoras;
pub mod quantum;
pub mod random;
pub mod report;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Subspace, Vector};
