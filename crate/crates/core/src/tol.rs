//! Numerical tolerances shared across the crate.
//!
//! All thresholds are absolute unless the name says otherwise. Callers that
//! need a different threshold pass their own; these are the defaults.

/// Gram–Schmidt residual below this fraction of the largest input norm marks
/// linear dependence.
pub const RANK_RELATIVE: f64 = 1e-12;

/// Jacobi SVD stops once the off-diagonal Frobenius mass of `AᴴA` falls below
/// this fraction of `‖M‖²_F`.
pub const SVD_OFF_DIAGONAL: f64 = 1e-14;

/// Sweep cap for the Jacobi SVD.
pub const SVD_MAX_SWEEPS: usize = 60;

/// Agreement between two independent formula paths.
pub const CROSS_PATH: f64 = 1e-9;

/// Single-path reconstruction (projection idempotence, SVD reconstruction,
/// Pythagorean sums).
pub const RECONSTRUCTION: f64 = 1e-10;

/// Closed-form regression fixtures.
pub const FIXTURE: f64 = 1e-12;

/// Singular values at or above `1 - INTERSECTION` count as shared directions.
pub const INTERSECTION: f64 = 1e-9;

/// Pairwise overlap allowed between parts of an orthogonal partition, relative
/// to the product of norms.
pub const ORTHOGONALITY: f64 = 1e-9;

/// Monte-Carlo checks pass within this many standard errors.
pub const MC_SIGMAS: f64 = 3.0;

/// Default sample counts.
pub const MC_SAMPLES_LIBRARY: usize = 100_000;
pub const MC_SAMPLES_ACCEPTANCE: usize = 1_000_000;
