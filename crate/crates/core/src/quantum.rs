//! Pure states as complex lines: Born probabilities, fidelity and the Bures
//! angle, all as projection factors of complex lines.
//!
//! States are rays and are never normalized in place; every formula divides
//! by `‖ψ‖²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, Field, Subspace, Vector};
use crate::projection::{line_factor, LineMode};
use crate::pythagoras::OrthogonalPartition;

/// A nonzero complex vector standing for its ray `Cψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    psi: Vector,
}

impl QuantumState {
    pub fn new(psi: Vector) -> Result<Self> {
        if psi.field() != Field::Complex {
            return Err(Error::FieldMismatch);
        }
        if psi.norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self { psi })
    }

    pub fn psi(&self) -> &Vector {
        &self.psi
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }
}

/// Eigenspaces and distinct eigenvalues of an observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    eigenspaces: OrthogonalPartition,
    eigenvalues: Vec<f64>,
}

impl Observable {
    pub fn new(eigenspaces: OrthogonalPartition, eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenspaces.field() != Field::Complex {
            return Err(Error::FieldMismatch);
        }
        if eigenvalues.len() != eigenspaces.len() {
            return Err(Error::DimensionMismatch {
                expected: eigenspaces.len(),
                found: eigenvalues.len(),
            });
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if eigenvalues[..i].contains(a) {
                return Err(Error::InvalidSet(format!("eigenvalue {a} is repeated")));
            }
        }
        Ok(Self {
            eigenspaces,
            eigenvalues,
        })
    }

    pub fn eigenspaces(&self) -> &[Subspace] {
        self.eigenspaces.parts()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Probability of measuring the `index`-th eigenvalue:
/// `π_{Cψ,W_λ} = ‖P_λψ‖²/‖ψ‖²`.
pub fn born_probability(state: &QuantumState, obs: &Observable, index: usize) -> Result<f64> {
    let w = obs.eigenspaces().get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: obs.len(),
    })?;
    line_factor(&state.psi, w, LineMode::ComplexLine)
}

/// Probabilities of all eigenvalues, in order.
pub fn distribution(state: &QuantumState, obs: &Observable) -> Result<Vec<f64>> {
    (0..obs.len()).map(|i| born_probability(state, obs, i)).collect()
}

/// `Σ_λ π_{Cψ,W_λ}`, which is 1.
pub fn total_probability(state: &QuantumState, obs: &Observable) -> Result<f64> {
    Ok(distribution(state, obs)?.iter().sum())
}

/// `|⟨ψ,φ⟩|²/(‖ψ‖²‖φ‖²) = π_{Cψ,Cφ}`.
pub fn fidelity(psi: &Vector, phi: &Vector) -> Result<f64> {
    let denom = psi.norm_sqr() * phi.norm_sqr();
    if denom == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((inner(psi, phi)?.norm_sqr() / denom).min(1.0))
}

/// `arccos √F ∈ [0, π/2]`, the Hermitian angle between the states.
pub fn bures_angle(psi: &Vector, phi: &Vector) -> Result<f64> {
    Ok(fidelity(psi, phi)?.sqrt().acos())
}

/// Probabilities and their total for one state and observable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BornReport {
    pub eigenvalues: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub total: f64,
    pub residual: f64,
}

pub fn born_report(state: &QuantumState, obs: &Observable) -> Result<BornReport> {
    let probabilities = distribution(state, obs)?;
    let total: f64 = probabilities.iter().sum();
    Ok(BornReport {
        eigenvalues: obs.eigenvalues.clone(),
        probabilities,
        total,
        residual: (total - 1.0).abs(),
    })
}
