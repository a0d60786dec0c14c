use serde::{Deserialize, Serialize};

use super::{principal_decomposition, projection_factor};
use crate::error::{Error, Result};
use crate::exterior::{blade_norm, wedge, Blade};
use crate::linalg::{cross_gram, gram, Field, Matrix, Subspace};

/// `π_{V,W⊥}` along four routes, plus the direct SVD value on the explicit
/// complement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplementFactor {
    /// `∏ √(1 − πᵢ²)` over `R`, `∏ (1 − πᵢ)` over `C`.
    pub principal: f64,
    /// `det(1 − BBᴴ)` with orthonormal bases (square root over `R`).
    pub orthonormal: f64,
    /// `det(A − BD⁻¹Bᴴ)/det A` with the spanning bases (square root over `R`).
    pub general: f64,
    /// `‖ν ∧ ω‖/(‖ν‖‖ω‖)` (squared over `C`).
    pub exterior: f64,
    /// `π_{V,W⊥}` with `W⊥` built explicitly.
    pub direct: f64,
}

impl ComplementFactor {
    /// Largest deviation of the four formula routes from the direct value.
    pub fn max_residual(&self) -> f64 {
        [self.principal, self.orthonormal, self.general, self.exterior]
            .iter()
            .map(|x| (x - self.direct).abs())
            .fold(0.0, f64::max)
    }
}

fn from_det(field: Field, x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    match field {
        Field::Real => x.sqrt(),
        Field::Complex => x,
    }
}

/// Projection factor of `V` onto the orthogonal complement of `W`.
pub fn complement_factor(v: &Subspace, w: &Subspace) -> Result<ComplementFactor> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroSubspace);
    }
    let field = v.field();
    let n = v.ambient_dim();
    let (p, q) = (v.dim(), w.dim());
    let direct = projection_factor(v, &w.complement())?;

    // dim V > dim W⊥ forces V ∩ W ≠ {0}.
    if p + q > n {
        return Ok(ComplementFactor {
            principal: 0.0,
            orthonormal: 0.0,
            general: 0.0,
            exterior: 0.0,
            direct,
        });
    }

    let pd = principal_decomposition(v, w)?;
    let principal = pd
        .pi_principal
        .iter()
        .map(|&pi| match field {
            Field::Real => (1.0 - pi * pi).max(0.0).sqrt(),
            Field::Complex => 1.0 - pi,
        })
        .product::<f64>()
        .clamp(0.0, 1.0);

    let b = cross_gram(w.ortho_basis(), v.ortho_basis())?;
    let m = Matrix::identity(field, q).sub(&b.mul(&b.adjoint())?)?;
    let orthonormal = from_det(field, m.det()?.re);

    let a = gram(w.basis())?;
    let b = cross_gram(w.basis(), v.basis())?;
    let d = gram(v.basis())?;
    let schur = a.sub(&b.mul(&d.solve(&b.adjoint())?)?)?;
    let general = from_det(field, schur.det()?.re / a.det()?.re);

    let nu = Blade::of_basis(v);
    let omega = Blade::of_basis(w);
    let ratio = blade_norm(&wedge(&nu, &omega)?) / (blade_norm(&nu) * blade_norm(&omega));
    let exterior = field.power(ratio).min(1.0);

    Ok(ComplementFactor {
        principal,
        orthonormal,
        general,
        exterior,
        direct,
    })
}

/// `ζ(V,W) = π²_{V,W} + π²_{V,W⊥}` over `R`, `π_{V,W} + π_{V,W⊥}` over `C`.
pub fn zeta(v: &Subspace, w: &Subspace) -> Result<f64> {
    let a = projection_factor(v, w)?;
    let b = projection_factor(v, &w.complement())?;
    Ok(match v.field() {
        Field::Real => a * a + b * b,
        Field::Complex => a + b,
    })
}
