use serde::{Deserialize, Serialize};

use super::{conventional_factor, grassmann_angle, projection_factor};
use crate::error::{Error, Result};
use crate::exterior::{blade_inner, blade_norm, interior, Blade, MultiIndex};
use crate::linalg::{cross_gram, gram, orthonormalize, Field, Subspace, Vector};

/// Formula used to obtain a projection factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorPath {
    Svd,
    OrthonormalDet,
    GeneralBasisDet,
    Blades,
    Interior,
    GrassmannAngle,
}

impl FactorPath {
    pub const ALL: [FactorPath; 6] = [
        FactorPath::Svd,
        FactorPath::OrthonormalDet,
        FactorPath::GeneralBasisDet,
        FactorPath::Blades,
        FactorPath::Interior,
        FactorPath::GrassmannAngle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FactorPath::Svd => "svd",
            FactorPath::OrthonormalDet => "orthonormal-det",
            FactorPath::GeneralBasisDet => "general-basis-det",
            FactorPath::Blades => "blades",
            FactorPath::Interior => "interior",
            FactorPath::GrassmannAngle => "grassmann-angle",
        }
    }
}

/// A projection factor together with the path that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub value: f64,
    pub path: FactorPath,
    pub field: Field,
}

/// Turns a real determinant-type quantity into a factor: `√x` over `R`,
/// `x` over `C`, clamped into `[0, 1]`.
fn from_det(field: Field, x: f64) -> f64 {
    let x = x.max(0.0);
    let v = match field {
        Field::Real => x.sqrt(),
        Field::Complex => x,
    };
    v.min(1.0)
}

fn nonzero_pair(v: &Subspace, w: &Subspace) -> Result<()> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroSubspace);
    }
    Ok(())
}

/// `π_{V,W}` from the matrix `P = Q_Wᴴ Q_V` of the projection in orthonormal
/// bases: `√det(PᴴP)` over `R`, `det(PᴴP)` over `C`.
pub fn factor_orthonormal_det(v: &Subspace, w: &Subspace) -> Result<f64> {
    nonzero_pair(v, w)?;
    if v.dim() > w.dim() {
        return Ok(0.0);
    }
    let p = w.ortho_matrix().adjoint().mul(&v.ortho_matrix())?;
    let d = p.adjoint().mul(&p)?.det()?;
    Ok(from_det(v.field(), d.re))
}

/// Equal-dimension shortcut: `|det P|` over `R`, `|det P|²` over `C`.
pub fn factor_orthonormal_det_equal_dim(v: &Subspace, w: &Subspace) -> Result<f64> {
    nonzero_pair(v, w)?;
    if v.dim() != w.dim() {
        return Err(Error::Unsupported(format!(
            "equal-dimension formula needs dim V = dim W, got {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    let p = w.ortho_matrix().adjoint().mul(&v.ortho_matrix())?;
    Ok(v.field().power(p.det()?.norm()).min(1.0))
}

fn check_bases(basis_v: &[Vector], basis_w: &[Vector]) -> Result<Field> {
    let first = basis_v.first().ok_or(Error::ZeroSubspace)?;
    let field = first.field();
    if basis_w.is_empty() {
        return Err(Error::ZeroSubspace);
    }
    orthonormalize(basis_v)?;
    orthonormalize(basis_w)?;
    cross_gram(basis_w, basis_v)?;
    Ok(field)
}

/// `π_{V,W}` from arbitrary bases, with `A = (⟨wᵢ,wⱼ⟩)`, `B = (⟨wᵢ,vⱼ⟩)`,
/// `D = (⟨vᵢ,vⱼ⟩)`: `√(det(BᴴA⁻¹B)/det D)` over `R`, `det(BᴴA⁻¹B)/det D`
/// over `C`.
pub fn factor_general_bases(basis_v: &[Vector], basis_w: &[Vector]) -> Result<f64> {
    let field = check_bases(basis_v, basis_w)?;
    if basis_v.len() > basis_w.len() {
        return Ok(0.0);
    }
    let a = gram(basis_w)?;
    let b = cross_gram(basis_w, basis_v)?;
    let d = gram(basis_v)?;
    let num = b.adjoint().mul(&a.solve(&b)?)?.det()?;
    let den = d.det()?;
    Ok(from_det(field, num.re / den.re))
}

/// Equal-dimension variant: `|det B|/√(det A·det D)` over `R`, squared over
/// `C`.
pub fn factor_general_bases_equal_dim(basis_v: &[Vector], basis_w: &[Vector]) -> Result<f64> {
    let field = check_bases(basis_v, basis_w)?;
    if basis_v.len() != basis_w.len() {
        return Err(Error::Unsupported(format!(
            "equal-dimension formula needs dim V = dim W, got {} and {}",
            basis_v.len(),
            basis_w.len()
        )));
    }
    let a = gram(basis_w)?.det()?.re;
    let b = cross_gram(basis_w, basis_v)?.det()?.norm();
    let d = gram(basis_v)?.det()?.re;
    Ok(field.power(b / (a * d).sqrt()).min(1.0))
}

fn is_zero_blade(b: &Blade) -> bool {
    let scale: f64 = b.factors().iter().map(Vector::norm).product();
    blade_norm(b) <= 1e-12 * scale || scale == 0.0
}

/// `π_{V,W}` from nonzero blades of equal grade spanning `V` and `W`:
/// `|⟨ν,ω⟩|/(‖ν‖‖ω‖)` over `R`, squared over `C`.
pub fn factor_blades(nu: &Blade, omega: &Blade) -> Result<f64> {
    let z = blade_inner(nu, omega)?;
    if is_zero_blade(nu) || is_zero_blade(omega) {
        return Err(Error::ZeroBlade);
    }
    let cos = z.norm() / (blade_norm(nu) * blade_norm(omega));
    Ok(nu.field().power(cos).min(1.0))
}

/// `π_{V,W}` as the factor between the line `ΛᵖV` and the subspace `ΛᵖW` of
/// the exterior power: with `ν` a unit blade of `V` and `ω_J` the
/// orthonormal coordinate blades of an orthonormal basis of `W`,
/// `cos = √Σ_J |⟨ν, ω_J⟩|²`.
pub fn factor_exterior_power(v: &Subspace, w: &Subspace) -> Result<f64> {
    v.check_compatible(w)?;
    if let Some(value) = conventional_factor(v, w) {
        return Ok(value);
    }
    let nu = Blade::unit_of(v);
    let q = w.ortho_basis();
    let mut total = 0.0;
    for idx in MultiIndex::all(w.dim(), v.dim()) {
        let omega = Blade::new(
            w.field(),
            w.ambient_dim(),
            idx.indices().iter().map(|&i| q[i].clone()).collect(),
        )?;
        total += blade_inner(&nu, &omega)?.norm_sqr();
    }
    Ok(v.field().power(total.sqrt()).min(1.0))
}

/// `π_{V,W} = ‖ν ⌟ ω‖/(‖ν‖‖ω‖)` (squared over `C`) for the basis blades of
/// `V` and `W`.
pub fn factor_interior(v: &Subspace, w: &Subspace) -> Result<f64> {
    v.check_compatible(w)?;
    if let Some(value) = conventional_factor(v, w) {
        return Ok(value);
    }
    let nu = Blade::of_basis(v);
    let omega = Blade::of_basis(w);
    let c = interior(&nu, &omega)?;
    let cos = c.norm() / (blade_norm(&nu) * blade_norm(&omega));
    Ok(v.field().power(cos).min(1.0))
}

/// Evaluates one path, with the zero-subspace and dimension conventions
/// applied uniformly.
pub fn factor_by_path(v: &Subspace, w: &Subspace, path: FactorPath) -> Result<FactorReport> {
    v.check_compatible(w)?;
    let field = v.field();
    let value = match conventional_factor(v, w) {
        Some(value) => value,
        None => match path {
            FactorPath::Svd => projection_factor(v, w)?,
            FactorPath::OrthonormalDet => factor_orthonormal_det(v, w)?,
            FactorPath::GeneralBasisDet => factor_general_bases(v.basis(), w.basis())?,
            FactorPath::Blades if v.dim() == w.dim() => {
                factor_blades(&Blade::of_basis(v), &Blade::of_basis(w))?
            }
            FactorPath::Blades => factor_exterior_power(v, w)?,
            FactorPath::Interior => factor_interior(v, w)?,
            FactorPath::GrassmannAngle => field.power(grassmann_angle(v, w)?.cos()).clamp(0.0, 1.0),
        },
    };
    Ok(FactorReport { value, path, field })
}

/// Every path, in [`FactorPath::ALL`] order.
pub fn factor_all_paths(v: &Subspace, w: &Subspace) -> Result<Vec<FactorReport>> {
    FactorPath::ALL.iter().map(|&p| factor_by_path(v, w, p)).collect()
}
