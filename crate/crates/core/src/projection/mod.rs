//! Principal decompositions, projection factors and Grassmann angles.
//!
//! `π_{V,W}` is computed along several independent routes so that each can
//! serve as an oracle for the others:
//!
//! | path | formula |
//! |------|---------|
//! | [`FactorPath::Svd`] | product of principal factors `πᵢ` (`σᵢ` or `σᵢ²`) |
//! | [`FactorPath::OrthonormalDet`] | `√det(PᴴP)` / `det(PᴴP)` in orthonormal bases |
//! | [`FactorPath::GeneralBasisDet`] | `det(BᴴA⁻¹B)/det D` in arbitrary bases |
//! | [`FactorPath::Blades`] | `|⟨ν,ω⟩|/(‖ν‖‖ω‖)`, or the projection of `ν` onto `ΛᵖW` |
//! | [`FactorPath::Interior`] | `‖ν ⌟ ω‖/(‖ν‖‖ω‖)` |
//! | [`FactorPath::GrassmannAngle`] | `cos Θ` / `cos² Θ` |
//!
//! Over `C` every factor is the square of what the same cosine-type quantity
//! gives over `R` (see [`Field::power`]).

pub mod appendix;
mod complement;
mod lines;
mod paths;

pub use complement::{complement_factor, zeta, ComplementFactor};
pub use lines::{euclidean_angle, hermitian_angle, line_factor, LineMode};
pub use paths::{
    factor_all_paths, factor_blades, factor_by_path, factor_exterior_power, factor_general_bases,
    factor_general_bases_equal_dim, factor_interior, factor_orthonormal_det, factor_orthonormal_det_equal_dim,
    FactorPath, FactorReport,
};

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{extend_from, svd, Field, Subspace, Vector};

/// Principal vectors, singular values, angles and factors of a pair of
/// nonzero subspaces, with `m = min(dim V, dim W)` entries each.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition {
    pub field: Field,
    /// Cosines of the principal angles, descending, clamped into `[0, 1]`.
    pub sigma: Vec<f64>,
    /// `sin θᵢ = ‖eᵢ − P_W eᵢ‖`, measured directly so small angles keep
    /// full relative accuracy.
    pub sines: Vec<f64>,
    /// Principal angles `θᵢ = atan2(sin θᵢ, σᵢ)`, ascending.
    pub theta: Vec<f64>,
    /// Principal projection factors `πᵢ`.
    pub pi_principal: Vec<f64>,
    /// Principal vectors of `V`.
    pub e_vecs: Vec<Vector>,
    /// Principal vectors of `W`; `⟨eᵢ, fⱼ⟩ = σᵢ·δᵢⱼ`.
    pub f_vecs: Vec<Vector>,
    v_basis: Vec<Vector>,
    w_basis: Vec<Vector>,
}

impl PrincipalDecomposition {
    /// A full principal basis of `V` (`dim V` vectors); vectors past `m`
    /// are orthogonal to `W`.
    pub fn v_basis(&self) -> &[Vector] {
        &self.v_basis
    }

    /// A full principal basis of `W` (`dim W` vectors).
    pub fn w_basis(&self) -> &[Vector] {
        &self.w_basis
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }
}

/// Principal decomposition from the SVD of `Q_Wᴴ·Q_V`.
pub fn principal_decomposition(v: &Subspace, w: &Subspace) -> Result<PrincipalDecomposition> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroSubspace);
    }
    let field = v.field();
    let qv = v.ortho_matrix();
    let qw = w.ortho_matrix();
    let s = svd(&qw.adjoint().mul(&qv)?)?;
    let sigma: Vec<f64> = s.sigma.iter().map(|x| x.clamp(0.0, 1.0)).collect();
    let e_vecs: Vec<Vector> = qv.mul(&s.v)?.columns();
    let f_vecs: Vec<Vector> = qw.mul(&s.u)?.columns();
    let v_basis = extend_from(e_vecs.clone(), v.ortho_basis(), v.dim());
    let w_basis = extend_from(f_vecs.clone(), w.ortho_basis(), w.dim());
    let sines = e_vecs
        .iter()
        .take(sigma.len())
        .map(|e| Ok(e.sub(&w.project(e)?)?.norm().min(1.0)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(PrincipalDecomposition {
        field,
        theta: sines.iter().zip(&sigma).map(|(s, c)| s.atan2(*c)).collect(),
        sines,
        pi_principal: sigma.iter().map(|&x| field.power(x)).collect(),
        sigma,
        e_vecs,
        f_vecs,
        v_basis,
        w_basis,
    })
}

/// Principal angles of `V` and `W`, ascending.
pub fn principal_angles(v: &Subspace, w: &Subspace) -> Result<Vec<f64>> {
    principal_decomposition(v, w).map(|pd| pd.theta)
}

/// Value fixed by the zero-subspace and dimension conventions, if any:
/// `π_{{0},W} = 1`, `π_{V,{0}} = 0`, and `π_{V,W} = 0` when `dim V > dim W`.
pub(crate) fn conventional_factor(v: &Subspace, w: &Subspace) -> Option<f64> {
    if v.is_zero() {
        Some(1.0)
    } else if w.is_zero() || v.dim() > w.dim() {
        Some(0.0)
    } else {
        None
    }
}

/// Projection factor `π_{V,W}` as the product of principal projection
/// factors, with the zero-subspace conventions.
pub fn projection_factor(v: &Subspace, w: &Subspace) -> Result<f64> {
    v.check_compatible(w)?;
    if let Some(value) = conventional_factor(v, w) {
        return Ok(value);
    }
    let pd = principal_decomposition(v, w)?;
    Ok(pd.pi_principal.iter().product::<f64>().clamp(0.0, 1.0))
}

/// Grassmann angle `Θ_{V,W} ∈ [0, π/2]`: `arccos ∏ cos θᵢ` when
/// `dim V ≤ dim W`, `π/2` otherwise; `Θ_{{0},W} = 0`, `Θ_{V,{0}} = π/2`.
pub fn grassmann_angle(v: &Subspace, w: &Subspace) -> Result<f64> {
    v.check_compatible(w)?;
    if v.is_zero() {
        return Ok(0.0);
    }
    if w.is_zero() || v.dim() > w.dim() {
        return Ok(FRAC_PI_2);
    }
    // cos Θ = ∏ cos θᵢ and sin²Θ = 1 − ∏(1 − sin²θᵢ), accumulated without
    // cancellation.
    let pd = principal_decomposition(v, w)?;
    let (mut cos, mut sin_sq) = (1.0, 0.0);
    for (s, c) in pd.sines.iter().zip(&pd.sigma) {
        cos *= c;
        sin_sq += s * s * (1.0 - sin_sq);
    }
    Ok(sin_sq.clamp(0.0, 1.0).sqrt().atan2(cos))
}

/// Numerical intersection `V ∩ W`, spanned by the principal vectors of `V`
/// whose cosine is within `tol` of 1.
pub fn intersection(v: &Subspace, w: &Subspace, tol: f64) -> Result<Subspace> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Ok(Subspace::zero(v.field(), v.ambient_dim()));
    }
    let pd = principal_decomposition(v, w)?;
    let shared: Vec<Vector> = pd
        .sigma
        .iter()
        .zip(&pd.e_vecs)
        .filter(|(s, _)| **s >= 1.0 - tol)
        .map(|(_, e)| e.clone())
        .collect();
    Ok(Subspace::from_orthonormal(v.field(), v.ambient_dim(), shared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_subspace, random_subspace_within, stream_rng};
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn line(v: &[f64]) -> Subspace {
        Subspace::span(vec![Vector::real(v)]).unwrap()
    }

    #[test]
    fn principal_examples() {
        let pd = principal_decomposition(&line(&[1.0, 0.0]), &line(&[1.0, 0.0])).unwrap();
        assert_eq!(pd.sigma, vec![1.0]);
        assert_eq!(pd.theta, vec![0.0]);

        let pd = principal_decomposition(&line(&[1.0, 0.0]), &line(&[0.0, 1.0])).unwrap();
        assert_eq!(pd.sigma, vec![0.0]);
        assert!((pd.theta[0] - FRAC_PI_2).abs() < 1e-15);

        let pd = principal_decomposition(&line(&[1.0, 1.0]), &line(&[1.0, 0.0])).unwrap();
        assert!((pd.sigma[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((pd.theta[0] - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn principal_rejects_zero_subspace() {
        let z = Subspace::zero(Field::Real, 2);
        assert!(matches!(
            principal_decomposition(&z, &line(&[1.0, 0.0])),
            Err(Error::ZeroSubspace)
        ));
    }

    #[test]
    fn principal_vectors_are_biorthogonal() {
        let mut rng = stream_rng(21, 0);
        for field in [Field::Real, Field::Complex] {
            for (n, p, q) in [(5, 2, 3), (6, 3, 2), (8, 4, 4), (3, 1, 1)] {
                let v = random_subspace(field, n, p, &mut rng);
                let w = random_subspace(field, n, q, &mut rng);
                let pd = principal_decomposition(&v, &w).unwrap();
                for (i, e) in pd.e_vecs.iter().enumerate() {
                    for (j, f) in pd.f_vecs.iter().enumerate() {
                        let z = crate::linalg::inner(e, f).unwrap();
                        let expected = if i == j { pd.sigma[i] } else { 0.0 };
                        assert!((z - Complex64::new(expected, 0.0)).norm() < 1e-9);
                    }
                }
                assert_eq!(pd.v_basis().len(), p);
                assert_eq!(pd.w_basis().len(), q);
                for (t, s) in pd.theta.iter().zip(&pd.sigma) {
                    assert!((t.cos() - s).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn factor_conventions_and_extremes() {
        let f = Field::Real;
        let zero = Subspace::zero(f, 3);
        let w = Subspace::coordinate(f, 3, &[0, 1]);
        assert_eq!(projection_factor(&zero, &zero).unwrap(), 1.0);
        assert_eq!(projection_factor(&zero, &w).unwrap(), 1.0);
        assert_eq!(projection_factor(&w, &zero).unwrap(), 0.0);
        assert_eq!(projection_factor(&Subspace::full(f, 3), &w).unwrap(), 0.0);

        let inside = line(&[1.0, 2.0, 0.0]);
        assert!((projection_factor(&inside, &w).unwrap() - 1.0).abs() < 1e-15);
        let meets_complement = Subspace::span(vec![Vector::real(&[0.0, 0.0, 1.0]), Vector::real(&[1.0, 0.0, 0.0])]).unwrap();
        assert!(projection_factor(&meets_complement, &w).unwrap() < 1e-15);
    }

    #[test]
    fn complex_line_onto_eigen_line() {
        // v = c₁v₁ + c₂v₂ with |c₁|² = 1/4.
        let c1 = Complex64::new(0.5 * FRAC_1_SQRT_2, 0.5 * FRAC_1_SQRT_2);
        let c2 = Complex64::new(0.0, 0.75f64.sqrt());
        let v = Subspace::span(vec![Vector::complex(&[c1, c2])]).unwrap();
        let w = Subspace::coordinate(Field::Complex, 2, &[0]);
        assert!((projection_factor(&v, &w).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn grassmann_angle_examples() {
        let w = Subspace::coordinate(Field::Real, 3, &[0, 1]);
        assert_eq!(grassmann_angle(&line(&[1.0, 1.0, 0.0]), &w).unwrap(), 0.0);
        assert_eq!(grassmann_angle(&Subspace::full(Field::Real, 3), &w).unwrap(), FRAC_PI_2);
        let t = grassmann_angle(&line(&[1.0, 1.0]), &line(&[1.0, 0.0])).unwrap();
        assert!((t - FRAC_PI_4).abs() < 1e-15);
        let zero = Subspace::zero(Field::Real, 3);
        assert_eq!(grassmann_angle(&zero, &w).unwrap(), 0.0);
        assert_eq!(grassmann_angle(&zero, &zero).unwrap(), 0.0);
        assert_eq!(grassmann_angle(&w, &zero).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn intersection_detects_shared_directions() {
        let mut rng = stream_rng(22, 0);
        let c = random_subspace(Field::Complex, 6, 2, &mut rng);
        let v = c.sum(&random_subspace(Field::Complex, 6, 1, &mut rng)).unwrap();
        let w = c.sum(&random_subspace(Field::Complex, 6, 2, &mut rng)).unwrap();
        let i = intersection(&v, &w, 1e-9).unwrap();
        assert_eq!(i.dim(), 2);
        let inner = random_subspace_within(&i, 1, &mut rng).unwrap();
        assert!(c.contains(&inner.ortho_basis()[0], 1e-9).unwrap());
    }

    #[test]
    fn field_mismatch_is_error() {
        let r = Subspace::coordinate(Field::Real, 2, &[0]);
        let c = Subspace::coordinate(Field::Complex, 2, &[0]);
        assert_eq!(projection_factor(&r, &c), Err(Error::FieldMismatch));
        let r3 = Subspace::coordinate(Field::Real, 3, &[0]);
        assert!(matches!(projection_factor(&r, &r3), Err(Error::DimensionMismatch { .. })));
    }
}
