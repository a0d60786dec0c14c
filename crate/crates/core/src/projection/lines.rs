use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, Field, Subspace, Vector};

/// Which line a nonzero vector `v` determines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineMode {
    /// `Rv`, a real line (inside the underlying real space when `v` is
    /// complex).
    RealLine,
    /// `Cv`, a complex line; needs a complex `v` and a complex `W`.
    ComplexLine,
}

/// `π_{Rv,W} = ‖Pv‖/‖v‖` or `π_{Cv,W} = ‖Pv‖²/‖v‖²`.
pub fn line_factor(v: &Vector, w: &Subspace, mode: LineMode) -> Result<f64> {
    if mode == LineMode::ComplexLine && v.field() != Field::Complex {
        return Err(Error::FieldMismatch);
    }
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let ratio = (w.project(v)?.norm() / norm).min(1.0);
    Ok(match mode {
        LineMode::RealLine => ratio,
        LineMode::ComplexLine => ratio * ratio,
    })
}

/// Euclidean angle `θ_{v,w} ∈ [0, π]`, with `cos θ = Re⟨v,w⟩/(‖v‖‖w‖)`.
pub fn euclidean_angle(v: &Vector, w: &Vector) -> Result<f64> {
    let denom = v.norm() * w.norm();
    if denom == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((inner(v, w)?.re / denom).clamp(-1.0, 1.0).acos())
}

/// Hermitian angle `γ_{v,w} ∈ [0, π/2]`, with `cos γ = |⟨v,w⟩|/(‖v‖‖w‖)`.
pub fn hermitian_angle(v: &Vector, w: &Vector) -> Result<f64> {
    let denom = v.norm() * w.norm();
    if denom == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((inner(v, w)?.norm() / denom).clamp(0.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::projection_factor;
    use crate::random::{random_subspace, random_vector, stream_rng};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn examples() {
        let w = Subspace::coordinate(Field::Real, 2, &[0]);
        assert_eq!(line_factor(&Vector::real(&[3.0, 0.0]), &w, LineMode::RealLine).unwrap(), 1.0);
        let v = Vector::real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!((line_factor(&v, &w, LineMode::RealLine).unwrap() - FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(
            line_factor(&Vector::real(&[0.0, 0.0]), &w, LineMode::RealLine),
            Err(Error::ZeroVector)
        );
        assert_eq!(line_factor(&v, &w, LineMode::ComplexLine), Err(Error::FieldMismatch));
    }

    #[test]
    fn angle_corollaries() {
        let mut rng = stream_rng(51, 0);
        for _ in 0..20 {
            let v = random_vector(Field::Complex, 4, &mut rng);
            let w = random_vector(Field::Complex, 4, &mut rng);
            let cw = Subspace::span(vec![w.clone()]).unwrap();
            // Real line of w inside the underlying real space.
            let rw = Subspace::span(vec![w.realify()]).unwrap();
            let rv = Subspace::span(vec![v.realify()]).unwrap();

            let theta = euclidean_angle(&v, &w).unwrap();
            let gamma = hermitian_angle(&v, &w).unwrap();
            assert!((projection_factor(&rv, &rw).unwrap() - theta.cos().abs()).abs() < 1e-12);
            assert!((line_factor(&v, &cw, LineMode::RealLine).unwrap() - gamma.cos()).abs() < 1e-12);
            assert!((line_factor(&v, &cw, LineMode::ComplexLine).unwrap() - gamma.cos().powi(2)).abs() < 1e-12);

            // |⟨v,w⟩|² = ‖v‖²‖w‖²·π_{Cv,Cw}
            let cv = Subspace::span(vec![v.clone()]).unwrap();
            let fidelity = inner(&v, &w).unwrap().norm_sqr() / (v.norm_sqr() * w.norm_sqr());
            assert!((projection_factor(&cv, &cw).unwrap() - fidelity).abs() < 1e-12);
        }
    }

    #[test]
    fn line_factor_matches_subspace_factor() {
        let mut rng = stream_rng(52, 0);
        for field in [Field::Real, Field::Complex] {
            let v = random_vector(field, 6, &mut rng);
            let w = random_subspace(field, 6, 3, &mut rng);
            let line = Subspace::span(vec![v.clone()]).unwrap();
            let mode = match field {
                Field::Real => LineMode::RealLine,
                Field::Complex => LineMode::ComplexLine,
            };
            let a = line_factor(&v, &w, mode).unwrap();
            let b = projection_factor(&line, &w).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
