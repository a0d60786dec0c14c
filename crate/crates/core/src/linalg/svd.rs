//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Column pairs of the working matrix are rotated until they are mutually
//! orthogonal; the column norms are then the singular values and the
//! accumulated rotations the right singular vectors. Complex pairs are first
//! phase-aligned so the rotation itself stays real.

use num_complex::Complex64;

use super::matrix::Matrix;
use super::subspace::extend_orthonormal;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::tol;

/// Thin SVD `M = U·diag(σ)·Vᴴ` with `k = min(rows, cols)` singular values.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × k`, orthonormal columns.
    pub u: Matrix,
    /// Descending, non-negative.
    pub sigma: Vec<f64>,
    /// `cols × k`, orthonormal columns.
    pub v: Matrix,
    /// Number of sweeps performed.
    pub sweeps: usize,
}

impl Svd {
    /// Rebuilds `U·diag(σ)·Vᴴ`.
    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for (j, &s) in self.sigma.iter().enumerate() {
            for z in us.column_slice_mut(j) {
                *z *= s;
            }
        }
        us.mul(&self.v.adjoint()).expect("shapes agree by construction")
    }
}

/// Computes the thin SVD of any dense matrix.
pub fn svd(m: &Matrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NoConvergence { sweeps: 0 });
    }
    if m.rows() < m.cols() {
        let t = tall_svd(&m.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
            sweeps: t.sweeps,
        });
    }
    tall_svd(m)
}

fn tall_svd(m: &Matrix) -> Result<Svd> {
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = Matrix::identity(field, cols);
    let scale = m.frobenius().powi(2);
    let mut sweeps = 0;

    if scale > 0.0 {
        loop {
            if sweeps == tol::SVD_MAX_SWEEPS {
                return Err(Error::NoConvergence { sweeps });
            }
            sweeps += 1;
            let mut off = 0.0;
            let mut rotated = false;
            for p in 0..cols {
                for q in p + 1..cols {
                    let alpha = col_norm_sqr(&a, p);
                    let beta = col_norm_sqr(&a, q);
                    let g: Complex64 = a
                        .column_slice(p)
                        .iter()
                        .zip(a.column_slice(q))
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    let gabs = g.norm();
                    off += 2.0 * gabs * gabs;
                    if gabs == 0.0 || gabs <= f64::EPSILON * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let phase = (g / gabs).conj();
                    let zeta = (beta - alpha) / (2.0 * gabs);
                    let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                    let c = 1.0 / t.hypot(1.0);
                    let s = c * t;
                    rotate(&mut a, p, q, c, s, phase);
                    rotate(&mut v, p, q, c, s, phase);
                }
            }
            if off.sqrt() <= tol::SVD_OFF_DIAGONAL * scale || !rotated {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols).map(|j| col_norm_sqr(&a, j).sqrt()).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let negligible = sigma.first().copied().unwrap_or(0.0) * f64::EPSILON * (rows.max(1) as f64);

    let mut u_cols: Vec<Vector> = Vec::with_capacity(cols);
    let mut v_cols: Vec<Vector> = Vec::with_capacity(cols);
    for (&j, &s) in order.iter().zip(&sigma) {
        v_cols.push(v.column(j));
        if s > negligible && s > 0.0 {
            u_cols.push(a.column(j).scale_real(1.0 / s));
        } else {
            break;
        }
    }
    let u_cols = extend_orthonormal(field, rows, u_cols, cols);
    for &j in &order[v_cols.len()..] {
        v_cols.push(v.column(j));
    }

    Ok(Svd {
        u: Matrix::from_columns(field, rows, &u_cols)?,
        sigma,
        v: Matrix::from_columns(field, cols, &v_cols)?,
        sweeps,
    })
}

fn col_norm_sqr(a: &Matrix, j: usize) -> f64 {
    a.column_slice(j).iter().map(|z| z.norm_sqr()).sum()
}

/// Applies `(x, y) ← (c·x − s·φ·y, s·x + c·φ·y)` to columns `p`, `q`.
fn rotate(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let rows = a.rows();
    for i in 0..rows {
        let x = a.get(i, p);
        let y = a.get(i, q) * phase;
        a.set(i, p, x * c - y * s);
        a.set(i, q, x * s + y * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                let re = rng.random_range(-1.0..1.0);
                let im = if field == Field::Complex { rng.random_range(-1.0..1.0) } else { 0.0 };
                m.set(i, j, Complex64::new(re, im));
            }
        }
        m
    }

    fn orthonormality_defect(q: &Matrix) -> f64 {
        let g = q.adjoint().mul(q).unwrap();
        g.sub(&Matrix::identity(q.field(), q.cols())).unwrap().frobenius()
    }

    #[test]
    fn diagonal_matrix() {
        let m = Matrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![3.0, 1.0]);
    }

    #[test]
    fn ascending_diagonal_is_sorted() {
        let m = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 3.0]]);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![3.0, 1.0]);
        assert!(s.reconstruct().sub(&m).unwrap().frobenius() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::zeros(Field::Real, 2, 2);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        assert!(orthonormality_defect(&s.u) < 1e-15);
        assert!(orthonormality_defect(&s.v) < 1e-15);
    }

    #[test]
    fn cosine_of_forty_five_degrees() {
        // Q_W* Q_V for V = span{(1,1)/√2}, W = span{e₁}.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = Matrix::from_real_rows(&[&[h]]);
        let s = svd(&m).unwrap();
        assert!((s.sigma[0] - h).abs() < 1e-16);
    }

    #[test]
    fn random_reconstruction_both_fields_and_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Real, Field::Complex] {
            for (r, c) in [(1, 1), (3, 2), (2, 3), (6, 6), (8, 3), (3, 8), (16, 9)] {
                let m = random_matrix(field, r, c, &mut rng);
                let s = svd(&m).unwrap();
                let err = s.reconstruct().sub(&m).unwrap().frobenius();
                assert!(err <= 1e-10 * m.frobenius(), "{field} {r}x{c}: {err}");
                assert!(orthonormality_defect(&s.u) < 1e-10);
                assert!(orthonormality_defect(&s.v) < 1e-10);
                assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
                assert!(s.sigma.iter().all(|&x| x >= 0.0));
            }
        }
    }

    #[test]
    fn rank_deficient_keeps_orthonormal_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let left = random_matrix(Field::Complex, 5, 2, &mut rng);
        let right = random_matrix(Field::Complex, 2, 4, &mut rng);
        let m = left.mul(&right).unwrap();
        let s = svd(&m).unwrap();
        assert!(s.sigma[2] < 1e-14 && s.sigma[3] < 1e-14);
        assert!(orthonormality_defect(&s.u) < 1e-10);
        assert!(s.reconstruct().sub(&m).unwrap().frobenius() < 1e-12);
    }

    #[test]
    fn non_finite_input_fails() {
        let m = Matrix::from_real_rows(&[&[f64::NAN]]);
        assert!(matches!(svd(&m), Err(Error::NoConvergence { .. })));
    }
}
