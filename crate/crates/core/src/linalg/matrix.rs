use num_complex::Complex64;

use super::vector::{Field, Vector};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense column-major matrix over `R` or `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(Field::Real, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(x, 0.0));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors. An empty list
    /// needs the field and row count supplied explicitly.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, v) in columns.iter().enumerate() {
            field.check(v.field())?;
            if v.dim() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: v.dim(),
                });
            }
            m.data[j * rows..(j + 1) * rows].copy_from_slice(v.entries());
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let z = match self.field {
            Field::Real => Complex64::new(z.re, 0.0),
            Field::Complex => z,
        };
        self.data[j * self.rows + i] = z;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_entries(self.field, self.column_slice(j).to_vec())
    }

    pub(crate) fn column_slice(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub(crate) fn column_slice_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b == ZERO {
                    continue;
                }
                for i in 0..self.rows {
                    out.data[j * self.rows + i] += self.get(i, k) * b;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Determinant by LU factorization with partial pivoting. Singular
    /// matrices give zero; the empty matrix gives one.
    pub fn det(&self) -> Result<Complex64> {
        let lu = Lu::factor(self)?;
        Ok(lu.det())
    }

    /// Solves `self · X = rhs` for square `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        Lu::factor(self)?.solve(rhs)
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Determinant of a square matrix.
pub fn det(m: &Matrix) -> Result<Complex64> {
    m.det()
}

/// Gram matrix `G[i][j] = ⟨vᵢ, vⱼ⟩`.
pub fn gram(vs: &[Vector]) -> Result<Matrix> {
    let first = vs.first().ok_or(Error::DimensionMismatch {
        expected: 1,
        found: 0,
    })?;
    cross_gram(vs, vs).map(|g| {
        debug_assert_eq!(g.field(), first.field());
        g
    })
}

/// Cross Gram matrix `G[i][j] = ⟨aᵢ, bⱼ⟩`. Empty inputs give an empty matrix
/// of the appropriate shape.
pub fn cross_gram(a: &[Vector], b: &[Vector]) -> Result<Matrix> {
    let field = a.first().or(b.first()).map_or(Field::Real, Vector::field);
    let mut g = Matrix::zeros(field, a.len(), b.len());
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            ai.check_compatible(bj)?;
            g.set(i, j, ai.dot(bj));
        }
    }
    Ok(g)
}

struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    fn factor(m: &Matrix) -> Result<Lu> {
        if m.rows != m.cols {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (pivot_row, pivot_abs) = (k..n)
                .map(|i| (i, lu.get(i, k).norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 {
                singular = true;
                continue;
            }
            if pivot_row != k {
                for j in 0..n {
                    let a = lu.get(k, j);
                    let b = lu.get(pivot_row, j);
                    lu.set(k, j, b);
                    lu.set(pivot_row, j, a);
                }
                perm.swap(k, pivot_row);
                sign = -sign;
            }
            let pivot = lu.get(k, k);
            for i in k + 1..n {
                let factor = lu.get(i, k) / pivot;
                lu.set(i, k, factor);
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let v = lu.get(i, j) - factor * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(Lu {
            lu,
            perm,
            sign,
            singular,
        })
    }

    fn det(&self) -> Complex64 {
        if self.singular {
            return ZERO;
        }
        let n = self.lu.rows;
        (0..n).fold(Complex64::new(self.sign, 0.0), |acc, i| acc * self.lu.get(i, i))
    }

    fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.lu.rows;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.rows,
            });
        }
        if self.singular {
            return Err(Error::DependentBasis { residual: 0.0 });
        }
        let field = self.lu.field;
        let mut x = Matrix::zeros(field, n, rhs.cols);
        for c in 0..rhs.cols {
            let mut y: Vec<Complex64> = self.perm.iter().map(|&p| rhs.get(p, c)).collect();
            for i in 0..n {
                for k in 0..i {
                    let l = self.lu.get(i, k);
                    y[i] = y[i] - l * y[k];
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let u = self.lu.get(i, k);
                    y[i] = y[i] - u * y[k];
                }
                y[i] /= self.lu.get(i, i);
            }
            for (i, v) in y.into_iter().enumerate() {
                x.set(i, c, v);
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(Field::Real, 3).det().unwrap(), ONE);
        let swap = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(swap.det().unwrap().re, -1.0);
        assert_eq!(Matrix::zeros(Field::Real, 0, 0).det().unwrap(), ONE);
        let singular = Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(singular.det().unwrap().norm() < 1e-15);
    }

    #[test]
    fn determinant_of_non_square_is_error() {
        let m = Matrix::zeros(Field::Real, 2, 3);
        assert!(matches!(m.det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn complex_determinant() {
        // [[i, 1], [1, i]] has determinant i·i − 1 = −2.
        let mut m = Matrix::zeros(Field::Complex, 2, 2);
        m.set(0, 0, Complex64::new(0.0, 1.0));
        m.set(0, 1, ONE);
        m.set(1, 0, ONE);
        m.set(1, 1, Complex64::new(0.0, 1.0));
        let d = m.det().unwrap();
        assert!((d - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gram_examples() {
        let e1 = Vector::real(&[1.0, 0.0]);
        let e2 = Vector::real(&[0.0, 1.0]);
        assert_eq!(gram(&[e1, e2]).unwrap(), Matrix::identity(Field::Real, 2));
        let g = gram(&[Vector::real(&[1.0, 1.0])]).unwrap();
        assert_eq!(g.get(0, 0).re, 2.0);
    }

    #[test]
    fn gram_of_rotated_pair_is_diagonal() {
        let v = Vector::real(&[1.0, 1.0, 1.0, 1.0]);
        let u = Vector::real(&[-1.0, 1.0, -1.0, 1.0]);
        let g = gram(&[v, u]).unwrap();
        assert_eq!(g, Matrix::from_real_rows(&[&[4.0, 0.0], &[0.0, 4.0]]));
        assert_eq!(g.det().unwrap().re, 16.0);
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = Matrix::from_real_rows(&[&[4.0, 1.0], &[2.0, 3.0]]);
        let b = Matrix::from_real_rows(&[&[1.0], &[2.0]]);
        let x = a.solve(&b).unwrap();
        let back = a.mul(&x).unwrap();
        assert!(back.sub(&b).unwrap().frobenius() < 1e-14);
    }
}
