use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field of a computation.
///
/// Every value carries its field tag; values of different fields never mix.
/// Real vectors store complex entries with an exactly zero imaginary part, so
/// one arithmetic path serves both fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Real dimension of one scalar of this field.
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }

    /// Exponent relating principal singular values to principal projection
    /// factors: `π = σ` over the reals, `π = σ²` over the complex numbers.
    pub fn factor_power(self) -> i32 {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }

    /// Raises a cosine-like quantity to the field's factor power.
    pub fn power(self, x: f64) -> f64 {
        match self {
            Field::Real => x,
            Field::Complex => x * x,
        }
    }

    pub(crate) fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

/// A vector of `Rⁿ` or `Cⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    field: Field,
    data: Vec<Complex64>,
}

impl Vector {
    pub fn real(entries: &[f64]) -> Self {
        Self {
            field: Field::Real,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn complex(entries: &[Complex64]) -> Self {
        Self {
            field: Field::Complex,
            data: entries.to_vec(),
        }
    }

    /// Builds a vector of the given field. Imaginary parts are discarded for
    /// real vectors.
    pub fn from_entries(field: Field, entries: Vec<Complex64>) -> Self {
        let data = match field {
            Field::Real => entries.into_iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
            Field::Complex => entries,
        };
        Self { field, data }
    }

    pub fn zeros(field: Field, n: usize) -> Self {
        Self {
            field,
            data: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// The `i`-th canonical basis vector (0-based).
    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.data[i] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.data[i]
    }

    pub(crate) fn check_compatible(&self, other: &Vector) -> Result<()> {
        self.field.check(other.field)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Unchecked inner product; callers guarantee compatibility.
    pub(crate) fn dot(&self, other: &Vector) -> Complex64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplies by a scalar. A real vector only accepts the real part.
    pub fn scale(&self, c: Complex64) -> Vector {
        let c = match self.field {
            Field::Real => Complex64::new(c.re, 0.0),
            Field::Complex => c,
        };
        Vector {
            field: self.field,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Vector {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// `self + c·other`, unchecked.
    pub(crate) fn axpy(&mut self, c: Complex64, other: &Vector) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(Complex64, Complex64) -> Complex64) -> Vector {
        Vector {
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Returns `v / ‖v‖`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale_real(1.0 / n))
    }

    /// Interleaves real and imaginary parts: `Cⁿ → R²ⁿ`. Real vectors are
    /// returned unchanged.
    pub fn realify(&self) -> Vector {
        match self.field {
            Field::Real => self.clone(),
            Field::Complex => Vector {
                field: Field::Real,
                data: self
                    .data
                    .iter()
                    .flat_map(|z| [Complex64::new(z.re, 0.0), Complex64::new(z.im, 0.0)])
                    .collect(),
            },
        }
    }

    /// Real parts of the entries.
    pub fn to_real_vec(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }
}

/// Inner product `⟨v, w⟩`, conjugate-linear in the first argument.
///
/// Over the reals this is the dot product. Over the complex numbers it is the
/// Hermitian product `Σ conj(vᵢ)·wᵢ`; the other linearity convention gives
/// the conjugate value and the same modulus, so every projection factor is
/// unaffected by the choice.
pub fn inner(v: &Vector, w: &Vector) -> Result<Complex64> {
    v.check_compatible(w)?;
    Ok(v.dot(w))
}

/// `Re⟨v, w⟩`, the real inner product of the underlying real space.
pub fn re_inner(v: &Vector, w: &Vector) -> Result<f64> {
    inner(v, w).map(|z| z.re)
}
