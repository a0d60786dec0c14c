use num_complex::Complex64;

use super::matrix::Matrix;
use super::vector::{Field, Vector};
use crate::error::{Error, Result};
use crate::tol;

/// A linear subspace of `Rⁿ` or `Cⁿ`, kept as its spanning basis together
/// with an orthonormal basis of the same span.
///
/// The orthonormal basis is computed once, when the subspace is built, and
/// never changes afterwards. `dim() == 0` represents `{0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    ortho: Vec<Vector>,
}

impl Subspace {
    /// Span of linearly independent vectors.
    pub fn new(field: Field, ambient: usize, basis: Vec<Vector>) -> Result<Self> {
        for v in &basis {
            field.check(v.field())?;
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.dim(),
                });
            }
        }
        let ortho = orthonormalize(&basis)?;
        Ok(Self {
            field,
            ambient,
            basis,
            ortho,
        })
    }

    /// Span of a nonempty list of independent vectors; field and ambient
    /// dimension are taken from the first one.
    pub fn span(basis: Vec<Vector>) -> Result<Self> {
        let first = basis.first().ok_or(Error::ZeroSubspace)?;
        let (field, n) = (first.field(), first.dim());
        Self::new(field, n, basis)
    }

    /// Span of possibly dependent vectors: directions whose Gram–Schmidt
    /// residual falls below `rel_tol` times the largest input norm are
    /// dropped. The resulting basis is orthonormal.
    pub fn span_lenient(field: Field, ambient: usize, vectors: &[Vector], rel_tol: f64) -> Result<Self> {
        for v in vectors {
            field.check(v.field())?;
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.dim(),
                });
            }
        }
        let largest = vectors.iter().map(Vector::norm).fold(0.0, f64::max);
        let mut ortho: Vec<Vector> = Vec::new();
        let mut pool: Vec<Vector> = vectors.to_vec();
        loop {
            let best = pool
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let r = residual(&ortho, v);
                    (i, r.norm(), r)
                })
                .max_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((i, norm, r)) if norm > rel_tol * largest && norm > 0.0 => {
                    let r = residual(&ortho, &r);
                    ortho.push(r.scale_real(1.0 / r.norm()));
                    pool.swap_remove(i);
                }
                _ => break,
            }
        }
        Ok(Self::from_orthonormal(field, ambient, ortho))
    }

    /// Wraps vectors the caller guarantees to be orthonormal.
    pub fn from_orthonormal(field: Field, ambient: usize, ortho: Vec<Vector>) -> Self {
        Self {
            field,
            ambient,
            basis: ortho.clone(),
            ortho,
        }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Self::from_orthonormal(field, ambient, Vec::new())
    }

    /// The whole space, with the canonical basis.
    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| Vector::unit(field, ambient, i)).collect();
        Self::from_orthonormal(field, ambient, basis)
    }

    /// Coordinate subspace spanned by the canonical vectors with the given
    /// 0-based indices.
    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Self {
        let basis = indices.iter().map(|&i| Vector::unit(field, ambient, i)).collect();
        Self::from_orthonormal(field, ambient, basis)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension over the subspace's own field.
    pub fn dim(&self) -> usize {
        self.ortho.len()
    }

    /// Dimension of the underlying real space.
    pub fn real_dim(&self) -> usize {
        self.dim() * self.field.real_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.ortho.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn ortho_basis(&self) -> &[Vector] {
        &self.ortho
    }

    /// `n × k` matrix with the orthonormal basis as columns.
    pub fn ortho_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.ortho).expect("validated at construction")
    }

    pub(crate) fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field.check(other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vector(&self, v: &Vector) -> Result<()> {
        self.field.check(v.field())?;
        if v.dim() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &Vector) -> Result<Vector> {
        self.check_vector(v)?;
        let mut out = Vector::zeros(self.field, self.ambient);
        for q in &self.ortho {
            out.axpy(q.dot(v), q);
        }
        Ok(out)
    }

    /// Whether `v` lies in the subspace up to `rel_tol·‖v‖`.
    pub fn contains(&self, v: &Vector, rel_tol: f64) -> Result<bool> {
        let p = self.project(v)?;
        Ok(v.sub(&p)?.norm() <= rel_tol * v.norm())
    }

    /// Orthogonal complement in the ambient space.
    pub fn complement(&self) -> Subspace {
        let ortho = extend_orthonormal(self.field, self.ambient, self.ortho.clone(), self.ambient);
        Subspace::from_orthonormal(self.field, self.ambient, ortho[self.dim()..].to_vec())
    }

    /// Orthogonal complement of `inner` inside `self`. `inner` must be a
    /// subspace of `self`.
    pub fn complement_within(&self, inner: &Subspace) -> Result<Subspace> {
        self.check_compatible(inner)?;
        let ortho = extend_from(inner.ortho.clone(), &self.ortho, self.dim());
        Ok(Subspace::from_orthonormal(
            self.field,
            self.ambient,
            ortho[inner.dim().min(ortho.len())..].to_vec(),
        ))
    }

    /// `P_W(V)`, the image of this subspace under orthogonal projection onto
    /// `target`. Directions that collapse are dropped.
    pub fn projected_onto(&self, target: &Subspace) -> Result<Subspace> {
        self.check_compatible(target)?;
        let images = self
            .ortho
            .iter()
            .map(|v| target.project(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span_lenient(self.field, self.ambient, &images, tol::RANK_RELATIVE.sqrt())
    }

    /// Span of the union of the two subspaces.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let all: Vec<Vector> = self.ortho.iter().chain(&other.ortho).cloned().collect();
        Subspace::span_lenient(self.field, self.ambient, &all, tol::RANK_RELATIVE.sqrt())
    }

    /// Largest `|⟨a, b⟩|` between orthonormal basis vectors of the two
    /// subspaces.
    pub fn max_overlap(&self, other: &Subspace) -> Result<f64> {
        self.check_compatible(other)?;
        let mut worst: f64 = 0.0;
        for a in &self.ortho {
            for b in &other.ortho {
                worst = worst.max(a.dot(b).norm());
            }
        }
        Ok(worst)
    }

    /// The underlying real subspace of `R²ⁿ`, spanned by `bⱼ` and `i·bⱼ`
    /// for every basis vector `bⱼ`. Real subspaces are returned unchanged.
    pub fn realify(&self) -> Subspace {
        match self.field {
            Field::Real => self.clone(),
            Field::Complex => {
                let i = Complex64::new(0.0, 1.0);
                let doubled = |vs: &[Vector]| -> Vec<Vector> {
                    vs.iter().flat_map(|v| [v.realify(), v.scale(i).realify()]).collect()
                };
                Subspace {
                    field: Field::Real,
                    ambient: 2 * self.ambient,
                    basis: doubled(&self.basis),
                    ortho: doubled(&self.ortho),
                }
            }
        }
    }
}

/// Orthonormal basis of the span of `vectors`, by modified Gram–Schmidt with
/// one reorthogonalization pass.
///
/// Fails with [`Error::DependentBasis`] when some residual drops below
/// [`tol::RANK_RELATIVE`] times the largest input norm.
pub fn orthonormalize(vectors: &[Vector]) -> Result<Vec<Vector>> {
    let largest = vectors.iter().map(Vector::norm).fold(0.0, f64::max);
    let mut out: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if let Some(first) = out.first() {
            v.check_compatible(first)?;
        }
        let r = residual(&out, &residual(&out, v));
        let norm = r.norm();
        if norm <= tol::RANK_RELATIVE * largest || norm == 0.0 {
            return Err(Error::DependentBasis {
                residual: if largest > 0.0 { norm / largest } else { 0.0 },
            });
        }
        out.push(r.scale_real(1.0 / norm));
    }
    Ok(out)
}

/// Orthogonal projection of `v` onto `w`.
pub fn project(v: &Vector, w: &Subspace) -> Result<Vector> {
    w.project(v)
}

/// `v − Σ qⱼ⟨qⱼ, v⟩` applied sequentially (modified Gram–Schmidt).
fn residual(ortho: &[Vector], v: &Vector) -> Vector {
    let mut r = v.clone();
    for q in ortho {
        let c = q.dot(&r);
        r.axpy(-c, q);
    }
    r
}

/// Extends an orthonormal list to `target` vectors with canonical basis
/// vectors, always taking the candidate with the largest residual.
pub(crate) fn extend_orthonormal(field: Field, n: usize, existing: Vec<Vector>, target: usize) -> Vec<Vector> {
    let candidates: Vec<Vector> = (0..n).map(|i| Vector::unit(field, n, i)).collect();
    extend_from(existing, &candidates, target)
}

pub(crate) fn extend_from(mut existing: Vec<Vector>, candidates: &[Vector], target: usize) -> Vec<Vector> {
    while existing.len() < target {
        let best = candidates
            .iter()
            .map(|c| residual(&existing, c))
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()));
        let Some(r) = best else { break };
        let r = residual(&existing, &r);
        let norm = r.norm();
        if norm <= 1e-8 {
            break;
        }
        existing.push(r.scale_real(1.0 / norm));
    }
    existing
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Vector, b: &Vector, eps: f64) -> bool {
        a.sub(b).unwrap().norm() <= eps
    }

    #[test]
    fn orthonormalize_examples() {
        let q = orthonormalize(&[Vector::real(&[2.0, 0.0])]).unwrap();
        assert!(close(&q[0], &Vector::real(&[1.0, 0.0]), 1e-15));

        let q = orthonormalize(&[Vector::real(&[1.0, 0.0]), Vector::real(&[1.0, 1.0])]).unwrap();
        assert!(close(&q[0], &Vector::real(&[1.0, 0.0]), 1e-15));
        assert!(close(&q[1], &Vector::real(&[0.0, 1.0]), 1e-15));

        let s = 1.0 / 3f64.sqrt();
        let q = orthonormalize(&[Vector::real(&[1.0, 1.0, 1.0])]).unwrap();
        assert!(close(&q[0], &Vector::real(&[s, s, s]), 1e-15));
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let r = orthonormalize(&[Vector::real(&[1.0, 2.0]), Vector::real(&[2.0, 4.0])]);
        assert!(matches!(r, Err(Error::DependentBasis { .. })));
        let r = Subspace::span(vec![Vector::real(&[0.0, 0.0])]);
        assert!(matches!(r, Err(Error::DependentBasis { .. })));
    }

    #[test]
    fn dependence_is_scale_invariant() {
        let a = Vector::real(&[1e-20, 0.0]);
        let b = Vector::real(&[0.0, 1e-20]);
        assert!(orthonormalize(&[a, b]).is_ok());
    }

    #[test]
    fn idempotent_on_orthonormal_input() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let input = vec![Vector::real(&[h, h, 0.0]), Vector::real(&[-h, h, 0.0])];
        let q = orthonormalize(&input).unwrap();
        for (a, b) in q.iter().zip(&input) {
            assert!(close(a, b, 1e-15));
        }
    }

    #[test]
    fn projection_examples() {
        let x_axis = Subspace::span(vec![Vector::real(&[1.0, 0.0])]).unwrap();
        let p = project(&Vector::real(&[1.0, 1.0]), &x_axis).unwrap();
        assert_eq!(p, Vector::real(&[1.0, 0.0]));

        let full = Subspace::full(Field::Real, 2);
        let v = Vector::real(&[0.3, -0.7]);
        assert_eq!(project(&v, &full).unwrap(), v);

        let y_axis = Subspace::span(vec![Vector::real(&[0.0, 1.0])]).unwrap();
        assert_eq!(project(&Vector::real(&[3.0, 4.0]), &y_axis).unwrap(), Vector::real(&[0.0, 4.0]));
    }

    #[test]
    fn projection_mismatch() {
        let w = Subspace::full(Field::Real, 3);
        assert!(project(&Vector::real(&[1.0]), &w).is_err());
        let z = Vector::complex(&[Complex64::new(1.0, 0.0); 3]);
        assert_eq!(project(&z, &w), Err(Error::FieldMismatch));
    }

    #[test]
    fn complement_has_complementary_dimension() {
        let v = Subspace::span(vec![Vector::real(&[1.0, 2.0, 3.0, 4.0]), Vector::real(&[0.0, 1.0, 0.0, -1.0])]).unwrap();
        let c = v.complement();
        assert_eq!(c.dim(), 2);
        assert!(v.max_overlap(&c).unwrap() < 1e-14);
        assert_eq!(Subspace::zero(Field::Real, 3).complement().dim(), 3);
        assert_eq!(Subspace::full(Field::Complex, 3).complement().dim(), 0);
    }

    #[test]
    fn realify_complex_coordinate_line() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let line = Subspace::span(vec![Vector::complex(&[one, zero])]).unwrap();
        let r = line.realify();
        assert_eq!(r.ambient_dim(), 4);
        assert_eq!(r.basis(), &[Vector::real(&[1.0, 0.0, 0.0, 0.0]), Vector::real(&[0.0, 1.0, 0.0, 0.0])]);
    }

    #[test]
    fn realify_complex_line_of_general_vector() {
        let (a, b, c, d) = (0.3, -1.2, 2.0, 0.5);
        let v = Vector::complex(&[Complex64::new(a, b), Complex64::new(c, d)]);
        let r = Subspace::span(vec![v]).unwrap().realify();
        assert_eq!(r.basis()[0], Vector::real(&[a, b, c, d]));
        assert_eq!(r.basis()[1], Vector::real(&[-b, a, -d, c]));
    }

    #[test]
    fn span_lenient_drops_dependent_directions() {
        let vs = [
            Vector::real(&[1.0, 0.0, 0.0]),
            Vector::real(&[2.0, 0.0, 0.0]),
            Vector::real(&[0.0, 1.0, 0.0]),
        ];
        let s = Subspace::span_lenient(Field::Real, 3, &vs, 1e-12).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn complement_within_parent() {
        let w = Subspace::coordinate(Field::Real, 4, &[0, 1, 2]);
        let u = Subspace::span(vec![Vector::real(&[1.0, 1.0, 0.0, 0.0])]).unwrap();
        let c = w.complement_within(&u).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.max_overlap(&u).unwrap() < 1e-14);
        for q in c.ortho_basis() {
            assert!(w.contains(q, 1e-14).unwrap());
        }
    }
}
