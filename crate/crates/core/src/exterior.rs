//! Blades and the pieces of exterior algebra that projection factors need.
//!
//! A [`Blade`] is kept as its list of factors, so inner products and norms
//! are Gram determinants of those factors. Expansion into coordinates over
//! the canonical basis of `ΛᵖX` only happens for the interior product, whose
//! result need not be decomposable.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cross_gram, inner, Field, Matrix, Subspace, Vector};

/// Strictly increasing list of 0-based coordinate indices. Displayed 1-based.
///
/// Ordering is lexicographic, which for equal lengths is the order in which
/// [`MultiIndex::all`] enumerates them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, ambient: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMultiIndex(format!("{indices:?} is not strictly increasing")));
        }
        if let Some(&last) = indices.last() {
            if last >= ambient {
                return Err(Error::InvalidMultiIndex(format!("{indices:?} exceeds dimension {ambient}")));
            }
        }
        Ok(Self(indices))
    }

    /// All `C(n, q)` multi-indices of size `q`, in lexicographic order.
    pub fn all(n: usize, q: usize) -> Vec<MultiIndex> {
        (0..n).combinations(q).map(MultiIndex).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_disjoint(&self, other: &MultiIndex) -> bool {
        self.0.iter().all(|i| !other.0.contains(i))
    }

    /// Sorted union together with the sign of the permutation that sorts the
    /// concatenation `self ++ other`. `None` if the two overlap.
    fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, f64)> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions = self
            .0
            .iter()
            .map(|i| other.0.iter().filter(|&&j| j < *i).count())
            .sum::<usize>();
        let mut merged: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        merged.sort_unstable();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        Some((MultiIndex(merged), sign))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&i| i >= 9);
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        f.write_str(&parts.join(if wide { "," } else { "" }))
    }
}

/// Decomposable `p`-vector `v₁ ∧ … ∧ v_p`. Grade 0 is the scalar 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Blade {
    field: Field,
    ambient: usize,
    factors: Vec<Vector>,
}

impl Blade {
    pub fn new(field: Field, ambient: usize, factors: Vec<Vector>) -> Result<Self> {
        for v in &factors {
            field.check_vector(v, ambient)?;
        }
        if factors.len() > ambient {
            return Err(Error::GradeOverflow {
                grade: factors.len(),
                ambient,
            });
        }
        Ok(Self {
            field,
            ambient,
            factors,
        })
    }

    /// Blade of a nonempty factor list; field and dimension come from the
    /// first factor.
    pub fn from_vectors(factors: Vec<Vector>) -> Result<Self> {
        let first = factors.first().ok_or(Error::ZeroBlade)?;
        let (field, n) = (first.field(), first.dim());
        Self::new(field, n, factors)
    }

    pub fn scalar(field: Field, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            factors: Vec::new(),
        }
    }

    /// Unit blade of a subspace, from its orthonormal basis.
    pub fn unit_of(s: &Subspace) -> Self {
        Self {
            field: s.field(),
            ambient: s.ambient_dim(),
            factors: s.ortho_basis().to_vec(),
        }
    }

    /// Blade of a subspace's spanning basis (generally not unit).
    pub fn of_basis(s: &Subspace) -> Self {
        Self {
            field: s.field(),
            ambient: s.ambient_dim(),
            factors: s.basis().to_vec(),
        }
    }

    /// The coordinate blade `e_{i₁} ∧ … ∧ e_{i_q}`.
    pub fn coordinate(field: Field, ambient: usize, index: &MultiIndex) -> Self {
        Self {
            field,
            ambient,
            factors: index.indices().iter().map(|&i| Vector::unit(field, ambient, i)).collect(),
        }
    }

    pub fn grade(&self) -> usize {
        self.factors.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn factors(&self) -> &[Vector] {
        &self.factors
    }

    /// Multiplies the `i`-th factor by `c`.
    pub fn scale_factor(&self, i: usize, c: Complex64) -> Blade {
        let mut out = self.clone();
        out.factors[i] = out.factors[i].scale(c);
        out
    }

    fn check_compatible(&self, other: &Blade) -> Result<()> {
        self.field.check(other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates over the canonical basis of `ΛᵖX`: the coefficient of
    /// `e_I` is the `p × p` minor of the factor matrix on rows `I`.
    pub fn expand(&self) -> Multivector {
        let p = self.grade();
        let m = Matrix::from_columns(self.field, self.ambient, &self.factors).expect("validated");
        let coeffs = MultiIndex::all(self.ambient, p)
            .into_iter()
            .map(|idx| {
                let mut minor = Matrix::zeros(self.field, p, p);
                for (r, &i) in idx.indices().iter().enumerate() {
                    for c in 0..p {
                        minor.set(r, c, m.get(i, c));
                    }
                }
                let d = minor.det().expect("square");
                (idx, d)
            })
            .collect();
        Multivector {
            field: self.field,
            ambient: self.ambient,
            grade: p,
            coeffs,
        }
    }
}

impl Field {
    fn check_vector(self, v: &Vector, ambient: usize) -> Result<()> {
        self.check(v.field())?;
        if v.dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.dim(),
            });
        }
        Ok(())
    }
}

/// Homogeneous `q`-vector in coordinates over the canonical basis of `ΛᵠX`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    field: Field,
    ambient: usize,
    grade: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl Multivector {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs.get(index).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ conj(aᵢ)·bᵢ` over the (orthonormal) coordinate basis.
    pub fn inner(&self, other: &Multivector) -> Result<Complex64> {
        self.field.check(other.field)?;
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                left: self.grade,
                right: other.grade,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(k, a)| a.conj() * other.coefficient(k))
            .sum())
    }
}

/// `⟨ν, ω⟩ = det(⟨vᵢ, wⱼ⟩)`.
pub fn blade_inner(nu: &Blade, omega: &Blade) -> Result<Complex64> {
    nu.check_compatible(omega)?;
    if nu.grade() != omega.grade() {
        return Err(Error::GradeMismatch {
            left: nu.grade(),
            right: omega.grade(),
        });
    }
    cross_gram(&nu.factors, &omega.factors)?.det()
}

/// `‖ν‖ = √det Gram(factors)`: the volume of the parallelotope on the
/// factors (real), or the square root of the `2p`-volume of the parallelotope
/// on `vᵢ, i·vᵢ` (complex).
///
/// Evaluated as the product of successive Gram–Schmidt heights, which equals
/// the square root of the Gram determinant and stays accurate when the
/// factors are nearly dependent.
pub fn blade_norm(nu: &Blade) -> f64 {
    let mut ortho: Vec<Vector> = Vec::with_capacity(nu.grade());
    let mut volume = 1.0;
    for v in &nu.factors {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &ortho {
                let c = inner(q, &r).expect("same space");
                r = r.sub(&q.scale(c)).expect("same space");
            }
        }
        let h = r.norm();
        if h == 0.0 {
            return 0.0;
        }
        volume *= h;
        ortho.push(r.scale_real(1.0 / h));
    }
    volume
}

/// `ν ∧ ω`, the concatenation of the factor lists.
pub fn wedge(nu: &Blade, omega: &Blade) -> Result<Blade> {
    nu.check_compatible(omega)?;
    let grade = nu.grade() + omega.grade();
    if grade > nu.ambient {
        return Err(Error::GradeOverflow {
            grade,
            ambient: nu.ambient,
        });
    }
    let factors = nu.factors.iter().chain(&omega.factors).cloned().collect();
    Ok(Blade {
        field: nu.field,
        ambient: nu.ambient,
        factors,
    })
}

/// Interior product `ν ⌟ ω`, the `(q−p)`-vector adjoint to wedging with `ν`:
/// `⟨ν ⌟ ω, μ⟩ = ⟨ω, ν ∧ μ⟩` for every `(q−p)`-vector `μ`.
///
/// In coordinates, `(ν ⌟ ω)_J = Σ_I conj(ν_I)·sign(I, J)·ω_{I∪J}` over the
/// `I` disjoint from `J`.
pub fn interior(nu: &Blade, omega: &Blade) -> Result<Multivector> {
    nu.check_compatible(omega)?;
    let (p, q) = (nu.grade(), omega.grade());
    if p > q {
        return Err(Error::GradeMismatch { left: p, right: q });
    }
    let nu_c = nu.expand();
    let omega_c = omega.expand();
    let coeffs = MultiIndex::all(nu.ambient, q - p)
        .into_iter()
        .map(|j| {
            let value = nu_c
                .iter()
                .filter_map(|(i, &a)| {
                    let (k, sign) = i.merge(&j)?;
                    Some(a.conj() * omega_c.coefficient(&k) * sign)
                })
                .sum::<Complex64>();
            (j, value)
        })
        .collect();
    Ok(Multivector {
        field: nu.field,
        ambient: nu.ambient,
        grade: q - p,
        coeffs,
    })
}

/// Factor-wise projection `P v₁ ∧ … ∧ P v_p` onto `ΛᵖW`.
pub fn blade_project(nu: &Blade, w: &Subspace) -> Result<Blade> {
    let factors = nu
        .factors
        .iter()
        .map(|v| w.project(v))
        .collect::<Result<Vec<_>>>()?;
    Blade::new(nu.field, nu.ambient, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_nonzero_scalar, random_vector, stream_rng};

    fn e(n: usize, i: usize) -> Vector {
        Vector::unit(Field::Real, n, i)
    }

    fn blade(vs: &[Vector]) -> Blade {
        Blade::from_vectors(vs.to_vec()).unwrap()
    }

    #[test]
    fn multi_index_enumeration_is_lexicographic() {
        let all = MultiIndex::all(4, 2);
        let labels: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(labels, ["12", "13", "14", "23", "24", "34"]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(MultiIndex::all(5, 0).len(), 1);
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(vec![0, 2], 3).is_ok());
        assert!(MultiIndex::new(vec![2, 0], 3).is_err());
        assert!(MultiIndex::new(vec![1, 1], 3).is_err());
        assert!(MultiIndex::new(vec![3], 3).is_err());
        assert_eq!(MultiIndex::new(vec![0, 9], 10).unwrap().to_string(), "1,10");
    }

    #[test]
    fn inner_of_coordinate_blades() {
        let e12 = blade(&[e(3, 0), e(3, 1)]);
        let e13 = blade(&[e(3, 0), e(3, 2)]);
        assert_eq!(blade_inner(&e12, &e12).unwrap().re, 1.0);
        assert_eq!(blade_inner(&e12, &e13).unwrap().norm(), 0.0);
        assert!(matches!(
            blade_inner(&e12, &blade(&[e(3, 0)])),
            Err(Error::GradeMismatch { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(blade_norm(&blade(&[e(2, 0), e(2, 1)])), 1.0);
        let b = blade(&[e(2, 0).scale_real(2.0), e(2, 1).scale_real(3.0)]);
        assert!((blade_norm(&b) - 6.0).abs() < 1e-14);
        let v = Vector::real(&[1.0, 1.0, 1.0, 1.0]);
        let u = Vector::real(&[-1.0, 1.0, -1.0, 1.0]);
        assert!((blade_norm(&blade(&[v, u])) - 4.0).abs() < 1e-14);
        assert_eq!(blade_norm(&Blade::scalar(Field::Real, 3)), 1.0);
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&blade(&[e(3, 0)]), &blade(&[e(3, 1)])).unwrap();
        assert_eq!(w.factors(), &[e(3, 0), e(3, 1)]);
        assert_eq!(blade_norm(&w), 1.0);
        let v = blade(&[Vector::real(&[1.0, 2.0, 3.0])]);
        assert!(blade_norm(&wedge(&v, &v).unwrap()) < 1e-7);
        let big = blade(&[e(2, 0), e(2, 1)]);
        assert!(matches!(wedge(&big, &blade(&[e(2, 0)])), Err(Error::GradeOverflow { .. })));
    }

    #[test]
    fn interior_examples() {
        let e12 = blade(&[e(3, 0), e(3, 1)]);
        let r = interior(&blade(&[e(3, 0)]), &e12).unwrap();
        let idx = |v: Vec<usize>| MultiIndex::new(v, 3).unwrap();
        assert_eq!(r.coefficient(&idx(vec![1])).re, 1.0);
        assert_eq!(r.norm(), 1.0);
        let r = interior(&blade(&[e(3, 2)]), &e12).unwrap();
        assert_eq!(r.norm(), 0.0);
        assert!(interior(&e12, &blade(&[e(3, 0)])).is_err());
    }

    #[test]
    fn scalar_interior_is_identity() {
        let mut rng = stream_rng(3, 0);
        let omega = blade(&[random_vector(Field::Complex, 4, &mut rng), random_vector(Field::Complex, 4, &mut rng)]);
        let r = interior(&Blade::scalar(Field::Complex, 4), &omega).unwrap();
        let expanded = omega.expand();
        for (k, z) in expanded.iter() {
            assert!((r.coefficient(k) - z).norm() < 1e-15);
        }
    }

    #[test]
    fn adjunction_exhaustive_small_dimensions() {
        let mut rng = stream_rng(4, 0);
        for field in [Field::Real, Field::Complex] {
            for n in 1..=6 {
                for q in 0..=n {
                    for p in 0..=q {
                        let nu = Blade::new(field, n, (0..p).map(|_| random_vector(field, n, &mut rng)).collect()).unwrap();
                        let omega = Blade::new(field, n, (0..q).map(|_| random_vector(field, n, &mut rng)).collect()).unwrap();
                        let contracted = interior(&nu, &omega).unwrap();
                        for j in MultiIndex::all(n, q - p) {
                            let mu = Blade::coordinate(field, n, &j);
                            let lhs = contracted.coefficient(&j).conj();
                            let rhs = blade_inner(&omega, &wedge(&nu, &mu).unwrap()).unwrap();
                            assert!((lhs - rhs).norm() < 1e-10, "{field} n={n} p={p} q={q} J={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_matches_gram_inner_product() {
        let mut rng = stream_rng(6, 0);
        for field in [Field::Real, Field::Complex] {
            let a = Blade::new(field, 5, (0..3).map(|_| random_vector(field, 5, &mut rng)).collect()).unwrap();
            let b = Blade::new(field, 5, (0..3).map(|_| random_vector(field, 5, &mut rng)).collect()).unwrap();
            let via_coords = a.expand().inner(&b.expand()).unwrap();
            let via_gram = blade_inner(&a, &b).unwrap();
            assert!((via_coords - via_gram).norm() < 1e-12);
        }
    }

    #[test]
    fn rescaling_a_factor_conjugates_into_the_inner_product() {
        let mut rng = stream_rng(8, 0);
        let field = Field::Complex;
        let a = Blade::new(field, 4, (0..2).map(|_| random_vector(field, 4, &mut rng)).collect()).unwrap();
        let b = Blade::new(field, 4, (0..2).map(|_| random_vector(field, 4, &mut rng)).collect()).unwrap();
        let c = random_nonzero_scalar(field, &mut rng);
        let scaled = blade_inner(&a.scale_factor(1, c), &b).unwrap();
        let expected = c.conj() * blade_inner(&a, &b).unwrap();
        assert!((scaled - expected).norm() < 1e-13);
        let swapped = blade_inner(&b, &a).unwrap();
        assert!((swapped - blade_inner(&a, &b).unwrap().conj()).norm() < 1e-13);
    }

    #[test]
    fn projection_onto_containing_and_orthogonal_planes() {
        let e12 = blade(&[e(3, 0), e(3, 1)]);
        let plane = Subspace::coordinate(Field::Real, 3, &[0, 1]);
        assert_eq!(blade_project(&e12, &plane).unwrap(), e12);
        let other = Subspace::coordinate(Field::Real, 3, &[0, 2]);
        assert_eq!(blade_norm(&blade_project(&e12, &other).unwrap()), 0.0);
    }
}
