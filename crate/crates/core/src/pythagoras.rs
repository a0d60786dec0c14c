//! Orthogonal partitions, coordinate subspaces and the generalized
//! Pythagorean identities they satisfy.
//!
//! Factor identities (over `R` / over `C`):
//!
//! - line `L`, partition `{V_j}`: `Σ π²_{L,V_j} = 1` / `Σ π_{L,V_j} = 1`;
//! - `p`-dimensional `V`, `q`-dimensional coordinate subspaces `V_I`:
//!   `Σ π²_{V,V_I} = C(n−p, n−q)` when `p ≤ q`, `Σ π²_{V_I,V} = C(p, q)` when
//!   `p > q` (unsquared over `C`).
//!
//! Measure identities: for `S ⊂ V` and `p ≤ q`,
//! `Σ |S_I|²_p = C(n−p, n−q)·|S|²_p` over `R` and
//! `Σ |S_I|_{2p} = C(n−p, n−q)·|S|_{2p}` over `C`, where `S_I` is the
//! projection of `S` on `V_I`. Lines and partitions are the case `p = 1`
//! with the parts in place of the `V_I`.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::MultiIndex;
use crate::linalg::{Field, Subspace, Vector};
use crate::measure::{
    monte_carlo_measure, parallelotope_measure, parallelotope_measure_sq, project_parallelotope,
    projected_set_measure, Parallelotope, SampledSet,
};
use crate::projection::projection_factor;
use crate::random::{random_dims, random_partition_parts};
use crate::report::{SumReport, Term};
use crate::tol;

/// Mutually orthogonal subspaces whose direct sum is the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalPartition {
    field: Field,
    ambient: usize,
    parts: Vec<Subspace>,
}

impl OrthogonalPartition {
    pub fn new(parts: Vec<Subspace>) -> Result<Self> {
        let first = parts.first().ok_or(Error::IncompletePartition { sum: 0, ambient: 0 })?;
        let (field, ambient) = (first.field(), first.ambient_dim());
        for part in &parts {
            first.check_compatible(part)?;
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let overlap = parts[i].max_overlap(&parts[j])?;
                if overlap > tol::ORTHOGONALITY {
                    return Err(Error::NotOrthogonal {
                        first: i,
                        second: j,
                        overlap,
                    });
                }
            }
        }
        let sum: usize = parts.iter().map(Subspace::dim).sum();
        if sum != ambient {
            return Err(Error::IncompletePartition { sum, ambient });
        }
        Ok(Self { field, ambient, parts })
    }

    /// Partition into spans of groups of canonical basis vectors.
    pub fn coordinate(field: Field, ambient: usize, groups: &[Vec<usize>]) -> Result<Self> {
        Self::new(groups.iter().map(|g| Subspace::coordinate(field, ambient, g)).collect())
    }

    /// Random partition into `k` parts of random positive dimensions.
    pub fn random<R: Rng + ?Sized>(field: Field, ambient: usize, k: usize, rng: &mut R) -> Self {
        let dims = random_dims(ambient, k, rng);
        let parts = random_partition_parts(field, ambient, &dims, rng);
        Self {
            field,
            ambient,
            parts,
        }
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
}

/// The `C(n, q)` coordinate subspaces `V_I` of an orthogonal basis, in
/// lexicographic order of `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateFamily {
    field: Field,
    basis: Vec<Vector>,
    q: usize,
    members: Vec<(MultiIndex, Subspace)>,
}

impl CoordinateFamily {
    /// `basis` must be `n` nonzero, mutually orthogonal vectors of an
    /// `n`-dimensional space; it is normalized internally.
    pub fn new(basis: Vec<Vector>, q: usize) -> Result<Self> {
        let first = basis.first().ok_or(Error::ZeroSubspace)?;
        let (field, n) = (first.field(), first.dim());
        if basis.len() != n {
            return Err(Error::IncompletePartition {
                sum: basis.len(),
                ambient: n,
            });
        }
        let unit: Vec<Vector> = basis
            .iter()
            .map(|b| {
                first.check_compatible(b)?;
                b.normalized().ok_or(Error::ZeroVector)
            })
            .collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let overlap = unit[i].dot(&unit[j]).norm();
                if overlap > tol::ORTHOGONALITY {
                    return Err(Error::NotOrthogonal {
                        first: i,
                        second: j,
                        overlap,
                    });
                }
            }
        }
        if q == 0 || q > n {
            return Err(Error::GradeOverflow { grade: q, ambient: n });
        }
        let members = MultiIndex::all(n, q)
            .into_iter()
            .map(|idx| {
                let vs = idx.indices().iter().map(|&i| unit[i].clone()).collect();
                Subspace::new(field, n, vs).map(|s| (idx, s))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            field,
            basis: unit,
            q,
            members,
        })
    }

    /// Coordinate subspaces of the canonical basis.
    pub fn canonical(field: Field, n: usize, q: usize) -> Result<Self> {
        Self::new((0..n).map(|i| Vector::unit(field, n, i)).collect(), q)
    }

    pub fn members(&self) -> &[(MultiIndex, Subspace)] {
        &self.members
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `π²` over `R`, `π` over `C`: the summand of every factor identity.
fn summand(field: Field, pi: f64) -> f64 {
    match field {
        Field::Real => pi * pi,
        Field::Complex => pi,
    }
}

fn factor_terms<F>(labelled: &[(String, &Subspace)], f: F) -> Result<Vec<Term>>
where
    F: Fn(&Subspace) -> Result<f64> + Sync,
{
    labelled
        .par_iter()
        .map(|(label, s)| {
            Ok(Term {
                label: label.clone(),
                value: f(s)?,
            })
        })
        .collect()
}

fn partition_labels(p: &OrthogonalPartition) -> Vec<(String, &Subspace)> {
    p.parts.iter().enumerate().map(|(j, s)| (format!("V{}", j + 1), s)).collect()
}

fn family_labels(f: &CoordinateFamily) -> Vec<(String, &Subspace)> {
    f.members.iter().map(|(i, s)| (format!("V_{i}"), s)).collect()
}

/// `Σ π²_{L,V_j} = 1` (real) or `Σ π_{L,V_j} = 1` (complex).
pub fn verify_line_partition(l: &Subspace, p: &OrthogonalPartition) -> Result<SumReport> {
    l.check_compatible(&p.parts[0])?;
    if l.dim() != 1 {
        return Err(Error::NotALine { dim: l.dim() });
    }
    let field = l.field();
    let terms = factor_terms(&partition_labels(p), |part| Ok(summand(field, projection_factor(l, part)?)))?;
    Ok(SumReport::new("line-partition", terms, 1.0, tol::RECONSTRUCTION))
}

/// `Σ_I π²_{V,V_I} = 1` over the `p`-dimensional coordinate subspaces
/// (unsquared over `C`).
pub fn verify_subspace_coordinates(v: &Subspace, f: &CoordinateFamily) -> Result<SumReport> {
    check_family(v, f)?;
    if f.q != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            found: f.q,
        });
    }
    let field = v.field();
    let terms = factor_terms(&family_labels(f), |vi| Ok(summand(field, projection_factor(v, vi)?)))?;
    Ok(SumReport::new("subspace-coordinates", terms, 1.0, tol::CROSS_PATH))
}

/// `Σ_I π²_{V,V_I} = C(n−p, n−q)` for `p ≤ q`, `Σ_I π²_{V_I,V} = C(p, q)`
/// for `p > q` (unsquared over `C`).
pub fn verify_binomial_identity(v: &Subspace, f: &CoordinateFamily) -> Result<SumReport> {
    check_family(v, f)?;
    let (n, p, q) = (v.ambient_dim(), v.dim(), f.q);
    let field = v.field();
    let (terms, target) = if p <= q {
        let terms = factor_terms(&family_labels(f), |vi| Ok(summand(field, projection_factor(v, vi)?)))?;
        (terms, binomial(n - p, n - q))
    } else {
        let terms = factor_terms(&family_labels(f), |vi| Ok(summand(field, projection_factor(vi, v)?)))?;
        (terms, binomial(p, q))
    };
    Ok(SumReport::new("binomial", terms, target as f64, tol::CROSS_PATH))
}

fn check_family(v: &Subspace, f: &CoordinateFamily) -> Result<()> {
    v.field().check(f.field)?;
    if v.ambient_dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim(),
            found: f.ambient_dim(),
        });
    }
    Ok(())
}

/// A measurable set for the measure identities.
#[derive(Debug, Clone)]
pub enum MeasuredSet {
    /// Union of translates of parallelotopes with disjoint interiors,
    /// measured exactly. Translations change no measure, so each cell is
    /// stored at the origin.
    Cells(Vec<Parallelotope>),
    /// Monte Carlo set; its carrier is the subspace it lies in.
    Sampled(SampledSet),
}

/// Measure of `S` raised to the power the identities use, and the same for
/// each projection, plus the relative standard error for sampled sets.
struct MeasuredTerms {
    base: f64,
    terms: Vec<Term>,
    rel_std_error: Option<f64>,
}

/// `|S|²` over `R`, `|S|` over `C`; a single real cell keeps the Gram
/// determinant without a square root.
fn powered_cells(field: Field, cells: &[Parallelotope]) -> f64 {
    match (field, cells) {
        (Field::Real, [one]) => parallelotope_measure_sq(one),
        (Field::Real, _) => cells.iter().map(parallelotope_measure).sum::<f64>().powi(2),
        (Field::Complex, _) => cells.iter().map(parallelotope_measure).sum(),
    }
}

fn measure_terms(field: Field, s: &MeasuredSet, targets: &[(String, &Subspace)]) -> Result<MeasuredTerms> {
    let power = |m: f64| match field {
        Field::Real => m * m,
        Field::Complex => m,
    };
    match s {
        MeasuredSet::Cells(cells) => {
            let base = powered_cells(field, cells);
            let terms = targets
                .par_iter()
                .map(|(label, w)| {
                    let projected = cells
                        .iter()
                        .map(|c| project_parallelotope(c, w))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Term {
                        label: label.clone(),
                        value: powered_cells(field, &projected),
                    })
                })
                .collect::<Result<_>>()?;
            Ok(MeasuredTerms {
                base,
                terms,
                rel_std_error: None,
            })
        }
        MeasuredSet::Sampled(set) => {
            let m = monte_carlo_measure(set);
            let terms = targets
                .iter()
                .map(|(label, w)| {
                    Ok(Term {
                        label: label.clone(),
                        value: power(projected_set_measure(set, w)?.estimate),
                    })
                })
                .collect::<Result<_>>()?;
            // d(m²)/m² = 2·dm/m.
            let rel = if m.estimate > 0.0 {
                let exponent = match field {
                    Field::Real => 2.0,
                    Field::Complex => 1.0,
                };
                exponent * m.std_error / m.estimate
            } else {
                0.0
            };
            Ok(MeasuredTerms {
                base: power(m.estimate),
                terms,
                rel_std_error: Some(rel),
            })
        }
    }
}

/// Checks that `S` lies in `v` and has full dimension there.
fn check_carried(s: &MeasuredSet, v: &Subspace) -> Result<()> {
    match s {
        MeasuredSet::Cells(cells) => {
            for c in cells {
                v.field().check(c.field())?;
                if c.k() != v.real_dim() {
                    return Err(Error::DimensionMismatch {
                        expected: v.real_dim(),
                        found: c.k(),
                    });
                }
                for e in c.edges() {
                    if !v.contains(e, tol::ORTHOGONALITY)? {
                        return Err(Error::InvalidSet("parallelotope edge leaves the subspace".into()));
                    }
                }
            }
        }
        MeasuredSet::Sampled(set) => {
            let carrier = set.carrier();
            v.check_compatible(carrier)?;
            if carrier.dim() != v.dim() {
                return Err(Error::DimensionMismatch {
                    expected: v.dim(),
                    found: carrier.dim(),
                });
            }
            for b in carrier.ortho_basis() {
                if !v.contains(b, tol::ORTHOGONALITY)? {
                    return Err(Error::InvalidSet("sampled set carrier leaves the subspace".into()));
                }
            }
        }
    }
    Ok(())
}

fn measure_report(identity: &str, mt: MeasuredTerms, coefficient: f64, tolerance: f64) -> SumReport {
    let report = SumReport::relative(identity, mt.terms, coefficient * mt.base, tolerance);
    match mt.rel_std_error {
        Some(se) => report.with_std_error(se),
        None => report,
    }
}

/// `|S|²₁ = Σ|S_j|²₁` for `S` in a real line, `|S|₂ = Σ|S_j|₂` in a complex
/// line. The residual is relative to the measure of `S`.
pub fn verify_measure_line(l: &Subspace, s: &MeasuredSet, p: &OrthogonalPartition) -> Result<SumReport> {
    l.check_compatible(&p.parts[0])?;
    if l.dim() != 1 {
        return Err(Error::NotALine { dim: l.dim() });
    }
    check_carried(s, l)?;
    let mt = measure_terms(l.field(), s, &partition_labels(p))?;
    Ok(measure_report("measure-line", mt, 1.0, tol::RECONSTRUCTION))
}

/// `Σ_I |S_I|²_p = C(n−p, n−q)·|S|²_p` (real) or
/// `Σ_I |S_I|_{2p} = C(n−p, n−q)·|S|_{2p}` (complex) for `S ⊂ V` and
/// `q ≥ p`. The residual is relative to the right-hand side.
pub fn verify_measure_subspace_q(s: &MeasuredSet, v: &Subspace, f: &CoordinateFamily) -> Result<SumReport> {
    check_family(v, f)?;
    let (n, p, q) = (v.ambient_dim(), v.dim(), f.q);
    if q < p {
        return Err(Error::Unsupported(format!(
            "measure identity needs q ≥ p, got p = {p}, q = {q}"
        )));
    }
    check_carried(s, v)?;
    let mt = measure_terms(v.field(), s, &family_labels(f))?;
    let coefficient = binomial(n - p, n - q) as f64;
    Ok(measure_report("measure-subspace", mt, coefficient, tol::RECONSTRUCTION))
}

/// Squared face areas of the tetrahedron with vertices `O` and `a·e₁`,
/// `b·e₂`, `c·e₃`: the face opposite `O` against the three faces at `O`.
pub fn de_gua(a: f64, b: f64, c: f64) -> Result<SumReport> {
    let pa = Vector::real(&[a, 0.0, 0.0]);
    let pb = Vector::real(&[0.0, b, 0.0]);
    let pc = Vector::real(&[0.0, 0.0, c]);
    let e1 = pb.sub(&pa)?;
    let e2 = pc.sub(&pa)?;
    let cell = Parallelotope::new(Field::Real, 3, vec![e1, e2])?;
    let family = CoordinateFamily::canonical(Field::Real, 3, 2)?;
    let mt = measure_terms(Field::Real, &MeasuredSet::Cells(vec![cell]), &family_labels(&family))?;
    // Triangles are half the parallelograms: squared areas scale by 1/4.
    let labels = ["OAB", "OAC", "OBC"];
    let terms = mt
        .terms
        .into_iter()
        .zip(labels)
        .map(|(t, label)| Term {
            label: label.to_string(),
            value: t.value / 4.0,
        })
        .collect();
    Ok(SumReport::relative("de-gua", terms, mt.base / 4.0, tol::FIXTURE))
}
