//! Lebesgue measure of parallelotopes (exact) and of sampled sets (Monte
//! Carlo), used as the independent side of every measure-based check.
//!
//! Complex vectors are measured in the underlying real space, so a complex
//! `p`-dimensional set has a `2p`-dimensional measure.
//!
//! A [`SampledSet`] lives in a carrier subspace and is described in real
//! orthonormal coordinates of that carrier (the orthonormal basis of
//! [`Subspace::realify`]). Its projection onto `W` can be measured three
//! ways, selected by [`ProjectionEstimator`]:
//!
//! - `Jacobian`: the estimate of `|S|` times the product of singular values of
//!   the restricted map, so `S` and `P(S)` share samples.
//! - `Direct`: fresh samples drawn in a box around `P(S)`, each pulled back
//!   through the restricted map to test membership. No determinant or SVD.
//! - `Grid`: deterministic cell counting over the same box, for images of
//!   real dimension at most 2.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, re_inner, svd, Field, Matrix, Subspace, Vector};
use crate::random::stream_rng;

/// Smallest accepted `sample_count`.
pub const MIN_SAMPLES: usize = 1_000;

/// Samples per generator stream.
const BLOCK: usize = 8_192;

/// Stream offset that keeps the samples of [`ProjectionEstimator::Direct`]
/// disjoint from those of the set itself.
const DIRECT_STREAM_OFFSET: u64 = 1 << 40;

/// Parallelotope `[v₁, …, v_k] = {Σ tᵢvᵢ : tᵢ ∈ [0,1]}` at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Parallelotope {
    field: Field,
    ambient: usize,
    edges: Vec<Vector>,
    /// Real dimension of the subspace the parallelotope is known to lie in,
    /// when smaller than the ambient one (set by projection).
    carrier_real_dim: Option<usize>,
}

impl Parallelotope {
    pub fn new(field: Field, ambient: usize, edges: Vec<Vector>) -> Result<Self> {
        for e in &edges {
            field.check(e.field())?;
            if e.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: e.dim(),
                });
            }
        }
        let real_dim = field.real_dim() * ambient;
        if edges.len() > real_dim {
            return Err(Error::GradeOverflow {
                grade: edges.len(),
                ambient: real_dim,
            });
        }
        Ok(Self {
            field,
            ambient,
            edges,
            carrier_real_dim: None,
        })
    }

    /// The `2p`-dimensional cell `[v₁, i·v₁, …, v_p, i·v_p]` of complex vectors.
    pub fn complex_cell(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let i = num_complex::Complex64::new(0.0, 1.0);
        let edges = vectors.iter().flat_map(|v| [v.clone(), v.scale(i)]).collect();
        Self::new(Field::Complex, ambient, edges)
    }

    /// Unit cell of a subspace: orthonormal basis over `R`, the complex cell
    /// of the orthonormal basis over `C`. Its measure is 1.
    pub fn unit_cell(s: &Subspace) -> Self {
        match s.field() {
            Field::Real => Self::new(Field::Real, s.ambient_dim(), s.ortho_basis().to_vec()),
            Field::Complex => Self::complex_cell(s.ambient_dim(), s.ortho_basis()),
        }
        .expect("basis of the subspace")
    }

    pub fn edges(&self) -> &[Vector] {
        &self.edges
    }

    /// Number of edges, the dimension `k` of the measure `|·|_k`.
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// `|P|_k² = det(Re⟨vᵢ, vⱼ⟩)`, exact for integer data. Zero when the
/// parallelotope is known to lie in a space of real dimension below `k`.
pub fn parallelotope_measure_sq(p: &Parallelotope) -> f64 {
    if p.carrier_real_dim.is_some_and(|d| d < p.k()) {
        return 0.0;
    }
    let k = p.k();
    let mut g = Matrix::zeros(Field::Real, k, k);
    for i in 0..k {
        for j in 0..k {
            let x = re_inner(&p.edges[i], &p.edges[j]).expect("validated");
            g.set(i, j, x.into());
        }
    }
    g.det().expect("square").re.max(0.0)
}

/// `|P|_k = √det(Re⟨vᵢ, vⱼ⟩)`.
pub fn parallelotope_measure(p: &Parallelotope) -> f64 {
    parallelotope_measure_sq(p).sqrt()
}

/// `P_W([v₁, …, v_k]) = [P_W v₁, …, P_W v_k]`.
pub fn project_parallelotope(p: &Parallelotope, w: &Subspace) -> Result<Parallelotope> {
    w.field().check(p.field)?;
    if w.ambient_dim() != p.ambient {
        return Err(Error::DimensionMismatch {
            expected: p.ambient,
            found: w.ambient_dim(),
        });
    }
    let edges = p.edges.iter().map(|e| w.project(e)).collect::<Result<Vec<_>>>()?;
    Ok(Parallelotope {
        field: p.field,
        ambient: p.ambient,
        edges,
        carrier_real_dim: Some(w.real_dim()),
    })
}

/// Membership test in carrier coordinates.
pub type Indicator = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// A measurable set inside a carrier subspace, given by an indicator on a
/// bounding box of real orthonormal carrier coordinates.
#[derive(Clone)]
pub struct SampledSet {
    carrier: Subspace,
    indicator: Indicator,
    bbox: Vec<(f64, f64)>,
    sample_count: usize,
    seed: u64,
}

impl fmt::Debug for SampledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledSet")
            .field("carrier_dim", &self.carrier.dim())
            .field("bbox", &self.bbox)
            .field("sample_count", &self.sample_count)
            .field("seed", &self.seed)
            .finish_non_exhaustive()
    }
}

/// A Monte Carlo (or grid) measure estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

impl MeasureEstimate {
    fn exact_zero(seed: u64) -> Self {
        Self {
            estimate: 0.0,
            std_error: 0.0,
            samples: 0,
            seed,
        }
    }
}

impl SampledSet {
    pub fn new(
        carrier: Subspace,
        indicator: Indicator,
        bbox: Vec<(f64, f64)>,
        sample_count: usize,
        seed: u64,
    ) -> Result<Self> {
        if bbox.len() != carrier.real_dim() {
            return Err(Error::DimensionMismatch {
                expected: carrier.real_dim(),
                found: bbox.len(),
            });
        }
        if sample_count < MIN_SAMPLES {
            return Err(Error::InvalidSet(format!(
                "sample_count {sample_count} is below {MIN_SAMPLES}"
            )));
        }
        if bbox.iter().any(|(lo, hi)| !(hi > lo) || !lo.is_finite() || !hi.is_finite()) {
            return Err(Error::InvalidSet("bounding box has zero volume".into()));
        }
        Ok(Self {
            carrier,
            indicator,
            bbox,
            sample_count,
            seed,
        })
    }

    /// The whole bounding box.
    pub fn full_box(carrier: Subspace, bbox: Vec<(f64, f64)>, sample_count: usize, seed: u64) -> Result<Self> {
        Self::new(carrier, Arc::new(|_: &[f64]| true), bbox, sample_count, seed)
    }

    /// Disk of the given radius centred at the origin of a carrier of real
    /// dimension 2.
    pub fn disk(carrier: Subspace, radius: f64, sample_count: usize, seed: u64) -> Result<Self> {
        require_real_dim(&carrier, 2)?;
        let r2 = radius * radius;
        Self::new(
            carrier,
            Arc::new(move |x: &[f64]| x[0] * x[0] + x[1] * x[1] <= r2),
            vec![(-radius, radius); 2],
            sample_count,
            seed,
        )
    }

    /// Union of intervals on a carrier of real dimension 1.
    pub fn intervals(carrier: Subspace, intervals: Vec<(f64, f64)>, sample_count: usize, seed: u64) -> Result<Self> {
        require_real_dim(&carrier, 1)?;
        let lo = intervals.iter().map(|i| i.0).fold(f64::INFINITY, f64::min);
        let hi = intervals.iter().map(|i| i.1).fold(f64::NEG_INFINITY, f64::max);
        Self::new(
            carrier,
            Arc::new(move |x: &[f64]| intervals.iter().any(|&(a, b)| a <= x[0] && x[0] <= b)),
            vec![(lo, hi)],
            sample_count,
            seed,
        )
    }

    /// Simple polygon (even-odd rule) on a carrier of real dimension 2.
    pub fn polygon(carrier: Subspace, vertices: Vec<[f64; 2]>, sample_count: usize, seed: u64) -> Result<Self> {
        require_real_dim(&carrier, 2)?;
        if vertices.len() < 3 {
            return Err(Error::InvalidSet("polygon needs at least 3 vertices".into()));
        }
        let bbox = (0..2)
            .map(|k| {
                let lo = vertices.iter().map(|v| v[k]).fold(f64::INFINITY, f64::min);
                let hi = vertices.iter().map(|v| v[k]).fold(f64::NEG_INFINITY, f64::max);
                (lo, hi)
            })
            .collect();
        Self::new(
            carrier,
            Arc::new(move |x: &[f64]| point_in_polygon(&vertices, x[0], x[1])),
            bbox,
            sample_count,
            seed,
        )
    }

    /// Image of the unit cube under `x ↦ E·x` in carrier coordinates, where
    /// the columns of the square matrix `edges` are the edge vectors.
    pub fn parallelotope(carrier: Subspace, edges: Vec<Vec<f64>>, sample_count: usize, seed: u64) -> Result<Self> {
        let d = carrier.real_dim();
        if edges.len() != d || edges.iter().any(|e| e.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: edges.len(),
            });
        }
        let cols: Vec<Vector> = edges.iter().map(|e| Vector::real(e)).collect();
        let m = Matrix::from_columns(Field::Real, d, &cols)?;
        if m.det()?.norm() == 0.0 {
            return Err(Error::InvalidSet("parallelotope edges are dependent".into()));
        }
        let bbox = (0..d)
            .map(|i| {
                let lo: f64 = edges.iter().map(|e| e[i].min(0.0)).sum();
                let hi: f64 = edges.iter().map(|e| e[i].max(0.0)).sum();
                (lo, hi)
            })
            .collect();
        Self::new(
            carrier,
            Arc::new(move |x: &[f64]| {
                let rhs = Matrix::from_columns(Field::Real, x.len(), &[Vector::real(x)]).expect("sized");
                match m.solve(&rhs) {
                    Ok(t) => (0..t.rows()).all(|i| (0.0..=1.0).contains(&t.get(i, 0).re)),
                    Err(_) => false,
                }
            }),
            bbox,
            sample_count,
            seed,
        )
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn bbox(&self) -> &[(f64, f64)] {
        &self.bbox
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        (self.indicator)(x)
    }

    pub fn with_samples(&self, sample_count: usize) -> Result<Self> {
        Self::new(
            self.carrier.clone(),
            self.indicator.clone(),
            self.bbox.clone(),
            sample_count,
            self.seed,
        )
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

fn require_real_dim(carrier: &Subspace, d: usize) -> Result<()> {
    if carrier.real_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: carrier.real_dim(),
        });
    }
    Ok(())
}

/// Even-odd ray casting.
fn point_in_polygon(vertices: &[[f64; 2]], x: f64, y: f64) -> bool {
    let mut inside = false;
    let mut j = vertices.len() - 1;
    for i in 0..vertices.len() {
        let [xi, yi] = vertices[i];
        let [xj, yj] = vertices[j];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Vertices of the Koch snowflake after `level` refinements of an
/// equilateral triangle with the given side, centred at the origin.
pub fn koch_snowflake(level: u32, side: f64) -> Vec<[f64; 2]> {
    let h = side * 3f64.sqrt() / 2.0;
    let mut pts = vec![[-side / 2.0, -h / 3.0], [side / 2.0, -h / 3.0], [0.0, 2.0 * h / 3.0]];
    // Counter-clockwise, so a bump to the right of an edge points outward.
    for _ in 0..level {
        let mut next = Vec::with_capacity(pts.len() * 4);
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            let d = [(b[0] - a[0]) / 3.0, (b[1] - a[1]) / 3.0];
            let p1 = [a[0] + d[0], a[1] + d[1]];
            let p3 = [a[0] + 2.0 * d[0], a[1] + 2.0 * d[1]];
            // Rotate d by −60°.
            let (c, s) = (0.5, -(3f64.sqrt()) / 2.0);
            let p2 = [p1[0] + c * d[0] - s * d[1], p1[1] + s * d[0] + c * d[1]];
            next.extend([a, p1, p2, p3]);
        }
        pts = next;
    }
    pts
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let [x0, y0] = vertices[i];
            let [x1, y1] = vertices[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    twice.abs() / 2.0
}

fn box_volume(bbox: &[(f64, f64)]) -> f64 {
    bbox.iter().map(|(lo, hi)| hi - lo).product()
}

/// Counts hits of `inside` over `samples` uniform points of `bbox`, one
/// generator stream per block of [`BLOCK`] points.
fn count_hits<F>(bbox: &[(f64, f64)], samples: usize, seed: u64, stream_offset: u64, inside: F) -> usize
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, stream_offset + b as u64);
            let len = BLOCK.min(samples - b * BLOCK);
            let mut x = vec![0.0; bbox.len()];
            let mut hits = 0;
            for _ in 0..len {
                for (xi, &(lo, hi)) in x.iter_mut().zip(bbox) {
                    *xi = rng.random_range(lo..hi);
                }
                if inside(&x) {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

fn estimate_from_hits(volume: f64, hits: usize, samples: usize, seed: u64) -> MeasureEstimate {
    let f = hits as f64 / samples as f64;
    MeasureEstimate {
        estimate: volume * f,
        std_error: volume * (f * (1.0 - f) / samples as f64).sqrt(),
        samples,
        seed,
    }
}

/// `|S|` as box volume times hit fraction, with its binomial standard error.
pub fn monte_carlo_measure(s: &SampledSet) -> MeasureEstimate {
    let hits = count_hits(&s.bbox, s.sample_count, s.seed, 0, |x| s.contains(x));
    estimate_from_hits(box_volume(&s.bbox), hits, s.sample_count, s.seed)
}

/// How [`projected_set_measure_with`] measures `P(S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionEstimator {
    Jacobian,
    Direct,
    Grid { cells_per_axis: usize },
}

/// Images `P_W bⱼ` of the real orthonormal carrier basis, as columns of a
/// real matrix on the realified ambient space.
fn restricted_map(s: &SampledSet, w: &Subspace) -> Result<Vec<Vector>> {
    s.carrier.check_compatible(w)?;
    let wr = w.realify();
    s.carrier.realify().ortho_basis().iter().map(|b| wr.project(b)).collect()
}

/// `|P_W(S)|` by shared samples and the change-of-variables factor.
pub fn projected_set_measure(s: &SampledSet, w: &Subspace) -> Result<MeasureEstimate> {
    projected_set_measure_with(s, w, ProjectionEstimator::Jacobian)
}

pub fn projected_set_measure_with(s: &SampledSet, w: &Subspace, how: ProjectionEstimator) -> Result<MeasureEstimate> {
    let images = restricted_map(s, w)?;
    match how {
        ProjectionEstimator::Jacobian => {
            let j = jacobian(&images)?;
            if j == 0.0 {
                return Ok(MeasureEstimate::exact_zero(s.seed));
            }
            let base = monte_carlo_measure(s);
            Ok(MeasureEstimate {
                estimate: j * base.estimate,
                std_error: j * base.std_error,
                ..base
            })
        }
        ProjectionEstimator::Direct => {
            let Some(image) = ImageCoordinates::new(&images, &s.bbox)? else {
                return Ok(MeasureEstimate::exact_zero(s.seed));
            };
            let hits = count_hits(&image.bbox, s.sample_count, s.seed, DIRECT_STREAM_OFFSET, |y| {
                image.pull_back(y).is_some_and(|x| s.contains(&x))
            });
            Ok(estimate_from_hits(box_volume(&image.bbox), hits, s.sample_count, s.seed))
        }
        ProjectionEstimator::Grid { cells_per_axis } => {
            if images.len() > 2 {
                return Err(Error::Unsupported(format!(
                    "grid estimator needs real dimension at most 2, got {}",
                    images.len()
                )));
            }
            let Some(image) = ImageCoordinates::new(&images, &s.bbox)? else {
                return Ok(MeasureEstimate::exact_zero(s.seed));
            };
            Ok(grid_measure(&image, cells_per_axis.max(1), |x| s.contains(x), s.seed))
        }
    }
}

/// `∏ σᵢ` of the restricted map; 0 when it is not injective.
fn jacobian(images: &[Vector]) -> Result<f64> {
    if images.is_empty() {
        return Ok(1.0);
    }
    let m = Matrix::from_columns(Field::Real, images[0].dim(), images)?;
    let s = svd(&m)?;
    if s.sigma.iter().any(|&x| x <= crate::tol::RANK_RELATIVE) {
        return Ok(0.0);
    }
    Ok(s.sigma.iter().product())
}

/// Orthonormal coordinates on `P(V)` from Gram–Schmidt on the images:
/// `A = Q·R`, so a carrier point `x` lands at `y = R·x`.
struct ImageCoordinates {
    r: Matrix,
    bbox: Vec<(f64, f64)>,
}

impl ImageCoordinates {
    /// `None` when the restricted map is not injective.
    fn new(images: &[Vector], carrier_bbox: &[(f64, f64)]) -> Result<Option<Self>> {
        let d = images.len();
        let largest = images.iter().map(Vector::norm).fold(0.0, f64::max);
        if largest == 0.0 {
            return Ok(None);
        }
        let q = match orthonormalize(images) {
            Ok(q) => q,
            Err(Error::DependentBasis { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut r = Matrix::zeros(Field::Real, d, d);
        for i in 0..d {
            for j in 0..d {
                r.set(i, j, re_inner(&q[i], &images[j])?.into());
            }
        }
        if (0..d).any(|i| r.get(i, i).norm() <= crate::tol::RANK_RELATIVE) {
            return Ok(None);
        }
        // Interval image of the carrier box.
        let bbox = (0..d)
            .map(|i| {
                (0..d).fold((0.0, 0.0), |(lo, hi), j| {
                    let a = r.get(i, j).re;
                    let (c0, c1) = carrier_bbox[j];
                    (lo + (a * c0).min(a * c1), hi + (a * c0).max(a * c1))
                })
            })
            .map(|(lo, hi): (f64, f64)| if hi > lo { (lo, hi) } else { (lo, lo + f64::MIN_POSITIVE) })
            .collect();
        Ok(Some(Self { r, bbox }))
    }

    /// Back substitution of the upper-triangular `R·x = y`.
    fn pull_back(&self, y: &[f64]) -> Option<Vec<f64>> {
        let d = y.len();
        let mut x = vec![0.0; d];
        for i in (0..d).rev() {
            let mut acc = y[i];
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                acc -= self.r.get(i, j).re * xj;
            }
            x[i] = acc / self.r.get(i, i).re;
        }
        x.iter().all(|v| v.is_finite()).then_some(x)
    }
}

fn grid_measure<F: Fn(&[f64]) -> bool>(image: &ImageCoordinates, cells: usize, inside: F, seed: u64) -> MeasureEstimate {
    let d = image.bbox.len();
    let steps: Vec<f64> = image.bbox.iter().map(|(lo, hi)| (hi - lo) / cells as f64).collect();
    let cell_volume: f64 = steps.iter().product();
    let total = cells.pow(d as u32);
    let mut hits = 0usize;
    let mut y = vec![0.0; d];
    for idx in 0..total {
        let mut rest = idx;
        for k in 0..d {
            y[k] = image.bbox[k].0 + (rest % cells) as f64 * steps[k] + steps[k] / 2.0;
            rest /= cells;
        }
        if image.pull_back(&y).is_some_and(|x| inside(&x)) {
            hits += 1;
        }
    }
    MeasureEstimate {
        estimate: hits as f64 * cell_volume,
        std_error: 0.0,
        samples: total,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::projection_factor;
    use crate::random::{random_subspace, random_vector};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn plane(n: usize) -> Subspace {
        Subspace::coordinate(Field::Real, n, &[0, 1])
    }

    #[test]
    fn parallelotope_examples() {
        let sq = Parallelotope::new(Field::Real, 2, vec![Vector::real(&[1.0, 0.0]), Vector::real(&[0.0, 1.0])]).unwrap();
        assert_eq!(parallelotope_measure(&sq), 1.0);
        let p = Parallelotope::new(
            Field::Real,
            3,
            vec![Vector::real(&[2.0, 0.0, 0.0]), Vector::real(&[0.0, 0.0, 3.0])],
        )
        .unwrap();
        assert!((parallelotope_measure(&p) - 6.0).abs() < 1e-14);

        let v = Vector::complex(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
        let cell = Parallelotope::complex_cell(2, &[v]).unwrap();
        assert!((parallelotope_measure(&cell) - 1.0).abs() < 1e-14);

        assert_eq!(
            Parallelotope::new(Field::Real, 1, vec![Vector::real(&[1.0]), Vector::real(&[2.0])]),
            Err(Error::GradeOverflow { grade: 2, ambient: 1 })
        );
    }

    #[test]
    fn projection_of_square() {
        let sq = Parallelotope::unit_cell(&plane(4));
        let same = project_parallelotope(&sq, &plane(4)).unwrap();
        assert_eq!(parallelotope_measure(&same), 1.0);
        let other = Subspace::coordinate(Field::Real, 4, &[2, 3]);
        assert_eq!(parallelotope_measure(&project_parallelotope(&sq, &other).unwrap()), 0.0);
        // Projected onto a line: two edges in a one-dimensional space.
        let axis = Subspace::coordinate(Field::Real, 4, &[0]);
        assert_eq!(parallelotope_measure(&project_parallelotope(&sq, &axis).unwrap()), 0.0);
    }

    #[test]
    fn parallelotope_ratio_is_projection_factor() {
        let mut rng = stream_rng(71, 0);
        for field in [Field::Real, Field::Complex] {
            for (n, p, q) in [(5, 2, 3), (4, 2, 2), (6, 3, 4), (3, 1, 2)] {
                let v = random_subspace(field, n, p, &mut rng);
                let w = random_subspace(field, n, q, &mut rng);
                let edges: Vec<Vector> = v.basis().to_vec();
                let cell = match field {
                    Field::Real => Parallelotope::new(field, n, edges).unwrap(),
                    Field::Complex => Parallelotope::complex_cell(n, &edges).unwrap(),
                };
                let ratio = parallelotope_measure(&project_parallelotope(&cell, &w).unwrap()) / parallelotope_measure(&cell);
                assert!((ratio - projection_factor(&v, &w).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn full_box_is_exact() {
        let s = SampledSet::full_box(plane(3), vec![(0.0, 2.0), (-1.0, 0.5)], 5_000, 1).unwrap();
        let m = monte_carlo_measure(&s);
        assert_eq!(m.estimate, 3.0);
        assert_eq!(m.std_error, 0.0);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(SampledSet::full_box(plane(3), vec![(0.0, 0.0), (0.0, 1.0)], 5_000, 1).is_err());
        assert!(SampledSet::full_box(plane(3), vec![(0.0, 1.0), (0.0, 1.0)], 10, 1).is_err());
        assert!(SampledSet::full_box(plane(3), vec![(0.0, 1.0)], 5_000, 1).is_err());
    }

    #[test]
    fn disk_and_segments() {
        let disk = SampledSet::disk(plane(3), 1.0, 100_000, 2).unwrap();
        let m = monte_carlo_measure(&disk);
        assert!((m.estimate - PI).abs() <= 3.0 * m.std_error, "{m:?}");

        let axis = Subspace::coordinate(Field::Real, 3, &[2]);
        let segs = SampledSet::intervals(axis, vec![(0.0, 1.0), (2.0, 4.0)], 100_000, 3).unwrap();
        let m = monte_carlo_measure(&segs);
        assert!((m.estimate - 3.0).abs() <= 3.0 * m.std_error, "{m:?}");
    }

    #[test]
    fn deterministic_under_seed() {
        let disk = SampledSet::disk(plane(3), 1.0, 20_000, 5).unwrap();
        assert_eq!(monte_carlo_measure(&disk), monte_carlo_measure(&disk));
        assert_ne!(monte_carlo_measure(&disk), monte_carlo_measure(&disk.with_seed(6)));
    }

    #[test]
    fn std_error_scales_with_samples() {
        let disk = SampledSet::disk(plane(2), 1.0, 100_000, 8).unwrap();
        let a = monte_carlo_measure(&disk).std_error;
        let b = monte_carlo_measure(&disk.with_samples(200_000).unwrap()).std_error;
        let ratio = b / a;
        assert!((ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.2 * std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn snowflake_area() {
        // Area after k steps: (√3/4)s²·(1 + Σ_{j=1}^k 3·4^{j−1}/9^j).
        for k in 0..4 {
            let exact = 3f64.sqrt() / 4.0
                * (1.0 + (1..=k).map(|j| 3.0 * 4f64.powi(j - 1) / 9f64.powi(j)).sum::<f64>());
            assert!((polygon_area(&koch_snowflake(k as u32, 1.0)) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_inside_carrier_keeps_measure() {
        let disk = SampledSet::disk(plane(3), 1.0, 10_000, 9).unwrap();
        let a = monte_carlo_measure(&disk);
        let b = projected_set_measure(&disk, &Subspace::full(Field::Real, 3)).unwrap();
        assert!((a.estimate - b.estimate).abs() < 1e-12);
    }

    #[test]
    fn degenerate_projection_is_zero() {
        let disk = SampledSet::disk(plane(3), 1.0, 10_000, 10).unwrap();
        let line = Subspace::coordinate(Field::Real, 3, &[0]);
        for how in [
            ProjectionEstimator::Jacobian,
            ProjectionEstimator::Direct,
            ProjectionEstimator::Grid { cells_per_axis: 10 },
        ] {
            assert_eq!(projected_set_measure_with(&disk, &line, how).unwrap().estimate, 0.0);
        }
    }

    #[test]
    fn estimators_agree() {
        let mut rng = stream_rng(72, 0);
        let carrier = random_subspace(Field::Real, 4, 2, &mut rng);
        let w = random_subspace(Field::Real, 4, 3, &mut rng);
        let set = SampledSet::polygon(carrier.clone(), koch_snowflake(2, 2.0), 200_000, 11).unwrap();
        let jac = projected_set_measure(&set, &w).unwrap();
        let direct = projected_set_measure_with(&set, &w, ProjectionEstimator::Direct).unwrap();
        let grid = projected_set_measure_with(&set, &w, ProjectionEstimator::Grid { cells_per_axis: 400 }).unwrap();
        let exact = polygon_area(&koch_snowflake(2, 2.0)) * projection_factor(&carrier, &w).unwrap();
        let combined = (jac.std_error.powi(2) + direct.std_error.powi(2)).sqrt();
        assert!((jac.estimate - direct.estimate).abs() <= 3.0 * combined);
        assert!((grid.estimate - exact).abs() < 0.01 * exact);
        assert!((jac.estimate - exact).abs() <= 3.0 * jac.std_error);
    }

    #[test]
    fn complex_carrier() {
        // A disk in the real plane spanned by v and i·v: the complex line Cv.
        let mut rng = stream_rng(73, 0);
        let v = random_vector(Field::Complex, 3, &mut rng);
        let carrier = Subspace::span(vec![v]).unwrap();
        let w = random_subspace(Field::Complex, 3, 2, &mut rng);
        let disk = SampledSet::disk(carrier.clone(), 1.0, 100_000, 12).unwrap();
        let base = monte_carlo_measure(&disk);
        let proj = projected_set_measure(&disk, &w).unwrap();
        let pi = projection_factor(&carrier, &w).unwrap();
        assert!((proj.estimate / base.estimate - pi).abs() < 1e-10);
    }
}
