//! Seeded generators for random vectors, subspaces and partitions.
//!
//! Entries are i.i.d. uniform in `[-1, 1]` (both components over `C`).
//! Spanning sets that come out nearly dependent are redrawn. Every stream is
//! a [`ChaCha8Rng`] keyed by `(seed, stream)` so that parallel workers get
//! independent, reproducible sequences.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{svd, Field, Matrix, Subspace, Vector};

/// Smallest accepted ratio `σ_min / σ_max` of a random spanning set.
pub const MIN_CONDITION: f64 = 1e-3;

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Complex64 {
    let re = rng.random_range(-1.0..=1.0);
    let im = match field {
        Field::Real => 0.0,
        Field::Complex => rng.random_range(-1.0..=1.0),
    };
    Complex64::new(re, im)
}

/// Nonzero scalar, redrawn until `|c| ≥ 0.1`.
pub fn random_nonzero_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Complex64 {
    loop {
        let c = random_scalar(field, rng);
        if c.norm() >= 0.1 {
            return c;
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vector {
    Vector::from_entries(field, (0..n).map(|_| random_scalar(field, rng)).collect())
}

/// `k` random well-conditioned vectors drawn from the span of `within`
/// (orthonormal), or from the whole space when `within` is `None`.
pub fn random_spanning_set<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    k: usize,
    within: Option<&[Vector]>,
    rng: &mut R,
) -> Vec<Vector> {
    loop {
        let vs: Vec<Vector> = (0..k)
            .map(|_| match within {
                None => random_vector(field, n, rng),
                Some(q) => {
                    let mut v = Vector::zeros(field, n);
                    for b in q {
                        v.axpy(random_scalar(field, rng), b);
                    }
                    v
                }
            })
            .collect();
        if k == 0 || well_conditioned(field, n, &vs) {
            return vs;
        }
    }
}

fn well_conditioned(field: Field, n: usize, vs: &[Vector]) -> bool {
    let Ok(m) = Matrix::from_columns(field, n, vs) else {
        return false;
    };
    match svd(&m) {
        Ok(s) => {
            let max = s.sigma[0];
            let min = *s.sigma.last().expect("k > 0");
            max > 0.0 && min / max >= MIN_CONDITION
        }
        Err(_) => false,
    }
}

/// Random `k`-dimensional subspace of the ambient space, kept with its
/// oblique random basis.
pub fn random_subspace<R: Rng + ?Sized>(field: Field, n: usize, k: usize, rng: &mut R) -> Subspace {
    let vs = random_spanning_set(field, n, k, None, rng);
    Subspace::new(field, n, vs).expect("well-conditioned by construction")
}

/// Random `k`-dimensional subspace of `parent`.
pub fn random_subspace_within<R: Rng + ?Sized>(parent: &Subspace, k: usize, rng: &mut R) -> Result<Subspace> {
    let vs = random_spanning_set(
        parent.field(),
        parent.ambient_dim(),
        k,
        Some(parent.ortho_basis()),
        rng,
    );
    Subspace::new(parent.field(), parent.ambient_dim(), vs)
}

/// Random orthonormal basis of the whole space.
pub fn random_orthonormal_basis<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vec<Vector> {
    random_subspace(field, n, n, rng).ortho_basis().to_vec()
}

/// Random composition of `n` into `parts` positive dimensions.
pub fn random_dims<R: Rng + ?Sized>(n: usize, parts: usize, rng: &mut R) -> Vec<usize> {
    assert!(parts >= 1 && parts <= n);
    let mut dims = vec![1; parts];
    for _ in parts..n {
        dims[rng.random_range(0..parts)] += 1;
    }
    dims
}

/// Splits a random orthonormal basis into consecutive groups of the given
/// sizes, returning mutually orthogonal subspaces whose dimensions sum to `n`.
pub fn random_partition_parts<R: Rng + ?Sized>(field: Field, n: usize, dims: &[usize], rng: &mut R) -> Vec<Subspace> {
    assert_eq!(dims.iter().sum::<usize>(), n);
    let basis = random_orthonormal_basis(field, n, rng);
    let mut start = 0;
    dims.iter()
        .map(|&d| {
            let part = Subspace::from_orthonormal(field, n, basis[start..start + d].to_vec());
            start += d;
            part
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = stream_rng(5, 0).random();
        let b: f64 = stream_rng(5, 0).random();
        let c: f64 = stream_rng(5, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn subspace_within_parent() {
        let mut rng = stream_rng(1, 0);
        let w = random_subspace(Field::Complex, 6, 4, &mut rng);
        let u = random_subspace_within(&w, 2, &mut rng).unwrap();
        for q in u.ortho_basis() {
            assert!(w.contains(q, 1e-12).unwrap());
        }
    }

    #[test]
    fn partition_parts_are_orthogonal_and_complete() {
        let mut rng = stream_rng(2, 0);
        let dims = random_dims(7, 3, &mut rng);
        assert_eq!(dims.iter().sum::<usize>(), 7);
        let parts = random_partition_parts(Field::Real, 7, &dims, &mut rng);
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                assert!(parts[i].max_overlap(&parts[j]).unwrap() < 1e-12);
            }
        }
    }
}
