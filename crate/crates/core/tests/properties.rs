//! Property tests over randomly drawn subspaces.

use num_complex::Complex64;
use pfactor::linalg::{Field, Subspace, Vector};
use pfactor::projection::{factor_all_paths, grassmann_angle, projection_factor, zeta};
use pfactor::pythagoras::{verify_line_partition, OrthogonalPartition};
use pfactor::random::{random_nonzero_scalar, random_subspace, stream_rng};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Real), Just(Field::Complex)]
}

/// `(field, n, p, q, seed)` with `1 ≤ p, q ≤ n ≤ 7`.
fn pair_params() -> impl Strategy<Value = (Field, usize, usize, usize, u64)> {
    (field_strategy(), 1usize..=7)
        .prop_flat_map(|(f, n)| (Just(f), Just(n), 1..=n, 1..=n, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_lies_in_unit_interval((field, n, p, q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 0);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, q, &mut rng);
        let pi = projection_factor(&v, &w).unwrap();
        prop_assert!((0.0..=1.0).contains(&pi));
        if p > q {
            prop_assert_eq!(pi, 0.0);
        }
    }

    #[test]
    fn factor_ignores_choice_of_basis((field, n, p, q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 1);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, q, &mut rng);
        let rescaled: Vec<Vector> = v.basis().iter().map(|b| b.scale(random_nonzero_scalar(field, &mut rng))).collect();
        let v2 = Subspace::new(field, n, rescaled).unwrap();
        let a = projection_factor(&v, &w).unwrap();
        let b = projection_factor(&v2, &w).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn all_paths_agree((field, n, p, q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 2);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, q, &mut rng);
        let reports = factor_all_paths(&v, &w).unwrap();
        for a in &reports {
            for b in &reports {
                prop_assert!((a.value - b.value).abs() < 1e-9, "{:?} vs {:?}", a, b);
            }
        }
    }

    #[test]
    fn equal_dimension_symmetry((field, n, p, _q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 3);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, p, &mut rng);
        let a = projection_factor(&v, &w).unwrap();
        let b = projection_factor(&w, &v).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn grassmann_cosine_is_factor((field, n, p, q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 4);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, q, &mut rng);
        let cos = grassmann_angle(&v, &w).unwrap().cos();
        let pi = projection_factor(&v, &w).unwrap();
        prop_assert!((field.power(cos) - pi).abs() < 1e-10);
    }

    #[test]
    fn complex_factor_is_realified_factor((n, p, q, seed) in (1usize..=5).prop_flat_map(|n| (Just(n), 1..=n, 1..=n, any::<u64>()))) {
        let mut rng = stream_rng(seed, 5);
        let v = random_subspace(Field::Complex, n, p, &mut rng);
        let w = random_subspace(Field::Complex, n, q, &mut rng);
        let a = projection_factor(&v, &w).unwrap();
        let b = projection_factor(&v.realify(), &w.realify()).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn zeta_in_unit_interval((field, n, p, q, seed) in pair_params()) {
        let mut rng = stream_rng(seed, 6);
        let v = random_subspace(field, n, p, &mut rng);
        let w = random_subspace(field, n, q, &mut rng);
        let z = zeta(&v, &w).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&z));
    }

    #[test]
    fn line_partition_sums_to_one(field in field_strategy(), n in 2usize..=8, seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 7);
        let k = 2 + (seed as usize) % (n - 1);
        let p = OrthogonalPartition::random(field, n, k, &mut rng);
        let l = random_subspace(field, n, 1, &mut rng);
        let r = verify_line_partition(&l, &p).unwrap();
        prop_assert!(r.residual <= 1e-10);
    }

    #[test]
    fn ray_rescaling_keeps_line_factor(n in 1usize..=6, re in -5.0f64..5.0, im in -5.0f64..5.0, seed in any::<u64>()) {
        prop_assume!(re.hypot(im) > 1e-3);
        let mut rng = stream_rng(seed, 8);
        let l = random_subspace(Field::Complex, n, 1, &mut rng);
        let w = random_subspace(Field::Complex, n, 1.max(n / 2), &mut rng);
        let scaled = Subspace::span(vec![l.basis()[0].scale(Complex64::new(re, im))]).unwrap();
        let a = projection_factor(&l, &w).unwrap();
        let b = projection_factor(&scaled, &w).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}
