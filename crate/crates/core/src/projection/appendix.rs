//! Structural identities of projection factors, checked numerically.
//!
//! [`verify_appendix_identities`] evaluates every identity on one pair
//! `(V, W)`, drawing whatever auxiliary subspaces an identity needs from the
//! supplied generator. [`run_identity_trials`] repeats that over random
//! pairs and keeps the worst residual per identity.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    complement_factor, factor_interior, grassmann_angle, intersection, principal_decomposition, projection_factor,
    zeta,
};
use crate::error::{Error, Result};
use crate::exterior::{blade_norm, blade_project, Blade, MultiIndex};
use crate::linalg::{Field, Subspace, Vector};
use crate::random::{random_nonzero_scalar, random_subspace, random_subspace_within, random_vector, stream_rng};
use crate::report::{CheckKind, IdentityCheck};
use crate::tol;

/// Names of all identities, in the order they are reported.
pub const IDENTITY_NAMES: [&str; 26] = [
    "zero-conventions",
    "vanishing-iff-meets-complement",
    "unit-iff-contained",
    "image-reduction",
    "equal-dim-symmetry",
    "line-bridge",
    "intersection-reduction",
    "principal-splitting",
    "orthogonal-splitting",
    "subspace-chain",
    "bounded-by-smallest-principal",
    "monotone-in-target",
    "monotone-in-target-equality",
    "antitone-in-source",
    "antitone-in-source-equality",
    "blade-projection-norm",
    "interior-product",
    "coordinate-sum",
    "complement-duality",
    "double-complement",
    "complement-principal",
    "zeta-bounds",
    "zeta-unit-cases",
    "zeta-zero-case",
    "complement-exterior",
    "complement-gram",
];

fn pf(v: &Subspace, w: &Subspace) -> Result<f64> {
    projection_factor(v, w)
}

fn random_unit_in<R: Rng + ?Sized>(parent: &Subspace, rng: &mut R) -> Result<Vector> {
    Ok(random_subspace_within(parent, 1, rng)?.ortho_basis()[0].clone())
}

fn line(v: Vector) -> Result<Subspace> {
    Subspace::span(vec![v])
}

/// Evaluates every identity in [`IDENTITY_NAMES`] on the pair `(V, W)`.
pub fn verify_appendix_identities<R: Rng + ?Sized>(
    v: &Subspace,
    w: &Subspace,
    rng: &mut R,
) -> Result<Vec<IdentityCheck>> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroSubspace);
    }
    let field = v.field();
    let n = v.ambient_dim();
    let (p, q) = (v.dim(), w.dim());
    let pvw = pf(v, w)?;
    let vc = v.complement();
    let wc = w.complement();
    let pd = principal_decomposition(v, w)?;
    let pv = v.projected_onto(w)?;
    let mut out = Vec::with_capacity(IDENTITY_NAMES.len());

    // π_{0,0} = π_{0,W} = 1, π_{V,0} = 0, Θ_{0,0} = Θ_{0,W} = 0, Θ_{V,0} = π/2.
    let zero = Subspace::zero(field, n);
    let r = [
        (pf(&zero, &zero)? - 1.0).abs(),
        (pf(&zero, w)? - 1.0).abs(),
        pf(v, &zero)?,
        grassmann_angle(&zero, &zero)?,
        grassmann_angle(&zero, w)?,
        (grassmann_angle(v, &zero)? - FRAC_PI_2).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    out.push(IdentityCheck::residual("zero-conventions", r));

    // A subspace through a direction of W⊥ projects to zero.
    if wc.is_zero() {
        out.push(IdentityCheck::not_applicable("vanishing-iff-meets-complement", CheckKind::Equality));
    } else {
        let x = line(random_unit_in(&wc, rng)?)?;
        let extra = rng.random_range(0..p.min(n - 1) + 1).min(n - 1);
        let v2 = x.sum(&random_subspace(field, n, extra, rng))?;
        out.push(IdentityCheck::equality("vanishing-iff-meets-complement", pf(&v2, w)?, 0.0));
    }

    // Subspaces of W project with factor 1.
    let u = random_subspace_within(w, rng.random_range(1..=q), rng)?;
    out.push(IdentityCheck::equality("unit-iff-contained", pf(&u, w)?, 1.0));

    // π_{V,W} = π_{V,P(V)}.
    out.push(IdentityCheck::equality("image-reduction", pvw, pf(v, &pv)?));

    // Equal dimensions: π_{V,W₂} = π_{W₂,V}.
    let w2 = random_subspace(field, n, p, rng);
    out.push(IdentityCheck::equality("equal-dim-symmetry", pf(v, &w2)?, pf(&w2, v)?));

    // Lines: over C, π_{Cv,W} = π²_{Rv,W} and π_{Ru,W} = π_{Rv,W} for u ∈ Cv;
    // over R the second part reads π_{Ru,W} = π_{Rv,W} for u ∈ Rv.
    let x = random_vector(field, n, rng);
    let c = random_nonzero_scalar(field, rng);
    let r = match field {
        Field::Real => (pf(&line(x.scale(c))?, w)? - pf(&line(x)?, w)?).abs(),
        Field::Complex => {
            let wr = w.realify();
            let real_v = pf(&line(x.realify())?, &wr)?;
            let real_u = pf(&line(x.scale(c).realify())?, &wr)?;
            let complex_v = pf(&line(x)?, w)?;
            (complex_v - real_v * real_v).abs().max((real_u - real_v).abs())
        }
    };
    out.push(IdentityCheck::residual("line-bridge", r));

    // Removing the intersection: π_{V,W₂} = π_{V',W'} with V', W' the
    // orthogonal complements of V ∩ W₂ inside V and W₂. W₂ is W enlarged by
    // a direction of V so the intersection is generically nontrivial.
    let w2 = if q < n {
        w.sum(&line(random_unit_in(v, rng)?)?)?
    } else {
        w.clone()
    };
    let i_v = intersection(v, &w2, tol::INTERSECTION)?;
    let i_w = intersection(&w2, v, tol::INTERSECTION)?;
    let v_rest = v.complement_within(&i_v)?;
    let w_rest = w2.complement_within(&i_w)?;
    out.push(IdentityCheck::equality(
        "intersection-reduction",
        pf(v, &w2)?,
        pf(&v_rest, &w_rest)?,
    ));

    // Splitting V along a partition of a principal basis multiplies factors.
    let basis = pd.v_basis();
    let groups = rng.random_range(1..=p);
    let mut parts: Vec<Vec<Vector>> = vec![Vec::new(); groups];
    for b in basis {
        parts[rng.random_range(0..groups)].push(b.clone());
    }
    let mut product = 1.0;
    for part in parts.into_iter().filter(|g| !g.is_empty()) {
        product *= pf(&Subspace::from_orthonormal(field, n, part), w)?;
    }
    out.push(IdentityCheck::equality("principal-splitting", pvw, product));

    // V = A ⊕ B orthogonally: π_{V,W} = π_{A,W}·π_{B,W}·π_{P(A),P(B)⊥}.
    if p >= 2 {
        let rotated = random_subspace_within(v, p, rng)?;
        let k = rng.random_range(1..p);
        let (left, right) = rotated.ortho_basis().split_at(k);
        let a = Subspace::from_orthonormal(field, n, left.to_vec());
        let b = Subspace::from_orthonormal(field, n, right.to_vec());
        let pa = a.projected_onto(w)?;
        let pb = b.projected_onto(w)?;
        let rhs = pf(&a, w)? * pf(&b, w)? * pf(&pa, &pb.complement())?;
        out.push(IdentityCheck::equality("orthogonal-splitting", pvw, rhs));
    } else {
        out.push(IdentityCheck::not_applicable("orthogonal-splitting", CheckKind::Equality));
    }

    // U ⊂ W: π_{V,U} = π_{V,W}·π_{P(V),U}.
    let u = random_subspace_within(w, rng.random_range(1..=q), rng)?;
    out.push(IdentityCheck::equality("subspace-chain", pf(v, &u)?, pvw * pf(&pv, &u)?));

    // π_{V,W} ≤ smallest principal factor.
    let smallest = pd.pi_principal.iter().copied().fold(1.0, f64::min);
    out.push(IdentityCheck::at_most("bounded-by-smallest-principal", pvw, smallest));

    // W' ⊂ W: π_{V,W'} ≤ π_{V,W}, with equality when P(V) ⊂ W'.
    let w_small = random_subspace_within(w, rng.random_range(1..=q), rng)?;
    out.push(IdentityCheck::at_most("monotone-in-target", pf(v, &w_small)?, pvw));
    let d = pv.dim();
    let w_between = if d < q {
        let room = w.complement_within(&pv)?;
        let extra = random_subspace_within(&room, rng.random_range(0..=q - d), rng)?;
        pv.sum(&extra)?
    } else {
        pv.clone()
    };
    out.push(IdentityCheck::equality("monotone-in-target-equality", pf(v, &w_between)?, pvw));

    // V' ⊂ V: π_{V,W} ≤ π_{V',W}, with equality when V ∩ V'⊥ ⊂ W.
    let v_small = random_subspace_within(v, rng.random_range(1..=p), rng)?;
    out.push(IdentityCheck::at_most("antitone-in-source", pvw, pf(&v_small, w)?));
    if n >= 2 {
        let r = rng.random_range(1..=q.min(n - 1));
        let u = random_subspace_within(w, r, rng)?;
        let s = rng.random_range(1..=n - r);
        let v_inner = random_subspace_within(&u.complement(), s, rng)?;
        let v_outer = v_inner.sum(&u)?;
        out.push(IdentityCheck::equality(
            "antitone-in-source-equality",
            pf(&v_inner, w)?,
            pf(&v_outer, w)?,
        ));
    } else {
        out.push(IdentityCheck::not_applicable("antitone-in-source-equality", CheckKind::Equality));
    }

    // ‖𝒫ν‖ = ‖ν‖·π (real), ‖𝒫ν‖² = ‖ν‖²·π (complex).
    let nu = Blade::of_basis(v);
    let projected = blade_project(&nu, w)?;
    let ratio = blade_norm(&projected) / blade_norm(&nu);
    out.push(IdentityCheck::equality("blade-projection-norm", field.power(ratio), pvw));

    out.push(IdentityCheck::equality("interior-product", factor_interior(v, w)?, pvw));

    // U ⊂ V of dim r: π_{U,W} = Σ_I π_{U,V_I}·π_{V_I,W} over r-subsets of a
    // principal basis of V (root of the sum of squares over R).
    let r = rng.random_range(1..=p);
    let u = random_subspace_within(v, r, rng)?;
    let mut acc = 0.0;
    for idx in MultiIndex::all(p, r) {
        let vi = Subspace::from_orthonormal(field, n, idx.indices().iter().map(|&i| basis[i].clone()).collect());
        let term = pf(&u, &vi)? * pf(&vi, w)?;
        acc += match field {
            Field::Real => term * term,
            Field::Complex => term,
        };
    }
    let rhs = match field {
        Field::Real => acc.sqrt(),
        Field::Complex => acc,
    };
    out.push(IdentityCheck::equality("coordinate-sum", pf(&u, w)?, rhs));

    // π_{V,W⊥} = π_{W,V⊥} and π_{V⊥,W⊥} = π_{W,V}.
    out.push(IdentityCheck::equality("complement-duality", pf(v, &wc)?, pf(w, &vc)?));
    out.push(IdentityCheck::equality("double-complement", pf(&vc, &wc)?, pf(w, v)?));

    let cf = complement_factor(v, w)?;
    out.push(IdentityCheck::equality("complement-principal", cf.principal, cf.direct));

    // 0 ≤ ζ ≤ 1.
    let z = zeta(v, w)?;
    out.push(IdentityCheck::residual("zeta-bounds", (-z).max(z - 1.0).max(0.0)));

    // ζ = 1 for lines, for subspaces of W, and for subspaces of W⊥.
    let l = random_subspace(field, n, 1, rng);
    let mut r = (zeta(&l, w)? - 1.0).abs();
    let u = random_subspace_within(w, rng.random_range(1..=q), rng)?;
    r = r.max((zeta(&u, w)? - 1.0).abs());
    if !wc.is_zero() {
        let y = random_subspace_within(&wc, rng.random_range(1..=wc.dim()), rng)?;
        r = r.max((zeta(&y, w)? - 1.0).abs());
    }
    out.push(IdentityCheck::residual("zeta-unit-cases", r));

    // ζ = 0 when V meets both W and W⊥.
    if wc.is_zero() {
        out.push(IdentityCheck::not_applicable("zeta-zero-case", CheckKind::Equality));
    } else {
        let x = line(random_unit_in(w, rng)?)?;
        let y = line(random_unit_in(&wc, rng)?)?;
        let extra = rng.random_range(0..=n - 2);
        let v3 = x.sum(&y)?.sum(&random_subspace(field, n, extra, rng))?;
        out.push(IdentityCheck::equality("zeta-zero-case", zeta(&v3, w)?, 0.0));
    }

    out.push(IdentityCheck::equality("complement-exterior", cf.exterior, cf.direct));
    let gram_residual = (cf.orthonormal - cf.direct).abs().max((cf.general - cf.direct).abs());
    out.push(IdentityCheck::residual("complement-gram", gram_residual));

    debug_assert_eq!(out.len(), IDENTITY_NAMES.len());
    Ok(out)
}

/// Worst case of one identity over a batch of trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub name: String,
    pub kind: CheckKind,
    pub applicable: usize,
    pub max_residual: f64,
    /// Trial index at which the worst residual occurred.
    pub worst_trial: Option<usize>,
}

/// Parameters of a randomized identity run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
    /// Ambient dimensions are drawn from `2..=max_dim`.
    pub max_dim: usize,
}

/// Runs [`verify_appendix_identities`] on `trials` random pairs. Trial `t`
/// uses its own generator stream, so the result does not depend on thread
/// scheduling.
pub fn run_identity_trials(config: &TrialConfig) -> Result<Vec<IdentitySummary>> {
    let max_dim = config.max_dim.max(2);
    let field_stream = match config.field {
        Field::Real => 0,
        Field::Complex => 1,
    };
    let per_trial: Vec<Vec<IdentityCheck>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(config.seed, 2 * t as u64 + field_stream);
            let n = rng.random_range(2..=max_dim);
            let p = rng.random_range(1..=n);
            let q = rng.random_range(1..=n);
            let v = random_subspace(config.field, n, p, &mut rng);
            let w = random_subspace(config.field, n, q, &mut rng);
            verify_appendix_identities(&v, &w, &mut rng)
        })
        .collect::<Result<_>>()?;

    let mut summary: Vec<IdentitySummary> = IDENTITY_NAMES
        .iter()
        .map(|name| IdentitySummary {
            name: name.to_string(),
            kind: CheckKind::Equality,
            applicable: 0,
            max_residual: 0.0,
            worst_trial: None,
        })
        .collect();
    for (t, checks) in per_trial.iter().enumerate() {
        for (s, c) in summary.iter_mut().zip(checks) {
            s.kind = c.kind;
            if !c.applicable {
                continue;
            }
            s.applicable += 1;
            if s.worst_trial.is_none() || c.residual > s.max_residual {
                s.max_residual = c.residual;
                s.worst_trial = Some(t);
            }
        }
    }
    Ok(summary)
}
