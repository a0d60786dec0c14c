//! One function per subcommand, each producing a [`ReportDocument`].

use pfactor::measure::{Parallelotope, SampledSet};
use pfactor::projection::appendix::{run_identity_trials, TrialConfig};
use pfactor::projection::{
    factor_all_paths, factor_by_path, grassmann_angle, principal_decomposition, projection_factor, FactorPath,
};
use pfactor::pythagoras::{
    verify_binomial_identity, verify_line_partition, verify_measure_line, verify_measure_subspace_q,
    verify_subspace_coordinates, CoordinateFamily, MeasuredSet, OrthogonalPartition,
};
use pfactor::quantum::{born_report, bures_angle, fidelity};
use pfactor::random::{random_subspace, stream_rng};
use pfactor::report::SumReport;
use pfactor::{tol, Field, Subspace, Vector};
use rand::Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::report::{Item, ReportDocument};
use crate::{load_input, Cli, Command, PathArg, Theorem};

pub fn run(cli: &Cli, args: Vec<String>) -> Result<ReportDocument, CliError> {
    let (field, items) = match &cli.command {
        Command::Factor { input, v, w, path } => {
            let doc = load_input(input.as_ref(), cli.field)?;
            let vs = doc.subspace(v)?;
            let mut items = Vec::new();
            for name in w {
                let ws = doc.subspace(name)?;
                items.extend(factor_items(cli, &vs, &ws, &format!("pi({v},{name})"), *path)?);
            }
            (doc.field, items)
        }
        Command::Angle { input, v, w } => {
            let doc = load_input(input.as_ref(), cli.field)?;
            let (vs, ws) = (doc.subspace(v)?, doc.subspace(w)?);
            let mut item = Item::value(format!("grassmann-angle({v},{w})"), grassmann_angle(&vs, &ws)?);
            if !vs.is_zero() && !ws.is_zero() {
                let pd = principal_decomposition(&vs, &ws)?;
                item = item.with_details(&serde_json::json!({ "principal_angles": pd.theta }));
            }
            (doc.field, vec![item])
        }
        Command::Principal { input, v, w } => {
            let doc = load_input(input.as_ref(), cli.field)?;
            let (vs, ws) = (doc.subspace(v)?, doc.subspace(w)?);
            let pd = principal_decomposition(&vs, &ws)?;
            let details = PrincipalDetails {
                sigma: pd.sigma.clone(),
                theta: pd.theta.clone(),
                pi_principal: pd.pi_principal.clone(),
                e_vecs: pd.e_vecs.iter().map(entries).collect(),
                f_vecs: pd.f_vecs.iter().map(entries).collect(),
            };
            let item = Item::value(format!("principal({v},{w})"), projection_factor(&vs, &ws)?).with_details(&details);
            (doc.field, vec![item])
        }
        Command::Verify { theorem, random, .. } => match random {
            Some(dims) => {
                let field = cli.field.map(Field::from).unwrap_or(Field::Real);
                (field, verify_random(cli, *theorem, field, dims)?)
            }
            None => verify_input(cli)?,
        },
        Command::Appendix { trials, dims_up_to } => {
            let field = cli.field.map(Field::from).unwrap_or(Field::Real);
            let config = TrialConfig {
                field,
                trials: *trials,
                seed: cli.seed,
                max_dim: *dims_up_to,
            };
            let tolerance = cli.tol.unwrap_or(tol::CROSS_PATH);
            let items = if *trials == 0 {
                Vec::new()
            } else {
                run_identity_trials(&config)?
                    .into_iter()
                    .map(|s| {
                        Item::check(s.name.clone(), s.max_residual, tolerance).with_details(&serde_json::json!({
                            "kind": s.kind,
                            "applicable": s.applicable,
                            "worst_trial": s.worst_trial,
                        }))
                    })
                    .collect()
            };
            (field, items)
        }
        Command::Quantum {
            input,
            state,
            observable,
            compare,
        } => {
            let doc = load_input(input.as_ref(), cli.field)?;
            let psi = doc.state(state)?;
            let obs = doc.observable(observable)?;
            let report = born_report(&psi, &obs)?;
            let mut items: Vec<Item> = report
                .eigenvalues
                .iter()
                .zip(&report.probabilities)
                .map(|(l, p)| Item::value(format!("probability({state}, {l})"), *p))
                .collect();
            let tolerance = cli.tol.unwrap_or(tol::RECONSTRUCTION);
            items.push(Item::check("total-probability", report.residual, tolerance).with_value(report.total));
            for other in compare {
                let phi = doc.state(other)?;
                items.push(Item::value(
                    format!("fidelity({state},{other})"),
                    fidelity(psi.psi(), phi.psi())?,
                ));
                items.push(Item::value(
                    format!("bures-angle({state},{other})"),
                    bures_angle(psi.psi(), phi.psi())?,
                ));
            }
            (doc.field, items)
        }
    };
    Ok(ReportDocument::new(args, cli.seed, field.to_string(), items))
}

#[derive(Serialize)]
struct PrincipalDetails {
    sigma: Vec<f64>,
    theta: Vec<f64>,
    pi_principal: Vec<f64>,
    e_vecs: Vec<Vec<[f64; 2]>>,
    f_vecs: Vec<Vec<[f64; 2]>>,
}

fn entries(v: &Vector) -> Vec<[f64; 2]> {
    v.entries().iter().map(|z| [z.re, z.im]).collect()
}

fn factor_items(cli: &Cli, v: &Subspace, w: &Subspace, name: &str, path: PathArg) -> Result<Vec<Item>, CliError> {
    let single = |p: FactorPath| -> Result<Item, CliError> {
        let r = factor_by_path(v, w, p)?;
        Ok(Item::value(name, r.value).with_path(p.name()))
    };
    Ok(match path {
        PathArg::Svd => vec![single(FactorPath::Svd)?],
        PathArg::Det => vec![single(FactorPath::OrthonormalDet)?],
        PathArg::Gram => vec![single(FactorPath::GeneralBasisDet)?],
        PathArg::Blade => vec![single(FactorPath::Blades)?],
        PathArg::Interior => vec![single(FactorPath::Interior)?],
        PathArg::Grassmann => vec![single(FactorPath::GrassmannAngle)?],
        PathArg::All => {
            let reports = factor_all_paths(v, w)?;
            let spread = reports
                .iter()
                .flat_map(|a| reports.iter().map(move |b| (a.value - b.value).abs()))
                .fold(0.0, f64::max);
            let mut items: Vec<Item> = reports
                .iter()
                .map(|r| Item::value(name, r.value).with_path(r.path.name()))
                .collect();
            items.push(Item::check(format!("{name} pairwise"), spread, cli.tol.unwrap_or(tol::CROSS_PATH)));
            items
        }
    })
}

fn sum_item(report: SumReport, tol_override: Option<f64>) -> Item {
    let report = match tol_override {
        Some(t) => report.with_tolerance(t),
        None => report,
    };
    Item {
        name: report.identity.clone(),
        path: None,
        value: Some(report.sum),
        residual: Some(report.residual),
        tolerance: Some(report.tolerance),
        pass: report.pass,
        details: None,
    }
    .with_details(&report)
}

fn verify_input(cli: &Cli) -> Result<(Field, Vec<Item>), CliError> {
    let Command::Verify {
        theorem,
        input,
        subspace,
        partition,
        family,
        q,
        set,
        ..
    } = &cli.command
    else {
        unreachable!("called for verify only");
    };
    let doc = load_input(input.as_ref(), cli.field)?;
    let need = |o: &Option<String>, flag: &str| {
        o.clone()
            .ok_or_else(|| CliError::Input(format!("{theorem:?} needs --{flag} (or --random)")))
    };
    let v = doc.subspace(&need(subspace, "subspace")?)?;
    let report = match theorem {
        Theorem::LinePartition => verify_line_partition(&v, &doc.partition(&need(partition, "partition")?)?)?,
        Theorem::SubspaceCoords => {
            verify_subspace_coordinates(&v, &doc.family(family.as_deref(), q.unwrap_or(v.dim()))?)?
        }
        Theorem::Binomial => verify_binomial_identity(&v, &doc.family(family.as_deref(), q.unwrap_or(v.dim()))?)?,
        Theorem::Measure => {
            let s = doc.set(&need(set, "set")?, cli.samples, cli.seed)?;
            match partition {
                Some(p) => verify_measure_line(&v, &s, &doc.partition(p)?)?,
                None => verify_measure_subspace_q(&s, &v, &doc.family(family.as_deref(), q.unwrap_or(v.dim()))?)?,
            }
        }
    };
    Ok((doc.field, vec![sum_item(report, cli.tol)]))
}

fn verify_random(cli: &Cli, theorem: Theorem, field: Field, dims: &[usize]) -> Result<Vec<Item>, CliError> {
    let (n, p, q) = (dims[0], dims[1], dims[2]);
    if n == 0 || p == 0 || p > n || q == 0 || q > n {
        return Err(CliError::Input(format!("--random needs 1 ≤ P, Q ≤ N, got {n} {p} {q}")));
    }
    let mut rng = stream_rng(cli.seed, 0);
    let reports = match theorem {
        Theorem::LinePartition => {
            let partition = OrthogonalPartition::random(field, n, q, &mut rng);
            let line = random_subspace(field, n, 1, &mut rng);
            vec![verify_line_partition(&line, &partition)?]
        }
        Theorem::SubspaceCoords => {
            let v = random_subspace(field, n, p, &mut rng);
            vec![verify_subspace_coordinates(&v, &CoordinateFamily::canonical(field, n, p)?)?]
        }
        Theorem::Binomial => {
            let v = random_subspace(field, n, p, &mut rng);
            vec![verify_binomial_identity(&v, &CoordinateFamily::canonical(field, n, q)?)?]
        }
        Theorem::Measure => {
            if q < p {
                return Err(CliError::Input(format!("measure identity needs Q ≥ P, got P = {p}, Q = {q}")));
            }
            let v = random_subspace(field, n, p, &mut rng);
            let family = CoordinateFamily::canonical(field, n, q)?;
            let cell = match field {
                Field::Real => Parallelotope::new(field, n, v.basis().to_vec())?,
                Field::Complex => Parallelotope::complex_cell(n, v.basis())?,
            };
            let mut reports = vec![verify_measure_subspace_q(&MeasuredSet::Cells(vec![cell]), &v, &family)?];
            if v.real_dim() == 2 {
                let radius = rng.random_range(0.5..2.0);
                let disk = SampledSet::disk(v.clone(), radius, cli.samples, cli.seed)?;
                reports.push(verify_measure_subspace_q(&MeasuredSet::Sampled(disk), &v, &family)?);
            }
            reports
        }
    };
    Ok(reports.into_iter().map(|r| sum_item(r, cli.tol)).collect())
}
