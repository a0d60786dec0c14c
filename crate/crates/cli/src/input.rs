//! The JSON input document.
//!
//! ```json
//! {
//!   "field": "complex",
//!   "ambient_dim": 2,
//!   "subspaces": { "L": [[[1, 0], [0, 1]]] },
//!   "partitions": { "P": [[[[1, 0], [0, 0]]], [[[0, 0], [1, 0]]]] },
//!   "states": { "psi": [[0.6, 0], [0, 0.8]] },
//!   "observables": { "A": { "partition": "P", "eigenvalues": [1, -1] } }
//! }
//! ```
//!
//! Subspaces are lists of basis vectors, partitions lists of subspaces.
//! Complex entries are `[re, im]`; plain numbers are accepted as real.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pfactor::measure::{koch_snowflake, Parallelotope, SampledSet};
use pfactor::pythagoras::{CoordinateFamily, MeasuredSet, OrthogonalPartition};
use pfactor::quantum::{Observable, QuantumState};
use pfactor::{Field, Subspace, Vector};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

pub type RawVector = Vec<Scalar>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub basis: Vec<RawVector>,
    pub q: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub partition: String,
    pub eigenvalues: Vec<f64>,
}

/// Sets for the measure identities. Sampled kinds are described in real
/// orthonormal coordinates of their carrier subspace.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetSpec {
    /// Union of parallelotopes with disjoint interiors, each a list of edges.
    Cells { cells: Vec<Vec<RawVector>> },
    Parallelotope { edges: Vec<RawVector> },
    Disk { carrier: String, radius: f64 },
    Intervals { carrier: String, intervals: Vec<(f64, f64)> },
    Polygon { carrier: String, vertices: Vec<[f64; 2]> },
    Snowflake { carrier: String, level: u32, side: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: Field,
    pub ambient_dim: usize,
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<RawVector>>,
    #[serde(default)]
    pub partitions: BTreeMap<String, Vec<Vec<RawVector>>>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub sets: BTreeMap<String, SetSpec>,
    #[serde(default)]
    pub states: BTreeMap<String, RawVector>,
    #[serde(default)]
    pub observables: BTreeMap<String, ObservableSpec>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, section: &str, name: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::Input(format!("no entry '{name}' in section '{section}'")))
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Input(format!("schema: {e}")))?;
        if doc.ambient_dim == 0 {
            return Err(CliError::Input("ambient_dim must be positive".into()));
        }
        Ok(doc)
    }

    pub fn vector(&self, raw: &[Scalar], what: &str) -> Result<Vector, CliError> {
        if raw.len() != self.ambient_dim {
            return Err(CliError::Input(format!(
                "{what}: vector has {} entries, ambient_dim is {}",
                raw.len(),
                self.ambient_dim
            )));
        }
        let entries = raw
            .iter()
            .map(|s| match (*s, self.field) {
                (Scalar::Real(x), _) => Ok(Complex64::new(x, 0.0)),
                (Scalar::Complex([re, im]), Field::Complex) => Ok(Complex64::new(re, im)),
                (Scalar::Complex([re, im]), Field::Real) if im == 0.0 => Ok(Complex64::new(re, 0.0)),
                (Scalar::Complex(_), Field::Real) => Err(CliError::Input(format!(
                    "{what}: complex entry in a real document"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Vector::from_entries(self.field, entries))
    }

    fn vectors(&self, raw: &[RawVector], what: &str) -> Result<Vec<Vector>, CliError> {
        raw.iter().map(|v| self.vector(v, what)).collect()
    }

    fn subspace_from(&self, raw: &[RawVector], what: &str) -> Result<Subspace, CliError> {
        let basis = self.vectors(raw, what)?;
        Subspace::new(self.field, self.ambient_dim, basis).map_err(|e| CliError::Input(format!("{what}: {e}")))
    }

    pub fn subspace(&self, name: &str) -> Result<Subspace, CliError> {
        self.subspace_from(lookup(&self.subspaces, "subspaces", name)?, &format!("subspace '{name}'"))
    }

    pub fn partition(&self, name: &str) -> Result<OrthogonalPartition, CliError> {
        let raw = lookup(&self.partitions, "partitions", name)?;
        let what = format!("partition '{name}'");
        let parts = raw
            .iter()
            .map(|p| self.subspace_from(p, &what))
            .collect::<Result<Vec<_>, _>>()?;
        OrthogonalPartition::new(parts).map_err(|e| CliError::Input(format!("{what}: {e}")))
    }

    /// Named family, or the canonical one when `name` is `None`.
    pub fn family(&self, name: Option<&str>, q: usize) -> Result<CoordinateFamily, CliError> {
        let result = match name {
            None => CoordinateFamily::canonical(self.field, self.ambient_dim, q),
            Some(name) => {
                let spec = lookup(&self.families, "families", name)?;
                let basis = self.vectors(&spec.basis, &format!("family '{name}'"))?;
                CoordinateFamily::new(basis, spec.q)
            }
        };
        result.map_err(|e| CliError::Input(format!("coordinate family: {e}")))
    }

    pub fn state(&self, name: &str) -> Result<QuantumState, CliError> {
        let what = format!("state '{name}'");
        let v = self.vector(lookup(&self.states, "states", name)?, &what)?;
        QuantumState::new(v).map_err(|e| CliError::Input(format!("{what}: {e}")))
    }

    pub fn observable(&self, name: &str) -> Result<Observable, CliError> {
        let spec = lookup(&self.observables, "observables", name)?;
        let partition = self.partition(&spec.partition)?;
        Observable::new(partition, spec.eigenvalues.clone())
            .map_err(|e| CliError::Input(format!("observable '{name}': {e}")))
    }

    fn cell(&self, edges: &[RawVector], what: &str) -> Result<Parallelotope, CliError> {
        let edges = self.vectors(edges, what)?;
        Parallelotope::new(self.field, self.ambient_dim, edges).map_err(|e| CliError::Input(format!("{what}: {e}")))
    }

    pub fn set(&self, name: &str, samples: usize, seed: u64) -> Result<MeasuredSet, CliError> {
        let what = format!("set '{name}'");
        let wrap = |r: pfactor::Result<SampledSet>| r.map_err(|e| CliError::Input(format!("{what}: {e}")));
        Ok(match lookup(&self.sets, "sets", name)? {
            SetSpec::Parallelotope { edges } => MeasuredSet::Cells(vec![self.cell(edges, &what)?]),
            SetSpec::Cells { cells } => MeasuredSet::Cells(
                cells
                    .iter()
                    .map(|c| self.cell(c, &what))
                    .collect::<Result<_, _>>()?,
            ),
            SetSpec::Disk { carrier, radius } => {
                MeasuredSet::Sampled(wrap(SampledSet::disk(self.subspace(carrier)?, *radius, samples, seed))?)
            }
            SetSpec::Intervals { carrier, intervals } => MeasuredSet::Sampled(wrap(SampledSet::intervals(
                self.subspace(carrier)?,
                intervals.clone(),
                samples,
                seed,
            ))?),
            SetSpec::Polygon { carrier, vertices } => MeasuredSet::Sampled(wrap(SampledSet::polygon(
                self.subspace(carrier)?,
                vertices.clone(),
                samples,
                seed,
            ))?),
            SetSpec::Snowflake { carrier, level, side } => MeasuredSet::Sampled(wrap(SampledSet::polygon(
                self.subspace(carrier)?,
                koch_snowflake(*level, *side),
                samples,
                seed,
            ))?),
        })
    }
}
