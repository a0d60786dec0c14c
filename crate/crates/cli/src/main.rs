//! `pfactor`: projection factors, Grassmann angles and the generalized
//! Pythagorean identities from the command line.
//!
//! Exit codes: 0 when every item passes, 1 when a verification fails, 2 on
//! input errors.

mod commands;
mod error;
mod input;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pfactor::tol;

use crate::error::CliError;
use crate::input::InputDocument;

#[derive(Debug, Parser)]
#[command(name = "pfactor", version, about = "Projection factors between real and complex subspaces")]
pub struct Cli {
    /// Scalar field; must match the input document when both are given.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Monte Carlo sample count for sampled sets.
    #[arg(long, global = true, default_value_t = tol::MC_SAMPLES_LIBRARY)]
    pub samples: usize,
    /// Override the default tolerance of every check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for pfactor::Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => pfactor::Field::Real,
            FieldArg::Complex => pfactor::Field::Complex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    /// Product of principal factors.
    Svd,
    /// Determinant in orthonormal bases.
    Det,
    /// Gram determinants in the given bases.
    Gram,
    /// Blade inner products.
    Blade,
    /// Interior product.
    Interior,
    /// Cosine of the Grassmann angle.
    Grassmann,
    /// Every path, plus their largest pairwise difference.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Σ over a partition of the factors of a line.
    LinePartition,
    /// Σ over the dim-V coordinate subspaces.
    SubspaceCoords,
    /// Σ over q-dimensional coordinate subspaces against a binomial coefficient.
    Binomial,
    /// Measure form: a set against its projections.
    Measure,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Projection factor of V onto each W.
    Factor {
        /// Input document; standard input when absent or "-".
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        v: String,
        #[arg(long, required = true)]
        w: Vec<String>,
        #[arg(long, value_enum, default_value_t = PathArg::Svd)]
        path: PathArg,
    },
    /// Grassmann angle and principal angles.
    Angle {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Principal decomposition.
    Principal {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Check a Pythagorean identity on input objects or random ones.
    ///
    /// With --random N P Q: line-partition splits R^N or C^N into Q parts;
    /// subspace-coords draws V of dimension P; binomial and measure draw V of
    /// dimension P and use the Q-dimensional coordinate subspaces.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["N", "P", "Q"])]
        random: Option<Vec<usize>>,
        /// The line (line-partition) or V (other theorems).
        #[arg(long)]
        subspace: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        /// Named coordinate family; the canonical basis otherwise.
        #[arg(long)]
        family: Option<String>,
        /// Dimension of the coordinate subspaces; defaults to dim V.
        #[arg(long)]
        q: Option<usize>,
        /// Set for the measure theorem.
        #[arg(long)]
        set: Option<String>,
    },
    /// Worst residual of every structural identity over random pairs.
    Appendix {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        dims_up_to: usize,
    },
    /// Born probabilities of a state for an observable.
    Quantum {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        state: String,
        #[arg(long)]
        observable: String,
        /// Further states to compare by fidelity and Bures angle.
        #[arg(long)]
        compare: Vec<String>,
    },
}

/// Reads the input document and reconciles its field with `--field`.
pub fn load_input(path: Option<&PathBuf>, field: Option<FieldArg>) -> Result<InputDocument, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            s
        }
    };
    let doc = InputDocument::parse(&text)?;
    if let Some(f) = field {
        if pfactor::Field::from(f) != doc.field {
            return Err(CliError::Input(format!(
                "--field {} contradicts document field {}",
                pfactor::Field::from(f),
                doc.field
            )));
        }
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match commands::run(&cli, args) {
        Ok(report) => {
            match cli.format {
                Format::Structured => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.summary.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("pfactor: {e}");
            ExitCode::from(2)
        }
    }
}
