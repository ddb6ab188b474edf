//! Command-line front end.
//!
//! Every command reads JSON input files in the formats of [`crate::io`],
//! writes a JSON report to standard output (or `--out`), and exits with
//! 0 on success, 2 on a validation error (malformed files, schema
//! violations), or 3 on a mathematical precondition failure (NotSymmetric,
//! DegenerateSuperdiagonal, WindowExhausted, ...). Error reports are
//! structured objects carrying the error name.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::decomposition::{compose, decompose, decompose_f64, detect_index, detect_index_f64};
use crate::error::{Error, Result};
use crate::favard::{
    verdict_from_hessenberg, verdict_from_hessenberg_f64, verdict_from_moment_matrix,
    verdict_from_moment_matrix_f64,
};
use crate::hessenberg::{generate_polynomials, moment_matrix, moment_matrix_f64};
use crate::io::{self, MatrixInput};
use crate::matrix::{Coeff, HessenbergTrunc, TruncatedMatrix};
use crate::measures::{classify_hankel, classify_hankel_f64, recover_discrete_measure};
use crate::operators::{phi, psi};
use crate::scalar::{ExactScalar, Tolerance};

#[derive(Parser, Debug)]
#[command(
    name = "hankel-sobolev",
    version,
    about = "Hankel-Sobolev structure detection and Favard-type verdicts in exact arithmetic"
)]
pub struct Cli {
    /// Absolute zero tolerance for floating-point inputs.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,

    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply the shift-difference operator at level ETA.
    Phi {
        /// Matrix file (full, hankel, or hessenberg form).
        input: PathBuf,
        #[arg(long)]
        eta: usize,
    },
    /// Apply the Hessenberg-side operator at level ETA.
    Psi {
        /// Lower Hessenberg matrix file.
        input: PathBuf,
        #[arg(long)]
        eta: usize,
    },
    /// Find the smallest index d with phi(M, 2d+1) = O on the window.
    DetectIndex {
        /// Symmetric matrix file.
        input: PathBuf,
        #[arg(long)]
        d_max: usize,
    },
    /// Recover the Hankel layer stack of a matrix of known index.
    Decompose {
        /// Symmetric matrix file.
        input: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Assemble a matrix from a layer file on an N x N window.
    Compose {
        /// Layer file {"index": d, "layers": [...]}.
        layers: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Run the generation recurrence of a Hessenberg matrix.
    GeneratePolys {
        /// Lower Hessenberg matrix file.
        hessenberg: PathBuf,
        /// Leading normalization Q_0 = t00 > 0 (rational, e.g. "1" or "1/2").
        #[arg(long, default_value = "1")]
        t00: String,
        /// Truncate to the leading N x N block first.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Matrix of formal moments of a Hessenberg matrix.
    MomentMatrix {
        /// Lower Hessenberg matrix file.
        hessenberg: PathBuf,
        #[arg(long, default_value = "1")]
        t00: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sobolev moment matrix of a measure vector on an N x N window.
    SobolevMoments {
        /// Measure file {"levels": [...]}.
        measures: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Classify a Hankel moment sequence from N exact leading minors.
    ClassifyHankel {
        /// Hankel file {"hankel": [...]}.
        hankel: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Recover the K-point measure behind a finite-order sequence.
    RecoverDiscrete {
        /// Hankel file {"hankel": [...]}.
        hankel: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Full pipeline: index detection, decomposition, layer classification.
    FavardCheck {
        /// Interpretation of the input file.
        #[arg(long = "from", value_enum)]
        from: InputKind,
        input: PathBuf,
        #[arg(long)]
        d_max: usize,
    },
    /// Write the bundled example inputs into a directory.
    Fixtures {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InputKind {
    /// A symmetric moment matrix.
    MomentMatrix,
    /// A non-degenerate lower Hessenberg matrix.
    Hessenberg,
}

/// Executes the command and writes the report; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(report) => match write_report(cli.out.as_deref(), &report) {
            Ok(()) => 0,
            Err(err) => {
                print!("{}", io::error_json(&err));
                2
            }
        },
        Err(err) => {
            print!("{}", io::error_json(&err));
            if err.is_validation() {
                2
            } else {
                3
            }
        }
    }
}

fn write_report(out: Option<&Path>, report: &str) -> Result<()> {
    match out {
        None => {
            print!("{report}");
            Ok(())
        }
        Some(path) => std::fs::write(path, report)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path:?}: {e}"))),
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path:?}: {e}")))
}

fn shrink<S: Coeff>(m: TruncatedMatrix<S>, n: Option<usize>) -> Result<TruncatedMatrix<S>> {
    match n {
        None => Ok(m),
        Some(n) => {
            if n < 1 || n > m.window() {
                return Err(Error::InvalidInput(format!(
                    "--n {n} outside the valid window 1..={}",
                    m.window()
                )));
            }
            Ok(TruncatedMatrix::from_fn(n, |i, j| m.at(i, j).clone()))
        }
    }
}

fn as_hessenberg<S: Coeff>(m: TruncatedMatrix<S>) -> Result<HessenbergTrunc<S>> {
    HessenbergTrunc::new(m)
}

fn parse_positive_t00(text: &str) -> Result<ExactScalar> {
    let t00: ExactScalar = text.parse()?;
    if !t00.is_positive() {
        return Err(Error::InvalidInput(format!(
            "t00 must be positive, got {t00}"
        )));
    }
    Ok(t00)
}

fn execute(cli: &Cli) -> Result<String> {
    let tol = Tolerance(cli.tolerance);
    match &cli.command {
        Command::Phi { input, eta } => match io::parse_matrix(&read_file(input)?)? {
            MatrixInput::Exact(m) => Ok(io::matrix_json(&phi(&m, *eta)?.value)),
            MatrixInput::Float(m) => Ok(io::matrix_json_f64(&phi(&m, *eta)?.value)),
        },
        Command::Psi { input, eta } => match io::parse_matrix(&read_file(input)?)? {
            MatrixInput::Exact(m) => {
                let g = as_hessenberg(m)?;
                Ok(io::matrix_json(&psi(&g, *eta)?.value))
            }
            MatrixInput::Float(m) => {
                let g = as_hessenberg(m)?;
                Ok(io::matrix_json_f64(&psi(&g, *eta)?.value))
            }
        },
        Command::DetectIndex { input, d_max } => match io::parse_matrix(&read_file(input)?)? {
            MatrixInput::Exact(m) => Ok(io::index_report_json(&detect_index(&m, *d_max)?)),
            MatrixInput::Float(m) => {
                Ok(io::index_report_json(&detect_index_f64(&m, *d_max, tol)?))
            }
        },
        Command::Decompose { input, d } => match io::parse_matrix(&read_file(input)?)? {
            MatrixInput::Exact(m) => Ok(io::layers_json(&decompose(&m, *d)?)),
            MatrixInput::Float(m) => Ok(io::layers_json_f64(&decompose_f64(&m, *d, tol)?)),
        },
        Command::Compose { layers, n } => {
            let stack = io::parse_layers(&read_file(layers)?)?;
            Ok(io::matrix_json(&compose(&stack, *n)?))
        }
        Command::GeneratePolys { hessenberg, t00, n } => {
            match io::parse_matrix(&read_file(hessenberg)?)? {
                MatrixInput::Exact(m) => {
                    let g = as_hessenberg(shrink(m, *n)?)?;
                    let seq = generate_polynomials(&g, parse_positive_t00(t00)?)?;
                    Ok(io::polys_json(&seq))
                }
                MatrixInput::Float(m) => {
                    let g = as_hessenberg(shrink(m, *n)?)?;
                    let t00 = parse_positive_t00(t00)?.to_f64();
                    Ok(io::polys_json_f64(&generate_polynomials(&g, t00)?))
                }
            }
        }
        Command::MomentMatrix { hessenberg, t00, n } => {
            match io::parse_matrix(&read_file(hessenberg)?)? {
                MatrixInput::Exact(m) => {
                    let g = as_hessenberg(shrink(m, *n)?)?;
                    let moments = moment_matrix(&g, parse_positive_t00(t00)?)?;
                    Ok(io::matrix_json(moments.matrix()))
                }
                MatrixInput::Float(m) => {
                    let g = as_hessenberg(shrink(m, *n)?)?;
                    let t00 = parse_positive_t00(t00)?.to_f64();
                    Ok(io::matrix_json_f64(&moment_matrix_f64(&g, t00)?))
                }
            }
        }
        Command::SobolevMoments { measures, n } => {
            let mus = io::parse_measures(&read_file(measures)?)?;
            Ok(io::matrix_json(&crate::measures::sobolev_moment_matrix(
                &mus, *n,
            )?))
        }
        Command::ClassifyHankel { hankel, n } => {
            let text = read_file(hankel)?;
            if io::peek_float(&text)? {
                let moments = io::parse_hankel_f64(&text)?;
                Ok(io::classify_json(
                    &classify_hankel_f64(&moments, *n, tol)?,
                    *n,
                ))
            } else {
                let h = io::parse_hankel(&text)?;
                Ok(io::classify_json(&classify_hankel(&h, *n)?, *n))
            }
        }
        Command::RecoverDiscrete { hankel, k } => {
            let h = io::parse_hankel(&read_file(hankel)?)?;
            Ok(io::recovered_json(&recover_discrete_measure(&h, *k)?))
        }
        Command::FavardCheck { from, input, d_max } => {
            let parsed = io::parse_matrix(&read_file(input)?)?;
            let verdict = match (from, parsed) {
                (InputKind::MomentMatrix, MatrixInput::Exact(m)) => {
                    verdict_from_moment_matrix(&m, *d_max)?
                }
                (InputKind::MomentMatrix, MatrixInput::Float(m)) => {
                    verdict_from_moment_matrix_f64(&m, *d_max, tol)?
                }
                (InputKind::Hessenberg, MatrixInput::Exact(m)) => {
                    verdict_from_hessenberg(&as_hessenberg(m)?, *d_max)?
                }
                (InputKind::Hessenberg, MatrixInput::Float(m)) => {
                    verdict_from_hessenberg_f64(&as_hessenberg(m)?, *d_max, tol)?
                }
            };
            Ok(io::favard_json(&verdict))
        }
        Command::Fixtures { dir } => {
            let written = crate::fixtures::write_all(dir)?;
            let names: Vec<String> = written
                .iter()
                .map(|p| p.to_string_lossy().into_owned())
                .collect();
            let value = serde_json::json!({ "written": names });
            let mut text =
                serde_json::to_string_pretty(&value).expect("report serialization is infallible");
            text.push('\n');
            Ok(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn t00_must_be_positive_rational() {
        assert!(parse_positive_t00("1/2").is_ok());
        assert!(parse_positive_t00("0").is_err());
        assert!(parse_positive_t00("-3").is_err());
        assert!(parse_positive_t00("0.5").is_err());
    }
}
