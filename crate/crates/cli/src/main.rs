mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{RunReport, Verdict};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "pdchain", version, about = "Exact computations with Poincaré duality chain complexes")]
struct Cli {
    /// Largest fundamental group order accepted.
    #[arg(long, global = true, default_value_t = 24)]
    bound_group_order: usize,
    /// Largest total number of cells accepted.
    #[arg(long, global = true, default_value_t = 512)]
    bound_rank: usize,
    /// Include witness matrices in the report.
    #[arg(long, global = true)]
    witnesses: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Homology with Λ and with ℤ^ω coefficients.
    Homology { file: PathBuf },
    /// Check the PD axioms (and weak standardness when the document asks).
    VerifyPd { file: PathBuf },
    /// The fundamental triple.
    Triple { file: PathBuf },
    /// Search for an isomorphism of fundamental triples.
    Compare { first: PathBuf, second: PathBuf },
    /// Degree-one maps from the first complex to the second.
    DegreeOne {
        source: PathBuf,
        target: PathBuf,
        /// Images of the source's generators; defaults to the collapse or the identity.
        #[arg(long, value_delimiter = ',')]
        images: Option<Vec<usize>>,
    },
    /// The 2-type complex P(∂_f, B) and its homology.
    PtChain { file: PathBuf },
    /// Find or verify a diagonal and test its symmetry.
    Diagonal { file: PathBuf },
    /// PD⁴ realization obstruction groups.
    ObstructionTargets { file: PathBuf },
    /// Check that a document is in canonical form.
    Roundtrip { file: PathBuf },
    /// Write (or with --check, compare against) the standard corpus.
    Corpus {
        dir: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

/// Limits on input size; exceeding one exits with code 3.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub group_order: usize,
    pub rank: usize,
    pub witnesses: bool,
}

/// A computation refused for exceeding a configured bound.
#[derive(Debug, thiserror::Error)]
#[error("resource bound exceeded: {0}")]
pub struct ResourceBound(pub String);

/// Malformed or inconsistent input.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits { group_order: cli.bound_group_order, rank: cli.bound_rank, witnesses: cli.witnesses };
    match commands::run(&cli.command, limits) {
        Ok(report) => {
            print_report(&report, cli.format);
            match report.verdict {
                Verdict::Pass => ExitCode::from(0),
                Verdict::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ResourceBound>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn print_report(report: &RunReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Text => print!("{}", report.to_text()),
    }
}
