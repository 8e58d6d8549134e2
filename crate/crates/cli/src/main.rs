use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eigenspace_cli::pipeline::{self, Options, Stage};
use eigenspace_cli::sampling::DEFAULT_SEED;
use eigenspace_cli::GroupSource;
use eigenspace_core::eigen::Weight;
use eigenspace_core::numeric::DEFAULT_PRECISION;
use eigenspace_core::parse::parse_scalar_list;

#[derive(Parser)]
#[command(name = "eigenspace", version, about = "Invariant theory of finite reflection groups and eigenspace certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, pseudo-reflections and orthogonality of the group
    Info(Args),
    /// Molien series and fundamental degrees
    Molien(Args),
    /// Fundamental invariants
    Invariants(Args),
    /// Harmonic polynomials
    Harmonics(Args),
    /// Eigenspace certificates for the given weights
    Eigenspace(Args),
    /// Every stage and every theorem check
    VerifyAll(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Args {
    /// Built-in group, e.g. dihedral:5, symmetric:3, hyperoctahedral:2, cyclic:4, trivial:2
    #[arg(long, value_name = "SPEC", conflicts_with = "group", required_unless_present = "group")]
    builtin: Option<String>,
    /// JSON group-definition file
    #[arg(long, value_name = "FILE")]
    group: Option<PathBuf>,
    /// Weight entries, e.g. "i*1, i*2"; repeatable
    #[arg(long = "weight", value_name = "ENTRIES")]
    weights: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Truncation degree of the reported Molien series
    #[arg(long, value_name = "N")]
    max_degree: Option<usize>,
    /// Working precision of the numeric checks in bits
    #[arg(long, value_name = "BITS", default_value_t = DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(53..=4096))]
    precision: u32,
    #[arg(long, value_name = "S", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random (g, v) pairs per weight for the equivariance check
    #[arg(long, value_name = "COUNT", default_value_t = pipeline::DEFAULT_SAMPLES)]
    samples: usize,
    /// Include stage timings (makes output machine dependent)
    #[arg(long)]
    timings: bool,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, args) = match cli.command {
        Command::Info(a) => (Stage::Info, a),
        Command::Molien(a) => (Stage::Molien, a),
        Command::Invariants(a) => (Stage::Invariants, a),
        Command::Harmonics(a) => (Stage::Harmonics, a),
        Command::Eigenspace(a) => (Stage::Eigenspace, a),
        Command::VerifyAll(a) => (Stage::All, a),
    };
    let source = match (&args.builtin, &args.group) {
        (Some(spec), _) => GroupSource::Builtin(spec.clone()),
        (None, Some(path)) => GroupSource::File(path.clone()),
        (None, None) => return usage_error("one of --builtin or --group is required"),
    };
    let group = match source.load() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut weights = Vec::with_capacity(args.weights.len());
    for text in &args.weights {
        let entries = match parse_scalar_list(text) {
            Ok(v) => v,
            Err(e) => return usage_error(format!("--weight {text:?}: {e}")),
        };
        if entries.len() != group.dimension() {
            return usage_error(format!(
                "--weight {text:?} has {} entries, the group acts on R^{}",
                entries.len(),
                group.dimension()
            ));
        }
        match Weight::new(entries) {
            Ok(w) => weights.push(w),
            Err(e) => return usage_error(format!("--weight {text:?}: {e}")),
        }
    }
    let opts = Options {
        max_degree: args.max_degree,
        precision: args.precision,
        seed: args.seed,
        samples: args.samples,
        timings: args.timings,
    };
    let report = pipeline::run(stage, &group, &weights, &opts);
    let rendered = match args.output {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    if let Some(f) = &report.failure {
        eprintln!("verification failed at {f}");
    }
    ExitCode::from(report.exit_code() as u8)
}
