use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use circuit_growth::experiment::{
    error_json, run, validate, ExperimentKind, LoadedConfig, EXIT_CONFIG, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "circuit-growth", version, about = "Circuit-growth experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Accessible-dimension curve of a block architecture.
    DimensionCurve(RunArgs),
    /// Dimension curve plus growth checks and the shortcut table.
    GrowthReport(RunArgs),
    /// Exact complexity of random walks and the Kingman rate.
    WalkComplexity(RunArgs),
    /// Return-probability estimates.
    ReturnProb(RunArgs),
    /// Check a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
        /// Experiment kind to validate against; taken from the config when absent.
        #[arg(long)]
        kind: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn config_error(message: &str, findings: &[String]) -> ExitCode {
    eprintln!("{}", error_json(message, findings));
    ExitCode::from(EXIT_CONFIG as u8)
}

fn parse_kind(s: &str) -> Option<ExperimentKind> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).ok()
}

fn execute(kind: ExperimentKind, args: RunArgs) -> ExitCode {
    let mut loaded = match LoadedConfig::load(&args.config) {
        Ok(l) => l,
        Err(e) => return config_error(&e.to_string(), &[]),
    };
    if let Some(seed) = args.seed {
        loaded.config.seed = seed;
    }
    let findings = validate(&loaded, kind);
    if !findings.is_empty() {
        return config_error("invalid config", &findings);
    }
    let out = args
        .out
        .or_else(|| loaded.config.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out").join(kind.as_str()));
    match run(&loaded, kind, &out, args.threads) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            for v in &outcome.verdicts {
                println!("{} {}", if v.pass { "PASS" } else { "FAIL" }, v.name);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e @ circuit_growth::Error::Config(_)) => config_error(&e.to_string(), &[]),
        Err(e) => {
            eprintln!("{}", error_json(&e.to_string(), &[]));
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::DimensionCurve(a) => execute(ExperimentKind::DimensionCurve, a),
        Command::GrowthReport(a) => execute(ExperimentKind::GrowthReport, a),
        Command::WalkComplexity(a) => execute(ExperimentKind::WalkComplexity, a),
        Command::ReturnProb(a) => execute(ExperimentKind::ReturnProb, a),
        Command::Validate { config, kind } => {
            let loaded = match LoadedConfig::load(&config) {
                Ok(l) => l,
                Err(e) => return config_error(&e.to_string(), &[]),
            };
            let kind = match kind.as_deref().map(parse_kind).or(Some(loaded.config.kind)) {
                Some(Some(k)) => k,
                _ => return config_error("experiment kind unknown; pass --kind", &[]),
            };
            let findings = validate(&loaded, kind);
            if findings.is_empty() {
                println!(
                    "{}",
                    serde_json::json!({ "valid": true, "kind": kind.as_str() })
                );
                ExitCode::from(EXIT_OK as u8)
            } else {
                config_error("invalid config", &findings)
            }
        }
    }
}
