use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use skewfield::commands::{self, CheckArgs, CheckSource, CheckTarget, EnvelopeArgs, SpecializeArgs};
use skewfield::{corpus, InputError, RunReport};

/// Exact verifiers for tori, specialization and p-envelopes.
/// Exit status: 0 all verdicts pass, 1 a verdict fails, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "skewfield", version)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings; reports are then no longer reproducible.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Jacobi,
    Torus,
    Walrus,
    GaloisRoundtrip,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one family of structural checks.
    Check {
        target: Target,
        /// Algebra file (torus targets) or Lie algebra file (jacobi).
        #[arg(long, conflicts_with = "zassenhaus")]
        file: Option<PathBuf>,
        /// Use the Zassenhaus algebra W(1, m) over F_p.
        #[arg(long, num_args = 2, value_names = ["P", "M"])]
        zassenhaus: Option<Vec<u32>>,
        /// Torus generator: a basis name or a JSON element object; repeatable.
        #[arg(long)]
        torus: Vec<String>,
    },
    /// Specialize generators of D(X) at seeded and explicit points.
    Specialize {
        algebra: PathBuf,
        generators: PathBuf,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        height: u32,
        /// First seed; points use seeds seed..seed+seeds.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit point such as u=0; repeatable.
        #[arg(long)]
        point: Vec<String>,
    },
    /// Build the p-envelope chain of L in a restricted ambient and check its u-variables.
    Envelope {
        lie: PathBuf,
        ambient: PathBuf,
        /// Freeness degree bound (default p + 1).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Inspect the built-in corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// List corpus entries.
    List,
    /// Write every corpus entry into a directory.
    Write { dir: PathBuf },
}

fn run(cli: &Cli) -> Result<RunReport, InputError> {
    match &cli.command {
        Command::Check { target, file, zassenhaus, torus } => {
            let source = match (file, zassenhaus) {
                (Some(f), _) => CheckSource::File(f.clone()),
                (None, Some(pm)) => CheckSource::Zassenhaus(pm[0], pm[1]),
                (None, None) => return Err(InputError::Invalid("check needs --file or --zassenhaus".into())),
            };
            let target = match target {
                Target::Jacobi => CheckTarget::Jacobi,
                Target::Torus => CheckTarget::Torus,
                Target::Walrus => CheckTarget::Walrus,
                Target::GaloisRoundtrip => CheckTarget::GaloisRoundtrip,
            };
            commands::check(&CheckArgs { target, source, torus: torus.clone() })
        }
        Command::Specialize { algebra, generators, seeds, height, seed, point } => commands::specialize(&SpecializeArgs {
            algebra: algebra.clone(),
            generators: generators.clone(),
            seeds: *seeds,
            height: *height,
            seed: *seed,
            points: point.clone(),
        }),
        Command::Envelope { lie, ambient, degree } => commands::envelope(
            &EnvelopeArgs { lie: lie.clone(), ambient: ambient.clone(), degree: *degree },
            cli.timings,
        ),
        Command::Corpus { .. } => unreachable!("handled before report commands"),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), InputError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| InputError::Io(path.display().to_string(), e.to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn corpus_action(cli: &Cli, action: &CorpusAction) -> Result<(), InputError> {
    match action {
        CorpusAction::List => {
            let text: String = corpus::ENTRIES.iter().map(|e| format!("{}\t{}\n", e.name, e.about)).collect();
            emit(cli, &text)
        }
        CorpusAction::Write { dir } => {
            let written = corpus::write_all(dir).map_err(|e| InputError::Io(dir.display().to_string(), e.to_string()))?;
            let text: String = written.iter().map(|p| format!("{}\n", p.display())).collect();
            emit(cli, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Corpus { action } => corpus_action(&cli, action).map(|()| 0),
        _ => run(&cli).and_then(|mut report| {
            if !cli.timings {
                report.timings = None;
            }
            emit(&cli, &report.to_json())?;
            for v in report.failures() {
                eprintln!("FAIL {}: {} [{}]", v.operation, v.name, v.instance);
            }
            Ok(report.exit_code())
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
