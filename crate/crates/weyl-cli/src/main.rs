//! `weyl`: exact arithmetic for linear differential operators in the
//! first Weyl algebra, from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weyl::{FieldDescriptor, WeylError};
use weyl_cli::commands::{self, Algorithm};
use weyl_cli::{bench, parse_profiles, verify};

#[derive(Parser)]
#[command(
    name = "weyl",
    about = "Exact multiplication and reflection of linear differential operators",
    long_about = "Operators are sums of terms `c`, `c*x^j`, `c*D^i`, `c*x^j*D^i` where D \
                  denotes the derivation and c is a field scalar (`a/b` rational or a prime \
                  residue). Operator arguments may also name files holding the textual or \
                  JSON form."
)]
struct Cli {
    /// Coefficient field: `rational` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    /// Multiplication path selection for `mul`.
    #[arg(long, global = true, value_enum, default_value_t = AlgorithmArg::Auto)]
    algorithm: AlgorithmArg,
    /// Seed for every random draw (verification, benchmarks).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for the per-block parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the command output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Naive,
    Fast,
    Auto,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Algorithm {
        match a {
            AlgorithmArg::Naive => Algorithm::Naive,
            AlgorithmArg::Fast => Algorithm::Fast,
            AlgorithmArg::Auto => Algorithm::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two operators and print the canonical form.
    Mul { left: String, right: String },
    /// Reflect an operator (x -> D, D -> -x), or invert the reflection.
    Reflect {
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Run the deterministic verification suite.
    Verify {
        /// Cases per suite and field.
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Bidegree profiles for the multiplication oracle, e.g. `8x8,16x4`.
        #[arg(long)]
        profiles: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time operator products over a profile grid and emit CSV.
    Bench {
        /// Profiles to measure, e.g. `256x4,512x4`.
        #[arg(long, default_value = "64x4,128x4,256x4")]
        profiles: String,
        /// Timed repetitions per cell (median reported; one warm-up run
        /// is discarded).
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Comma-separated algorithms: `naive`, `fast`.
        #[arg(long, default_value = "naive,fast")]
        algorithms: String,
    },
}

fn exit_code_for(err: &WeylError) -> u8 {
    match err {
        WeylError::Parse(_) | WeylError::NotPrime(_) | WeylError::ModulusTooLarge(_) => 2,
        WeylError::CharacteristicTooSmall { .. } => 3,
        _ => 1,
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(|e| e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<u8, (String, u8)> {
    let field: FieldDescriptor = cli
        .field
        .parse()
        .map_err(|e: WeylError| (e.to_string(), exit_code_for(&e)))?;
    let fail = |e: WeylError| (e.to_string(), exit_code_for(&e));
    match cli.command {
        Command::Mul { left, right } => {
            let text =
                commands::run_mul(&left, &right, field, cli.algorithm.into()).map_err(fail)?;
            emit(&cli.output, &format!("{text}\n")).map_err(|m| (m, 1))?;
            Ok(0)
        }
        Command::Reflect { input, inverse } => {
            let text = commands::run_reflect(&input, field, inverse).map_err(fail)?;
            emit(&cli.output, &format!("{text}\n")).map_err(|m| (m, 1))?;
            Ok(0)
        }
        Command::Verify {
            trials,
            profiles,
            inject_fault,
        } => {
            let mut config = verify::VerifyConfig {
                seed: cli.seed,
                trials,
                inject_fault,
                ..verify::VerifyConfig::default()
            };
            if let Some(p) = profiles {
                config.profiles = parse_profiles(&p).map_err(fail)?;
            }
            let report = verify::run(&config);
            emit(&cli.output, &report.text).map_err(|m| (m, 1))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench {
            profiles,
            reps,
            algorithms,
        } => {
            let profiles = parse_profiles(&profiles).map_err(fail)?;
            let algorithms: Vec<String> = algorithms
                .split(',')
                .map(|a| a.trim().to_string())
                .filter(|a| !a.is_empty())
                .collect();
            let records =
                bench::run_grid(&algorithms, &profiles, field, reps, cli.seed).map_err(fail)?;
            emit(&cli.output, &bench::to_csv(&records)).map_err(|m| (m, 1))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.max(1);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("weyl: cannot configure {threads} threads: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((message, code)) => {
            eprintln!("weyl: {message}");
            ExitCode::from(code)
        }
    }
}
