use clap::{Parser, Subcommand};
use hn_cli::commands::{self, Format, OracleSource, Output};
use hn_cli::random_spec::RandomSpec;
use hn_cli::{resolve_budget, CliError};
use hn_core::suites::{Suite, SuiteConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hn", version, about = "Harder-Narasimhan filtrations of multi-filtered F_p spaces and Euclidean lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the HN chain, slopes, polygon and measure of an object as JSON.
    Compute {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        /// Enumeration ceiling (overrides HN_BUDGET).
        #[arg(long)]
        budget: Option<u128>,
        /// Include wall-clock time; output is then no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Render the normalized HN polygon.
    Polygon {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Run a seeded property suite: axioms, slopes, functoriality, oracle or all.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Cross-check the destabilizer searches against exhaustive enumeration.
    Oracle {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// e.g. "multifilt_fp:p=2,dim=3,n=2,count=500,seed=0", "lattice:rank=3", "lattice_diag:count=50".
        #[arg(long)]
        random: Option<String>,
        #[arg(long)]
        budget: Option<u128>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Compute { file, digits, budget, timing } => {
            let obj = commands::read_input(&file)?;
            Ok(commands::compute(&obj, digits, resolve_budget(budget)?, timing))
        }
        Command::Polygon { file, format, output, digits, budget } => {
            let obj = commands::read_input(&file)?;
            match commands::polygon(&obj, format, digits, resolve_budget(budget)?) {
                Ok(out) => {
                    std::fs::write(&output, &out.text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
                    Ok(Output { text: String::new(), exit: out.exit })
                }
                Err(failed) => Ok(failed),
            }
        }
        Command::Check { suite, seed, trials } => {
            let s: Suite = suite.parse().map_err(CliError::Validation)?;
            Ok(commands::check(s, &suite, &SuiteConfig { seed, trials }))
        }
        Command::Oracle { file, random, budget } => {
            let budget = resolve_budget(budget)?;
            let source = match (file, random) {
                (Some(f), None) => OracleSource::File(commands::read_input(&f)?),
                (None, Some(r)) => OracleSource::Random(RandomSpec::parse(&r)?, r),
                _ => return Err(CliError::Validation("give exactly one of <file> and --random".into())),
            };
            Ok(commands::oracle(&source, budget))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if out.exit != hn_cli::EXIT_OK {
                eprintln!("hn: failure (exit {})", out.exit);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("hn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
