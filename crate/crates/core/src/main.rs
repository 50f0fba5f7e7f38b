use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use sparsepave::census::{
    count, count_rank, minor_census, nonbasis_bound, verify, CensusRecord, Fault, Format,
    MinorCensus, MinorMode, Target,
};
use sparsepave::minors::DEFAULT_MINOR_BUDGET;
use sparsepave::Error;

/// Sparse paving matroids as stable sets of Johnson graphs: exact counts,
/// bound checks and seeded minor censuses.
#[derive(Parser, Debug)]
#[command(name = "sparsepave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Report format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Append wall-clock runtime to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the exhaustive invariant suite for every n up to --n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, hide = true, value_parser = ["byskov"])]
        inject_fault: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Count sparse paving matroids on [n] by rank.
    Count {
        #[arg(long)]
        n: usize,
        /// Only this rank (no total row).
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Fraction of matroids with a given minor, for each n.
    MinorCensus {
        /// u:t:k, whirl3, disjoint:r:k, core:r:k or file:<path>.
        #[arg(long)]
        target: String,
        /// Ground set sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Matroids drawn per n; 0 enumerates all of S_n.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on contraction/restriction pairs per minor test.
        #[arg(long, default_value_t = DEFAULT_MINOR_BUDGET)]
        budget: u128,
        /// Use the exhaustive minor oracle (default).
        #[arg(long, conflicts_with = "fast")]
        exact: bool,
        /// Only look for clean copies of the target's non-bases.
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Non-basis counts against C(n,r)/(4n), and maximal extension sizes.
    NonbasisBound {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Invariant(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        _ => 2,
    }
}

fn emit(mut record: CensusRecord, output: &Output, started: Instant) {
    if output.timing {
        record.runtime_ms = Some(started.elapsed().as_millis());
    }
    let format: Format = output.format.parse().expect("validated by clap");
    print!("{}", record.render(format));
}

fn run(command: Command) -> Result<(), Failure> {
    let started = Instant::now();
    match command {
        Command::Verify {
            n,
            inject_fault,
            output,
        } => {
            let fault = inject_fault.map(|_| Fault::Byskov);
            let outcome = verify(n, fault)?;
            let failures = outcome.failures.clone();
            emit(outcome.record, &output, started);
            if let Some(first) = failures.first() {
                return Err(Failure::Invariant(first.clone()));
            }
        }
        Command::Count { n, r, output } => {
            let record = match r {
                Some(r) => count_rank(n, r)?,
                None => count(n)?,
            };
            emit(record, &output, started);
        }
        Command::MinorCensus {
            target,
            n,
            samples,
            seed,
            budget,
            exact: _,
            fast,
            output,
        } => {
            let parsed: Target = target.parse()?;
            let h = parsed.matroid()?;
            let record = minor_census(&MinorCensus {
                target: &h,
                target_name: parsed.to_string(),
                n_values: &n,
                samples,
                seed,
                mode: if fast {
                    MinorMode::Fast
                } else {
                    MinorMode::Exact
                },
                budget,
            })?;
            emit(record, &output, started);
        }
        Command::NonbasisBound {
            n,
            samples,
            seed,
            output,
        } => emit(nonbasis_bound(&n, samples, seed)?, &output, started),
    }
    Ok(())
}

fn threads(command: &Command) -> usize {
    match command {
        Command::Verify { output, .. }
        | Command::Count { output, .. }
        | Command::MinorCensus { output, .. }
        | Command::NonbasisBound { output, .. } => output.threads,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads(&cli.command))
        .build_global();
    if let Err(e) = pool {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(what)) => {
            eprintln!("FAIL: {what}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
