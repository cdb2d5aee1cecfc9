use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drt_cli::{
    cayley_text, cmd_classify, cmd_diffset_verify, cmd_discrepancy_bounds, cmd_discrepancy_sample,
    cmd_discrepancy_sweep, cmd_pipeline_paley, cmd_rank_baseline, cmd_rank_exact,
    cmd_rank_heuristic, cmd_tourney_verify, configure_threads, paley_text, random_tournament_text,
    render_pretty, run_report, CliResult, Outcome, PipelineOptions, DEFAULT_SAMPLES,
};
use drt_core::ranking::Strategy;

/// Doubly regular tournaments from skew Hadamard difference sets.
#[derive(Parser)]
#[command(name = "drt", version)]
struct Cli {
    /// Render the report as aligned key/value lines instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Difference sets.
    #[command(subcommand)]
    Diffset(DiffsetCmd),
    /// Tournaments.
    #[command(subcommand)]
    Tourney(TourneyCmd),
    /// Maximum-consistency rankings.
    #[command(subcommand)]
    Rank(RankCmd),
    /// Mixing-lemma and ranking bound checks.
    #[command(subcommand)]
    Discrepancy(DiscrepancyCmd),
    /// End-to-end pipelines.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
}

#[derive(Subcommand)]
enum DiffsetCmd {
    /// Print the Paley set of F_{p^k} in the difference-set file format.
    Paley {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Check whether a set is a skew Hadamard difference set.
    Verify { file: PathBuf },
    /// Partition sets into equivalence classes.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TourneyCmd {
    /// Print the Cayley tournament of a difference-set file.
    Cayley { file: PathBuf },
    /// Run the doubly-regular and Gram checks.
    Verify { file: PathBuf },
    /// Print a seeded uniformly random tournament.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RankCmd {
    /// Exact C(T) by subset dynamic programming.
    Exact { file: PathBuf },
    /// Heuristic ranking.
    Heuristic {
        file: PathBuf,
        #[arg(long, default_value = "local-search")]
        strategy: Strategy,
    },
    /// Exact C(T) over seeded random tournaments.
    Baseline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum DiscrepancyCmd {
    /// Check every disjoint pair (A, B).
    Sweep { file: PathBuf },
    /// Check seeded random disjoint pairs.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the ranking bounds, computing C(T) exactly unless supplied.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        c_value: Option<u64>,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Construct and verify the Paley tournament on F_{p^k}.
    Paley {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Output {
    Text(String),
    Report(&'static str, Box<dyn FnOnce() -> CliResult<Outcome>>),
}

fn dispatch(command: Command) -> CliResult<Output> {
    use Output::{Report, Text};
    Ok(match command {
        Command::Diffset(DiffsetCmd::Paley { p, k }) => Text(paley_text(p, k)?),
        Command::Diffset(DiffsetCmd::Verify { file }) => Report(
            "diffset verify",
            Box::new(move || cmd_diffset_verify(&file)),
        ),
        Command::Diffset(DiffsetCmd::Classify { files }) => {
            Report("diffset classify", Box::new(move || cmd_classify(&files)))
        }
        Command::Tourney(TourneyCmd::Cayley { file }) => Text(cayley_text(&file)?),
        Command::Tourney(TourneyCmd::Verify { file }) => Report(
            "tourney verify",
            Box::new(move || cmd_tourney_verify(&file)),
        ),
        Command::Tourney(TourneyCmd::Random { n, seed }) => Text(random_tournament_text(n, seed)),
        Command::Rank(RankCmd::Exact { file }) => {
            Report("rank exact", Box::new(move || cmd_rank_exact(&file)))
        }
        Command::Rank(RankCmd::Heuristic { file, strategy }) => Report(
            "rank heuristic",
            Box::new(move || cmd_rank_heuristic(&file, strategy)),
        ),
        Command::Rank(RankCmd::Baseline { n, trials, seed }) => Report(
            "rank baseline",
            Box::new(move || cmd_rank_baseline(n, trials, seed)),
        ),
        Command::Discrepancy(DiscrepancyCmd::Sweep { file }) => Report(
            "discrepancy sweep",
            Box::new(move || cmd_discrepancy_sweep(&file)),
        ),
        Command::Discrepancy(DiscrepancyCmd::Sample {
            file,
            samples,
            seed,
        }) => Report(
            "discrepancy sample",
            Box::new(move || cmd_discrepancy_sample(&file, samples, seed)),
        ),
        Command::Discrepancy(DiscrepancyCmd::Bounds { file, c_value }) => Report(
            "discrepancy bounds",
            Box::new(move || cmd_discrepancy_bounds(&file, c_value)),
        ),
        Command::Pipeline(PipelineCmd::Paley {
            p,
            k,
            samples,
            seed,
        }) => Report(
            "pipeline paley",
            Box::new(move || cmd_pipeline_paley(p, k, PipelineOptions { samples, seed })),
        ),
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> CliResult<i32> {
    configure_threads()?;
    match dispatch(cli.command)? {
        Output::Text(text) => {
            emit(&text);
            Ok(0)
        }
        Output::Report(name, f) => {
            let report = run_report(name, f)?;
            if cli.pretty {
                emit(&render_pretty(&report));
            } else {
                emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"));
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
