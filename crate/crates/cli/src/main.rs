mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ctw_core::oracle::DEFAULT_LIMIT;
use ctw_core::SolveOptions;
use serde::Serialize;

use commands::{CompareParams, Family, GenSpec};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "ctw",
    version,
    about = "Connected treewidth of graphs of treewidth at most 2"
)]
struct Cli {
    /// Output format. JSON goes to stdout with a summary on stderr.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for independent solves.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the connected treewidth of a graph (edge list or JSON, `-` for stdin).
    Solve {
        input: String,
        /// Report a witness layout (default).
        #[arg(long, overrides_with = "no_witness")]
        witness: bool,
        #[arg(long)]
        no_witness: bool,
        /// Extra table capacity beyond the theoretical bound.
        #[arg(long, default_value_t = 0)]
        cap_slack: usize,
    },
    /// Exact value by exhaustive search; honours roots and fictive edges in JSON input.
    Oracle {
        input: String,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        oracle_limit: usize,
        /// Compute treewidth (vertex separation) instead.
        #[arg(long)]
        tw: bool,
    },
    /// Cross-check the solver against the oracle on generated instances or a corpus.
    Compare {
        #[arg(long, value_enum, default_value_t = Family::Sp)]
        family: Family,
        /// Directory of input files; overrides --family.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest generated instance.
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        oracle_limit: usize,
        #[arg(long, default_value_t = 0)]
        cap_slack: usize,
    },
    /// Generate an instance (edge list by default, JSON with --format json).
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Time the solver on generated instances and fit a log-log slope.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Biconnected)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "200,400,800,1600")]
        sizes: Vec<usize>,
        /// Blocks per instance for the tw2 family.
        #[arg(long, default_value_t = 8)]
        blocks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Check a layout: connectivity and cost, optionally against an expected value.
    Verify {
        input: String,
        /// Comma-separated vertex labels.
        #[arg(long, value_delimiter = ',', required = true)]
        layout: Vec<String>,
        #[arg(long)]
        expect: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random composition with the given number of leaf edges.
    Sp {
        #[arg(long, default_value_t = 10)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random biconnected series-parallel graph on n vertices.
    Biconnected {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random blocks glued at cut vertices.
    Tw2 {
        #[arg(long, default_value_t = 3)]
        blocks: usize,
        #[arg(long, default_value_t = 5)]
        block_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete binary tree of height k plus an apex over its leaves.
    ApexTree {
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// A catalogue graph: path-N, cycle-N, star-N, complete-N, wheel-N, fan-N,
    /// apex-binary-tree-K, K2, triangle, diamond, K4, two-triangles.
    Named { name: String },
}

fn emit<T: Serialize>(format: Format, report: &T, summary: String) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("reports serialize")
            );
            eprintln!("{}", summary);
        }
        Format::Text => println!("{}", summary),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let format = cli.format.unwrap_or(Format::Json);
    match cli.command {
        Command::Solve {
            input,
            no_witness,
            cap_slack,
            ..
        } => {
            let opts = SolveOptions {
                cap_slack,
                witness: !no_witness,
                ..SolveOptions::default()
            };
            let r = commands::solve(&input, &opts)?;
            emit(format, &r, r.summary());
        }
        Command::Oracle {
            input,
            oracle_limit,
            tw,
        } => {
            let r = commands::oracle(&input, oracle_limit, tw)?;
            emit(format, &r, r.summary());
        }
        Command::Compare {
            family,
            corpus,
            trials,
            seed,
            max_n,
            oracle_limit,
            cap_slack,
        } => {
            let p = CompareParams {
                family,
                trials,
                seed,
                max_n,
                oracle_limit,
                cap_slack,
            };
            let r = match corpus {
                Some(dir) => commands::compare_corpus(&dir, &p)?,
                None => commands::compare_generated(&p),
            };
            emit(format, &r, r.summary());
            if !r.mismatches.is_empty() {
                return Err(CliError::Check(format!(
                    "{} mismatches",
                    r.mismatches.len()
                )));
            }
        }
        Command::Gen { what } => {
            let (spec, seed) = match what {
                GenCommand::Sp { edges, seed } => (GenSpec::Sp { edges }, seed),
                GenCommand::Biconnected { n, seed } => (GenSpec::Biconnected { n }, seed),
                GenCommand::Tw2 {
                    blocks,
                    block_size,
                    seed,
                } => (GenSpec::Tw2 { blocks, block_size }, seed),
                GenCommand::ApexTree { k } => (GenSpec::ApexTree { k }, 0),
                GenCommand::Named { name } => (GenSpec::Named(name), 0),
            };
            let g = commands::generate(&spec, seed)?;
            print!(
                "{}",
                commands::render_graph(&g, cli.format == Some(Format::Json))
            );
        }
        Command::Bench {
            family,
            sizes,
            blocks,
            seed,
            reps,
        } => {
            let r = commands::bench(family, &sizes, blocks, seed, reps)?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&r).expect("reports serialize")
                    );
                    eprint!("{}", r.csv());
                }
                Format::Text => print!("{}", r.csv()),
            }
        }
        Command::Verify {
            input,
            layout,
            expect,
        } => {
            let r = commands::verify(&input, &layout, expect)?;
            emit(format, &r, r.summary());
            if !r.ok {
                return Err(CliError::Check("layout check failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
