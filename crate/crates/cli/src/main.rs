use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dcg_core::corpus::run_corpus;
use dcg_core::dsep::{all_separations_capped, oracle_cap};
use dcg_core::equivalence::oracle_equivalent_capped;
use dcg_core::{
    acyclic_equivalent_exists, classify, export_dot, generate_random, is_d_connected_fast,
    is_d_connected_oracle, markov_equivalent, parse_graph, serialize_graph, DirectedGraph, GeneratorConfig,
    SeparationStatement,
};

/// Markov equivalence of directed graphs, cyclic or acyclic.
///
/// Graph files hold `vertices: A B C` and `edge: A -> B` lines; `-` reads
/// standard input.
#[derive(Parser)]
#[command(name = "dcg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Markov equivalence from feature sets. Exit 0 if equivalent, 1 if not.
    Check { g1: PathBuf, g2: PathBuf },
    /// Print the feature set of a graph.
    Features {
        g: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Test whether X and Y are d-separated given a set.
    Dsep {
        g: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Comma-separated conditioning set.
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
        /// Print a d-connecting path when one exists (uses path enumeration).
        #[arg(long)]
        witness: bool,
    },
    /// List every d-separation statement by path enumeration.
    DsepAll {
        g: PathBuf,
        /// Largest graph accepted [default: 12, or DCG_MAX_ORACLE_N].
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Decide Markov equivalence by comparing all d-separations. Exit 0 if equivalent, 1 if not.
    OracleCheck {
        g1: PathBuf,
        g2: PathBuf,
        /// Largest graph accepted [default: 12, or DCG_MAX_ORACLE_N].
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Whether some acyclic graph is Markov equivalent to G.
    AcyclicEquiv { g: PathBuf },
    /// Generate a seeded random graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        no_two_cycles: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare the feature and brute-force partitions of every graph on N vertices. Exit 1 on any disagreement.
    Corpus {
        #[arg(long)]
        n: usize,
    },
    /// Print a graph in DOT notation.
    ExportDot { g: PathBuf },
}

fn read_graph(path: &Path) -> Result<DirectedGraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn verdict_code(equivalent: bool) -> ExitCode {
    if equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { g1, g2 } => {
            let (a, b) = (read_graph(&g1)?, read_graph(&g2)?);
            let verdict = markov_equivalent(&a, &b);
            println!("{verdict}");
            Ok(verdict_code(verdict.equivalent))
        }
        Command::Features { g, json } => {
            let f = classify(&read_graph(&g)?);
            if json {
                println!("{}", serde_json::to_string_pretty(&f)?);
            } else {
                print!("{}", f.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dsep {
            g,
            x,
            y,
            given,
            witness,
        } => {
            let graph = read_graph(&g)?;
            let s = SeparationStatement::from_names(&x, &y, &given)?;
            if witness {
                match is_d_connected_oracle(&graph, &s)? {
                    Some(path) => println!("d-connected\n{path}"),
                    None => println!("d-separated"),
                }
            } else if is_d_connected_fast(&graph, &s)? {
                println!("d-connected");
            } else {
                println!("d-separated");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DsepAll { g, max_n } => {
            let graph = read_graph(&g)?;
            for s in all_separations_capped(&graph, max_n.unwrap_or_else(oracle_cap))? {
                println!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCheck { g1, g2, max_n } => {
            let (a, b) = (read_graph(&g1)?, read_graph(&g2)?);
            let verdict = oracle_equivalent_capped(&a, &b, max_n.unwrap_or_else(oracle_cap))?;
            println!("{verdict}");
            Ok(verdict_code(verdict.equivalent))
        }
        Command::AcyclicEquiv { g } => {
            println!("{}", acyclic_equivalent_exists(&read_graph(&g)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            n,
            p,
            seed,
            no_two_cycles,
            output,
        } => {
            let mut cfg = GeneratorConfig::new(n, p, seed);
            cfg.allow_two_cycles = !no_two_cycles;
            let text = serialize_graph(&generate_random(&cfg)?);
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { n } => {
            let report = run_corpus(n)?;
            print!("{report}");
            Ok(verdict_code(report.passed()))
        }
        Command::ExportDot { g } => {
            print!("{}", export_dot(&read_graph(&g)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
