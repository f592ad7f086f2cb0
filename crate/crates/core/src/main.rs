//! `mixspec`: spectra and spectral bound checks for mixed multigraphs.
//!
//! Exit status is 0 on success, 1 when a checked bound is violated and 2 on
//! usage, parse or input errors.

use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixed_spectra::cli::{self, GraphFile, NamedArgs};
use mixed_spectra::error::{Error, Result};
use mixed_spectra::graph::{random_mixed, RandomFlags, RandomSpec};
use mixed_spectra::matrix::MatrixKind;
use mixed_spectra::theorems::{reports_csv, RunOptions};

#[derive(Parser)]
#[command(name = "mixspec", version, about = "Integrated spectra of mixed multigraphs")]
struct Cli {
    /// Seed for sampled checks and random graphs.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Eigenvalues closer than this are grouped.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol_group: f64,
    /// Magnitudes at or below this count as zero.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_zero: f64,
    /// Random instantiations per parameterized bound.
    #[arg(long, global = true, default_value_t = 16)]
    instantiations: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file; standard input when omitted or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the integrated matrices (I, ID, IL, IQ, IN).
    Matrix {
        kind: MatrixKind,
        #[arg(long, value_enum, default_value = "csv")]
        format: MatrixFormat,
        #[command(flatten)]
        input: Input,
    },
    /// Print a grouped spectrum.
    Spectrum {
        kind: MatrixKind,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Components of the associated graph and the derived predicates.
    Components {
        #[command(flatten)]
        input: Input,
    },
    /// Mixed distance between two vertices, or between two vertex sets.
    Distance {
        /// Vertex names, or comma-separated sets with `--sets`.
        #[arg(num_args = 2, value_names = ["U", "V"])]
        ends: Vec<String>,
        #[arg(long)]
        sets: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate bounds and print a JSON run report.
    Check {
        /// A single registry id; every entry when omitted.
        #[arg(long, conflicts_with = "all")]
        bound: Option<String>,
        #[arg(long)]
        all: bool,
        /// Vertex pair `u,v`.
        #[arg(long)]
        pair: Option<String>,
        /// Comma-separated vertex subset.
        #[arg(long)]
        subset: Option<String>,
        /// Arc `u,v`.
        #[arg(long)]
        arc: Option<String>,
        /// First factor as comma-separated `u-v` edges and `u>v` arcs.
        #[arg(long)]
        factor: Option<String>,
        /// Vertex sets separated by `;`, members by `,`.
        #[arg(long)]
        sets: Option<String>,
        /// Print `bound_id,applicable,holds,slack` rows instead of JSON.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Full report: graph summary, matrices, spectra and every bound.
    Report {
        /// Matrices to include.
        #[arg(long, value_delimiter = ',')]
        matrices: Vec<MatrixKind>,
        #[command(flatten)]
        input: Input,
    },
    /// List the bound registry.
    List,
    /// Emit a named family: K, KD, KM (n, or k m), P, C, OP, OC, OCA, ALT (n).
    Gen {
        family: String,
        #[arg(required = true)]
        params: Vec<usize>,
    },
    /// Emit a seeded random mixed graph.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Edge multiplicity cap; 3 unless the flags forbid multiplicities.
        #[arg(long)]
        max_edge_mult: Option<u32>,
        /// Arc multiplicity cap; 3 unless the flags forbid multiplicities.
        #[arg(long)]
        max_arc_mult: Option<u32>,
        /// No loops, no multiplicities; implies the other two flags.
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        loopless: bool,
        /// No multiplicities above one.
        #[arg(long)]
        plain: bool,
    },
}

fn read_graph(input: &Input) -> Result<GraphFile> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    cli::parse(&text)
}

fn split_pair(s: &str) -> Result<(String, String)> {
    s.split_once(',')
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| Error::InvalidInput(format!("expected u,v but got {s:?}")))
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

/// Runs a command; the flag is true when a bound was violated.
fn run(cli: Cli) -> Result<(String, bool)> {
    let mut opts = RunOptions {
        seed: cli.seed,
        instantiations: cli.instantiations,
        ..RunOptions::default()
    };
    opts.tol.group = cli.tol_group;
    opts.tol.zero = cli.tol_zero;
    let ok = |s: String| Ok((s, false));
    match cli.command {
        Command::Matrix { kind, format, input } => {
            let m = kind.build(&read_graph(&input)?.graph);
            ok(match format {
                MatrixFormat::Csv => m.to_csv(),
                MatrixFormat::Json => json(&m.to_json()),
            })
        }
        Command::Spectrum { kind, json: as_json, input } => {
            let entry = cli::spectrum_entry(&read_graph(&input)?.graph, kind, &opts.tol)?;
            ok(if as_json { json(&entry) } else { cli::spectrum_text(&entry) })
        }
        Command::Components { input } => ok(json(&cli::components(&read_graph(&input)?))),
        Command::Distance { ends, sets, input } => {
            let file = read_graph(&input)?;
            let (u, v) = (&ends[0], &ends[1]);
            if sets {
                ok(format!("{}\n", cli::sets_distance(&file, u, v)?))
            } else {
                ok(json(&cli::vertex_distance(&file, u, v)?))
            }
        }
        Command::Check {
            bound,
            all: _,
            pair,
            subset,
            arc,
            factor,
            sets,
            csv,
            input,
        } => {
            let file = read_graph(&input)?;
            let named = NamedArgs {
                pair: pair.as_deref().map(split_pair).transpose()?,
                subset,
                arc: arc.as_deref().map(split_pair).transpose()?,
                factor,
                sets,
            };
            let report = cli::check(&file, bound.as_deref(), &named, &opts)?;
            let text = if csv {
                reports_csv(&report.bounds)
            } else {
                report.to_json() + "\n"
            };
            Ok((text, report.violations > 0))
        }
        Command::Report { matrices, input } => {
            let file = read_graph(&input)?;
            let bounds = mixed_spectra::theorems::run_all(&file.graph, &opts)?;
            let report = cli::run_report(&file, &matrices, bounds, &opts)?;
            let violated = report.violations > 0;
            Ok((report.to_json() + "\n", violated))
        }
        Command::List => ok(cli::registry_listing()),
        Command::Gen { family, params } => {
            let g = cli::family_from_args(&family, &params)?.build()?;
            ok(cli::render(&GraphFile::numbered(g)))
        }
        Command::Random {
            n,
            density,
            max_edge_mult,
            max_arc_mult,
            simple,
            loopless,
            plain,
        } => {
            let spec = RandomSpec {
                n,
                density,
                max_edge_mult,
                max_arc_mult,
                flags: RandomFlags { simple, loopless, plain },
            };
            ok(cli::render(&GraphFile::numbered(random_mixed(cli.seed, &spec)?)))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, violated)) => {
            print!("{text}");
            if violated {
                eprintln!("mixspec: at least one bound is violated");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("mixspec: {e}");
            ExitCode::from(2)
        }
    }
}
