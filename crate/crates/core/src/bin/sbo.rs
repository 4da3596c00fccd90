use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sbo::cli::{
    self, EvalMethodArg, GenerateKind, GenerateParams, OptMethodArg, DEFAULT_EPSILON,
    DEFAULT_SAMPLES,
};
use sbo::document::{load_bids, load_instance, read_input, to_json, write_output};
use sbo::gen::Graph;
use sbo::{ModelKind, Result};

/// Stochastic budget optimization for keyword bidding.
#[derive(Parser)]
#[command(name = "sbo", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected value of a bid vector.
    Evaluate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        bids: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: EvalMethodArg,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Best bid vector for an instance.
    Optimize {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: OptMethodArg,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Writes a named or random instance.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        budget: Option<f64>,
        /// Edge-list file for `--kind clique`.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Click model for `--kind random`.
        #[arg(long)]
        model: Option<ModelKind>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Where the clique target and parameters go; defaults to
        /// `<out>.reduction.json`, or standard error when writing to stdout.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Decides whether a small graph has a k-clique through the reduction.
    VerifyReduction {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse_edge_list(&read_input(path)?)
}

fn run(args: Args) -> Result<()> {
    match args.command {
        Command::Evaluate {
            instance,
            bids,
            method,
            epsilon,
            samples,
            seed,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let bids = load_bids(&bids, &inst)?;
            let report = cli::evaluate(&inst, &bids, method, epsilon, samples, seed)?;
            write_output(&out, &to_json(&report))
        }
        Command::Optimize {
            instance,
            method,
            epsilon,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let report = cli::optimize(&inst, method, epsilon)?;
            write_output(&out, &to_json(&report))
        }
        Command::Generate {
            kind,
            n,
            c,
            budget,
            graph,
            k,
            model,
            seed,
            out,
            sidecar,
        } => {
            let params = GenerateParams {
                n,
                c,
                budget,
                graph: graph.as_deref().map(load_graph).transpose()?,
                k,
                model,
                seed,
            };
            let generated = cli::generate(kind, &params)?;
            write_output(&out, &to_json(&generated.document))?;
            if let Some(record) = generated.sidecar {
                let text = to_json(&record);
                match sidecar {
                    Some(path) => write_output(&path, &text)?,
                    None if out.as_os_str() == "-" => eprint!("{text}"),
                    None => {
                        let mut path = out.into_os_string();
                        path.push(".reduction.json");
                        write_output(Path::new(&path), &text)?;
                    }
                }
            }
            Ok(())
        }
        Command::VerifyReduction { graph, k } => {
            let verdict = cli::verify_reduction(&load_graph(&graph)?, k)?;
            println!("{verdict}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
