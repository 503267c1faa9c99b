//! `hstats`: command-line access to the dynamic graph statistics engine.
//!
//! Subcommands: `stats` (one JSON summary of an edge list), `stream`
//! (replay an operation file), `synth` (generate edge lists), `hscaling`
//! (scaling CSV over a corpus directory), and `bench` (timed replay with
//! instrumentation). Exit codes: 0 on success, 1 when an internal
//! consistency check fails, 2 for input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub mod bench;
pub mod commands;
pub mod parse;
pub mod report;
pub mod synth;

use commands::{CliError, StreamFlags};
use synth::SynthSpec;

#[derive(Parser)]
#[command(
    name = "hstats",
    version,
    about = "Dynamic subgraph statistics driven by the graph h-index"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    /// Preferential attachment (power-law degrees)
    Ba,
    /// Clique plus pendant vertices attached to every clique member
    Split,
    /// Clique plus unrepresentable isolated vertices
    CliquePlusIsolates,
    /// Independent edges with fixed probability
    Gnp,
}

#[derive(Debug, clap::Args)]
struct GeneratorArgs {
    /// Graph model to generate
    #[arg(long, value_enum)]
    model: Model,
    /// Number of vertices
    #[arg(long)]
    n: u64,
    /// Edges per new vertex (ba)
    #[arg(long, default_value_t = 3)]
    attach: u64,
    /// Clique size (split, clique-plus-isolates)
    #[arg(long)]
    clique: Option<u64>,
    /// Edge probability (gnp)
    #[arg(long)]
    prob: Option<f64>,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GeneratorArgs {
    fn spec(&self) -> Result<SynthSpec, CliError> {
        match self.model {
            Model::Ba => Ok(SynthSpec::Ba { n: self.n, attach: self.attach, seed: self.seed }),
            Model::Split => {
                let clique = self.clique.ok_or_else(|| {
                    CliError::Input("the split model needs --clique".to_string())
                })?;
                Ok(SynthSpec::Split { clique, n: self.n })
            }
            Model::CliquePlusIsolates => {
                let clique = self.clique.ok_or_else(|| {
                    CliError::Input("the clique-plus-isolates model needs --clique".to_string())
                })?;
                Ok(SynthSpec::CliqueIsolates { clique, n: self.n })
            }
            Model::Gnp => {
                let prob = self.prob.ok_or_else(|| {
                    CliError::Input("the gnp model needs --prob".to_string())
                })?;
                Ok(SynthSpec::Gnp { n: self.n, prob, seed: self.seed })
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Summarize an edge-list file as one JSON object
    Stats {
        /// Edge-list file
        file: PathBuf,
    },
    /// Replay an operation stream, answering each `?` with statistics
    Stream {
        /// Operation-stream file
        file: PathBuf,
        /// Maintain path, star, and census statistics
        #[arg(long)]
        census: bool,
        /// Enable vertex colors with a palette of K colors
        #[arg(long, value_name = "K")]
        colors: Option<u32>,
        /// Accept edge weights and track the weighted triangle total
        #[arg(long)]
        weighted: bool,
        /// Skip illegal operations instead of aborting
        #[arg(long)]
        lenient: bool,
    },
    /// Generate a synthetic edge list
    Synth {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Output file (standard output when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaling report (CSV) over a directory of edge-list files
    Hscaling {
        /// Directory of edge-list files
        dir: PathBuf,
    },
    /// Replay a generated stream and report timing plus counters
    Bench {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Replay at most this many edge insertions
        #[arg(long)]
        ops: Option<u64>,
    },
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Stats { file } => commands::run_stats(&file, out, err),
        Command::Stream { file, census, colors, weighted, lenient } => commands::run_stream(
            &file,
            StreamFlags { census, colors, weighted, lenient },
            out,
            err,
        ),
        Command::Synth { generator, out: out_path } => {
            commands::run_synth(generator.spec()?, out_path.as_ref(), out, err)
        }
        Command::Hscaling { dir } => commands::run_hscaling(&dir, out, err),
        Command::Bench { generator, ops } => commands::run_bench(generator.spec()?, ops, out),
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    match dispatch(cli, &mut out, &mut err) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Assertion(_) => ExitCode::from(1),
                CliError::Input(_) => ExitCode::from(2),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn generator_args_require_model_parameters() {
        let args = GeneratorArgs {
            model: Model::Split,
            n: 10,
            attach: 3,
            clique: None,
            prob: None,
            seed: 0,
        };
        assert!(args.spec().is_err());
        let args = GeneratorArgs { clique: Some(4), ..args };
        assert_eq!(args.spec().unwrap(), SynthSpec::Split { clique: 4, n: 10 });
    }
}
