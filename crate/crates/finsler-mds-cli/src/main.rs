mod commands;
mod config;
mod error;
mod svg;

use clap::{Parser, Subcommand};

use commands::{dissimilarity, embed, evaluate, generate, pipeline, plot};
use error::CliResult;

#[derive(Parser)]
#[command(name = "finsler-mds", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic dataset: points or a graph, labels, metadata
    Generate(generate::GenerateArgs),
    /// Build an asymmetric dissimilarity matrix from points or a graph
    Dissimilarity(dissimilarity::DissimilarityArgs),
    /// Embed a dissimilarity matrix into a drift-equipped space
    Embed(embed::EmbedArgs),
    /// Score an embedding against dissimilarities or a graph
    Evaluate(evaluate::EvaluateArgs),
    /// Render an embedding as a static SVG scatter plot
    Plot(plot::PlotArgs),
    /// Chain generate, dissimilarity, embed, evaluate, and plot from one
    /// config
    Pipeline(pipeline::PipelineArgs),
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Generate(args) => generate::run(args),
        Command::Dissimilarity(args) => dissimilarity::run(args),
        Command::Embed(args) => embed::run(args),
        Command::Evaluate(args) => evaluate::run(args),
        Command::Plot(args) => plot::run(args),
        Command::Pipeline(args) => pipeline::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("finsler-mds: {}", err.message);
        std::process::exit(err.code);
    }
}
