use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod files;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "gepgap",
    version,
    about = "Exact spectral gaps of interchange and exclusion processes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one process and print its spectral gap.
    Gap(GapArgs),
    /// Check an equality numerically; exits 1 if any check fails.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Write a seeded random complete graph.
    RandomGraph(RandomGraphArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Process {
    /// Random walk.
    Rw,
    /// Random walk with rates multiplied by `--scale`.
    Krw,
    /// Interchange process.
    Ip,
    /// Generalized exclusion process.
    Gep,
    /// Block shuffle with weights from `--alpha`.
    Bs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputArgs {
    /// Include the whole spectrum, not just the first 10 eigenvalues.
    #[arg(long)]
    full_spectrum: bool,
    /// Report `elapsed_ms` as 0 so output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct Occupancy {
    /// Same site capacity at every vertex.
    #[arg(long)]
    k: Option<usize>,
    /// Per-vertex capacities, e.g. `a=2,b=1`.
    #[arg(long, value_name = "V=INT,...")]
    k_list: Option<String>,
}

#[derive(Args, Debug)]
pub struct GapArgs {
    #[arg(long, value_enum)]
    process: Process,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    scale: Option<f64>,
    #[command(flatten)]
    occupancy: Occupancy,
    #[arg(long)]
    l: Option<usize>,
    /// Block weights file; defaults to one block per edge.
    #[arg(long)]
    alpha: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    #[arg(long, default_value_t = gepgap::verify::DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Interchange gap equals random-walk gap.
    Aldous(AldousArgs),
    /// Exclusion gap equals k times the random-walk gap.
    Gep(GepArgs),
    /// Every quotient in the chain from the interchange process down to the exclusion process.
    Diagram(DiagramArgs),
    /// Block-shuffle observations; always exits 0.
    BsProbe(ProbeArgs),
}

#[derive(Args, Debug)]
pub struct AldousArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    graph: Option<PathBuf>,
    /// Check this many seeded random graphs instead of a file.
    #[arg(long)]
    random: Option<usize>,
    /// Vertex counts cycled through by `--random`.
    #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
    sizes: Vec<usize>,
    /// Worker threads for `--random`.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct GepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, required_unless_present = "sweep_l", conflicts_with = "sweep_l")]
    l: Option<usize>,
    /// Every admissible particle count.
    #[arg(long)]
    sweep_l: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    occupancy: Occupancy,
    #[arg(long)]
    l: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    occupancy: Occupancy,
    #[arg(long)]
    l: usize,
    /// Full-block weights to compare.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 10.0])]
    m: Vec<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct RandomGraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
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
    let result = match cli.command {
        Command::Gap(args) => commands::gap(&args),
        Command::Verify(VerifyCommand::Aldous(args)) => commands::aldous(&args),
        Command::Verify(VerifyCommand::Gep(args)) => commands::gep(&args),
        Command::Verify(VerifyCommand::Diagram(args)) => commands::diagram(&args),
        Command::Verify(VerifyCommand::BsProbe(args)) => commands::bs_probe(&args),
        Command::RandomGraph(args) => commands::random_graph(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
