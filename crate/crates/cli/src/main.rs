//! `tricomb` — exact surgery, combing, and linking computations.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;
use report::{Format, Report};

const FORMAT_DOCS: &str = "\
FILE FORMATS (whitespace-tolerant; lines starting with '#' are comments)

  matrix        first line `rows cols`, then row-major integer entries.
  link          header `framedlink n=<n>`, then an n x n symmetric matrix
                in the matrix format. Diagonal entries are framings,
                off-diagonal entries pairwise linking numbers.
  script        one Kirby move per line, 1-based component indices:
                  blowup +1|-1
                  blowdown <i>
                  slide <i> <j> +1|-1      (slide i over j)
  heegaard      header `heegaard g=<g>`, then the g x g integer
                intersection matrix (entry [j][i] pairs curve i with
                meridian j) in the matrix format, then g framings on one
                line, then optionally the keyword `linking` followed by a
                symmetric g x g matrix of pairwise linking numbers.
  curve         header `curve <name> <k>`, then k vertex lines of three
                rationals `p/q` (or plain integers); the curve closes from
                the last vertex to the first. Optionally `normal <name>`
                followed by k vector lines gives a nowhere-zero normal
                field along the curve.
  ledger        `group <free-rank> [d1 d2 ...]` (invariant-factor chain),
                then lines
                  combing <id> euler <coords>
                  pair <i> <j> alpha+ <coords> alpha- <coords>
                  surgery <i> <j> beta <coords>
                with one coordinate per free generator followed by one per
                torsion factor.

Every report carries a verification section re-checking the command's
postconditions; the exit status is 0 only if all checks pass. Exit 1
signals a mathematical failure or failed check, exit 2 bad usage or a
malformed input file.";

#[derive(Parser)]
#[command(
    name = "tricomb",
    version,
    about = "Exact-arithmetic calculus for framed-link surgery, combings, and linking numbers",
    after_long_help = FORMAT_DOCS
)]
struct Cli {
    /// Report encoding
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Seed for randomized procedures; all shipped procedures are
    /// deterministic, the flag is echoed into the report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Find a Kirby-move script making every framing even
    Evenize { link: PathBuf },
    /// Count spin structures of the surgered manifold
    SpinCount { link: PathBuf },
    /// First homology of the surgered manifold
    Homology { link: PathBuf },
    /// Characteristic sublink solutions of Q*x = diag(Q) mod 2
    CharSublink { link: PathBuf },
    /// Framing parities and the all-even flag
    Parity { link: PathBuf },
    /// Replay a move script against a link
    Replay { link: PathBuf, script: PathBuf },
    /// Solve the meridian-twist parity system and export a framed link
    HeegaardSolve { file: PathBuf },
    /// Linking number of two disjoint closed curves
    Link { file_a: PathBuf, file_b: PathBuf },
    /// Self-linking of a curve along its normal field
    Selflink { file: PathBuf },
    /// Does the induced framing extend over a Seifert surface?
    Extends { file: PathBuf },
    /// Pairing terms of a closed surface, given as o<genus> or n<crosscaps>
    Surface { token: String },
    /// Validate a combing ledger and decide parallelizability
    Ledger { file: PathBuf },
}

fn command_echo(cli: &Cli) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let _ = cli;
    args.join(" ")
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let report = Report::new(command_echo(cli), cli.seed);
    match &cli.command {
        Command::Evenize { link } => commands::evenize_cmd(report, link),
        Command::SpinCount { link } => commands::spin_count(report, link),
        Command::Homology { link } => commands::homology(report, link),
        Command::CharSublink { link } => commands::char_sublink(report, link),
        Command::Parity { link } => commands::parity(report, link),
        Command::Replay { link, script } => commands::replay(report, link, script),
        Command::HeegaardSolve { file } => commands::heegaard_solve(report, file),
        Command::Link { file_a, file_b } => commands::link_cmd(report, file_a, file_b),
        Command::Selflink { file } => commands::selflink(report, file),
        Command::Extends { file } => commands::extends(report, file),
        Command::Surface { token } => commands::surface(report, token),
        Command::Ledger { file } => commands::ledger(report, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match run(&cli) {
        Ok(mut report) => {
            report.finalize_status();
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(CliError::Input { path, message }) => {
            eprintln!("error: {path}: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Math(report)) => {
            print!("{}", report.render(format));
            ExitCode::from(1)
        }
    }
}
