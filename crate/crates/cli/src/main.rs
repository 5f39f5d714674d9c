//! `padico`: encode sequences p-adically, cluster them into dendrograms,
//! track punctured lines through dendrogram space and test Tate curves.

mod commands;
mod config;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use padico::Error;

use config::Config;

#[derive(Parser, Debug)]
#[command(name = "padico", version, about = "p-adic encodings, dendrograms and Tate curves")]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode FASTA records or one string per line as p-adic numbers
    Encode {
        /// Input file, `-` for stdin
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
        /// Alphabet letters, assigned to ascending digits
        #[arg(long, default_value = "AGCT")]
        alphabet: String,
        /// Reserve digit 0 as a blank (end of string)
        #[arg(long)]
        blank: bool,
        /// Encode unknown letters as blanks instead of failing
        #[arg(long)]
        permissive: bool,
    },
    /// Build the dendrogram of encoded numbers or raw strings
    Cluster {
        /// JSON codes (as written by `encode`) or FASTA/line strings
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Output format: newick, dot, json or csv (merge log)
        #[arg(long, default_value = "newick")]
        format: String,
        /// Also write the CSV merge log to this file
        #[arg(long)]
        merge_log: Option<PathBuf>,
        /// Print the clusters at this level instead of the tree
        #[arg(long, allow_hyphen_values = true)]
        threshold: Option<i64>,
        #[arg(long, default_value = "AGCT")]
        alphabet: String,
        #[arg(long)]
        blank: bool,
    },
    /// Track a time series of punctured lines through dendrogram space
    Series {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Labels moved to 0, 1, ∞ at every step (default: first three)
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<String>>,
    },
    /// Tate criterion for y² = x(x - 1)(x - λ); exit 0 if Tate, 1 if not
    Tate {
        /// λ as an integer or fraction
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Orbit of z0 under a Möbius map, written as a series for `series`
    Orbit {
        /// Matrix entries a,b,c,d of z -> (az + b) / (cz + d)
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        matrix: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

/// Exit codes besides the per-command ones documented on each subcommand.
const EXIT_OTHER: u8 = 10;

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Format(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }
}

fn write_output(config: &Config, text: &str) -> Result<(), Error> {
    match &config.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::Format(format!("stdout: {e}"))),
    }
}

fn exit_code(command: &Command, err: &Error) -> u8 {
    match (command, err) {
        (Command::Encode { .. }, Error::UnknownSymbol { .. } | Error::MalformedFasta { .. }) => 2,
        (Command::Encode { .. } | Command::Cluster { .. }, Error::HoleDigit { .. }) => 2,
        (Command::Cluster { .. }, Error::UnknownSymbol { .. } | Error::MalformedFasta { .. }) => 2,
        (_, Error::IndistinguishablePoints(..)) => 3,
        (Command::Series { .. }, Error::CollisionDetected(..) | Error::LabelMismatch(_)) => 4,
        (Command::Tate { .. }, Error::PreconditionViolated(_)) => 5,
        (Command::Orbit { .. }, Error::PrecisionExhausted(_)) => 6,
        _ => EXIT_OTHER,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Encode { input, format, alphabet, blank, permissive } => {
            let text = read_input(input)?;
            let out = commands::encode(cfg, &text, format, alphabet, *blank, *permissive)?;
            write_output(cfg, &out)?;
            Ok(0)
        }
        Command::Cluster { input, format, merge_log, threshold, alphabet, blank } => {
            let text = read_input(input)?;
            let (out, log) = commands::cluster(cfg, &text, format, *threshold, alphabet, *blank)?;
            if let Some(path) = merge_log {
                fs::write(path, log).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            }
            write_output(cfg, &out)?;
            Ok(0)
        }
        Command::Series { input, triple } => {
            let text = read_input(input)?;
            write_output(cfg, &commands::series(cfg, &text, triple.as_deref())?)?;
            Ok(0)
        }
        Command::Tate { lambda } => {
            let (out, tate) = commands::tate(cfg, lambda)?;
            write_output(cfg, &out)?;
            Ok(if tate { 0 } else { 1 })
        }
        Command::Orbit { matrix, z0, steps } => {
            write_output(cfg, &commands::orbit(cfg, matrix, z0, *steps)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("padico: {err}");
            ExitCode::from(exit_code(&cli.command, &err))
        }
    }
}
