mod commands;
mod demo;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

/// Encrypt, attack and measure images under the one-round chaotic block cipher.
#[derive(Debug, Parser)]
#[command(name = "chaoscrack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt a square P5 PGM; writes the cipher and a `.meta.json` sidecar with the pixel sum.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        input: PathBuf,
        output: PathBuf,
        /// Sidecar path, default `<output>.meta.json`.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Decrypt a cipher PGM. Needs the plaintext pixel sum from --eta or a sidecar.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        eta: EtaSource,
    },
    /// Recover the plaintext of a cipher with five chosen-plaintext queries.
    Attack {
        #[command(flatten)]
        oracle: OracleSpec,
        target: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        eta: EtaSource,
        /// Write the recovered mask as a PGM.
        #[arg(long)]
        emit_mask: Option<PathBuf>,
        /// Write the recovered permutation, one plaintext index per line.
        #[arg(long)]
        emit_perm: Option<PathBuf>,
        /// Write the located position and pixel sum as JSON.
        #[arg(long)]
        emit_meta: Option<PathBuf>,
    },
    /// Compute image-cipher metrics and print or save a JSON report.
    Metrics {
        input: PathBuf,
        /// Second image for NPCR and UACI.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walk through the attack on a 4x4 toy image, then on a 256x256 image.
    Demo,
    /// Serve one encryption query: wide-image text on stdin, P5 PGM on stdout.
    Oracle {
        #[arg(long)]
        key: PathBuf,
    },
}

#[derive(Debug, Args)]
struct EtaSource {
    /// Plaintext pixel sum.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<i64>,
    /// Sidecar JSON with `eta`; default `<input>.meta.json` when present.
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct OracleSpec {
    /// Encrypt queries in-process with this key file.
    #[arg(long)]
    oracle_key: Option<PathBuf>,
    /// Run this command once per query (whitespace-separated, no shell quoting).
    #[arg(long)]
    oracle_cmd: Option<String>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encrypt {
            key,
            input,
            output,
            meta,
        } => commands::encrypt(&key, &input, &output, meta.as_deref()),
        Command::Decrypt {
            key,
            input,
            output,
            eta,
        } => {
            let eta = commands::resolve_eta(eta.eta, eta.meta.as_deref(), &input)?;
            commands::decrypt(&key, &input, &output, eta)
        }
        Command::Attack {
            oracle,
            target,
            output,
            eta,
            emit_mask,
            emit_perm,
            emit_meta,
        } => {
            let eta = commands::resolve_eta(eta.eta, eta.meta.as_deref(), &target)?;
            let oracle = match (oracle.oracle_key, oracle.oracle_cmd) {
                (Some(path), _) => commands::OracleChoice::Key(path),
                (None, Some(cmd)) => commands::OracleChoice::Command(cmd),
                (None, None) => unreachable!("clap enforces one oracle"),
            };
            commands::attack(
                &oracle,
                &target,
                &output,
                eta,
                commands::Dumps {
                    mask: emit_mask.as_deref(),
                    perm: emit_perm.as_deref(),
                    meta: emit_meta.as_deref(),
                },
            )
        }
        Command::Metrics { input, pair, out } => {
            commands::metrics(&input, pair.as_deref(), out.as_deref())
        }
        Command::Demo => demo::run(),
        Command::Oracle { key } => commands::serve_oracle(&key),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
