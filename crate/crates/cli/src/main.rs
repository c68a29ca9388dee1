//! `chaoslut`: encrypt and decrypt PGM images and run the analysis suite.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O or unreadable image, 3 invalid
//! key or parameters, 4 cipher failure (degenerate orbit).

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "chaoslut", version, about = "Chaotic dynamic-LUT image cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a fresh random key file.
    Keygen {
        #[arg(long)]
        out: PathBuf,
        /// Derive the key from this seed instead of system randomness.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Encrypt a binary PGM image.
    Encrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a binary PGM image.
    Decrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt an image and write the full statistical report as JSON.
    Analyze {
        #[arg(long)]
        plain: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long, default_value_t = chaoslut::stats::DEFAULT_SAMPLE_SEED)]
        sample_seed: u64,
        /// Pixel to change for the differential metrics, as ROW,COL.
        /// Defaults to the image centre.
        #[arg(long, value_parser = parse_position)]
        change_pos: Option<(usize, usize)>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Key-sensitivity tables for encryption and decryption (CSV + JSON).
    Sensitivity {
        #[arg(long)]
        plain: PathBuf,
        #[arg(long)]
        key: PathBuf,
        /// Amount added to each key component in turn.
        #[arg(long, default_value_t = chaoslut::analysis::DEFAULT_DELTA)]
        delta: f64,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
    /// Known-plaintext keystream attack over two images.
    AttackDemo {
        #[arg(long)]
        known_plain: PathBuf,
        #[arg(long)]
        other_plain: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Histogram and adjacent-pixel scatter CSVs for plotting.
    Plotdata {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also emit the same data for the ciphertext under this key.
        #[arg(long)]
        key: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = chaoslut::stats::DEFAULT_SAMPLE_SEED)]
        sample_seed: u64,
        #[arg(long, default_value_t = chaoslut::stats::DEFAULT_PAIR_COUNT)]
        pairs: usize,
    },
}

fn parse_position(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(',')
        .ok_or_else(|| format!("expected ROW,COL, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(r)?, parse(c)?))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Keygen { out, seed } => commands::keygen(&out, seed),
        Command::Encrypt { input, key, out } => commands::encrypt(&input, &key, &out),
        Command::Decrypt { input, key, out } => commands::decrypt(&input, &key, &out),
        Command::Analyze {
            plain,
            key,
            sample_seed,
            change_pos,
            out,
        } => commands::analyze(&plain, &key, sample_seed, change_pos, &out),
        Command::Sensitivity {
            plain,
            key,
            delta,
            out,
        } => commands::sensitivity(&plain, &key, delta, &out),
        Command::AttackDemo {
            known_plain,
            other_plain,
            key,
            out,
        } => commands::attack_demo(&known_plain, &other_plain, &key, &out),
        Command::Plotdata {
            input,
            key,
            out,
            sample_seed,
            pairs,
        } => commands::plotdata(&input, key.as_deref(), &out, sample_seed, pairs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("chaoslut: {err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("chaoslut: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
