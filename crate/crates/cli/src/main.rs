//! `idealforge` command-line front end.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "idealforge", version, about = "Finite quasi-orders, ideals, Higman orderings and ideal hierarchies")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized sweeps; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sequence length bound for oracle sweeps.
    #[arg(long, global = true, default_value_t = 4)]
    pub maxlen: usize,
    /// Member-count bound for level construction (overrides IDEALFORGE_MAX_MEMBERS).
    #[arg(long, global = true)]
    pub max_members: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quasi-order utilities.
    #[command(subcommand)]
    Qo(QoCmd),
    /// All ideals of a quasi-order.
    Ideals { file: PathBuf },
    /// All nonempty downsets of a quasi-order.
    Downsets { file: PathBuf },
    /// Monoidal quasi-order utilities.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Generalized Higman ordering on words.
    #[command(subcommand)]
    Higman(HigmanCmd),
    /// Hereditary-set levels and atom alphabets.
    #[command(subcommand)]
    Hier(HierCmd),
    /// Oracle and law checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum QoCmd {
    Validate { file: PathBuf },
    Quotient { file: PathBuf },
    Dot { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    /// Axioms, +-property and prime-product checks; compared with `expect` when present.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        product_len: usize,
    },
    Primes { file: PathBuf },
    Factor { file: PathBuf, element: String },
}

#[derive(Subcommand, Debug)]
pub enum HigmanCmd {
    /// Compare two comma-separated words.
    Leq {
        #[arg(long)]
        alphabet: PathBuf,
        u: String,
        v: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Vstar,
    Istar,
    Ihat,
}

#[derive(Subcommand, Debug)]
pub enum HierCmd {
    Build {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, value_enum, default_value_t = Kind::Istar)]
        kind: Kind,
    },
    Atoms {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    TwoForms {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 3)]
        word_len: usize,
    },
    Containment {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 3)]
        word_len: usize,
    },
    Xywz {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 2)]
        word_len: usize,
    },
    Reflect {
        #[arg(long)]
        qo: PathBuf,
        #[arg(long, default_value_t = 2)]
        alpha: usize,
    },
    /// Dynamic program against exhaustive search on all word pairs up to `--maxlen`.
    HigmanDp {
        #[arg(long)]
        alphabet: PathBuf,
    },
    /// Monoid axioms plus sampled laws of the set product.
    Axioms {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(&cli) {
        Ok(out) => {
            match render::render(&out, &cli) {
                Ok(text) => print!("{text}"),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
