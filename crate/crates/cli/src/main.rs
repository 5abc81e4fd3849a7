//! `twisted`: command-line driver for twisted group algebra computations.

mod cmd;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use tgrip_core::Error;

#[derive(Parser, Debug)]
#[command(name = "twisted", version, about = "Twisted group algebras over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wedderburn signature of F^α G.
    Decompose(Common),
    /// Structure of H²(G, F^*) for an abelian group.
    H2(Common),
    /// Decide F G ≅ F H and the twisted relation for abelian G, H.
    Tgrip(TgripArgs),
    /// Build or check Yamazaki covers.
    #[command(subcommand)]
    Yamazaki(YamazakiCommand),
    /// Dade's groups.
    #[command(subcommand)]
    Dade(DadeCommand),
}

#[derive(Subcommand, Debug)]
enum YamazakiCommand {
    /// Cover of an abelian group from generators of H².
    Build(Common),
    /// Evaluate the cover criterion on a central extension.
    Check(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum DadeCommand {
    /// Compute the full dossier.
    Run(DadeArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Field `p` or `p,k` for F_{p^k}.
    #[arg(long)]
    pub field: Option<String>,
    /// Abelian group as a list of cyclic orders, e.g. `8,2`.
    #[arg(long)]
    pub abelian: Option<String>,
    /// Polycyclic presentation file.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Class descriptor `{"ext":[..],"pairing":[[i,j,c],..]}` or `trivial`.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TgripArgs {
    /// First abelian group.
    #[arg(long)]
    pub g: Option<String>,
    /// Second abelian group.
    #[arg(long)]
    pub h: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckArgs {
    /// Kernel generators as comma-separated words, or `center`.
    #[arg(long, default_value = "center")]
    pub kernel: String,
    /// Invariants of the Schur multiplier of the quotient.
    #[arg(long)]
    pub multiplier: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DadeArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    #[value(name = "c9-f17")]
    #[serde(rename = "c9-f17")]
    C9F17,
    F31Pair,
    Prop33,
    D8Cover,
    D8Noncover,
    DadeQ5,
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Cap(_) => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Whether a check command found what it was asked to confirm.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Decompose(c) => cmd::decompose(&c),
        Command::H2(c) => cmd::h2(&c),
        Command::Tgrip(a) => cmd::tgrip(&a),
        Command::Yamazaki(YamazakiCommand::Build(c)) => cmd::yamazaki_build(&c),
        Command::Yamazaki(YamazakiCommand::Check(a)) => cmd::yamazaki_check(&a),
        Command::Dade(DadeCommand::Run(a)) => cmd::dade(&a),
    };
    match res {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
