//! `chev2` — exact-arithmetic toolkit for the simply-laced Chevalley-group
//! computations bundled with this workspace, exposed as a batch-friendly
//! command-line tool. Every subcommand supports `--format json|text` and
//! prints deterministic output suitable for CI consumption.

mod commands;
mod output;

use anyhow::Result;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chev2",
    version,
    about = "Exact computations in characteristic-2 Chevalley groups: roots, Weyl words, \
             centralizers, separability, conjugacy obstructions, and module decompositions."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the positive-root table of the bundled root system.
    Roots(commands::roots::RootsArgs),
    /// Weyl-word computations: permutations and orbit partitions.
    #[command(subcommand)]
    Weyl(commands::weyl::WeylCommand),
    /// Solve the unipotent centralizer of a set of Weyl words symbolically.
    Centralizer(commands::centralizer::CentralizerArgs),
    /// Compare group and Lie-algebra centralizer dimensions.
    Separability(commands::separability::SeparabilityArgs),
    /// Conjugacy obstruction checks: non-conjugacy, class distinctness, limits.
    #[command(subcommand)]
    Gitcheck(commands::gitcheck::GitcheckCommand),
    /// Modular-representation computations over GF(2^m).
    #[command(subcommand)]
    Modrep(commands::modrep::ModrepCommand),
    /// Run the complete verification catalogue and report pass/fail.
    VerifyPaper(commands::verify::VerifyArgs),
}

fn main() {
    // Die quietly (like cat/grep) instead of panicking when stdout is a pipe
    // that the reader closes early, e.g. `chev2 roots | head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome: Result<i32> = match cli.command {
        Command::Roots(args) => commands::roots::run(args).map(|_| 0),
        Command::Weyl(cmd) => commands::weyl::run(cmd).map(|_| 0),
        Command::Centralizer(args) => commands::centralizer::run(args).map(|_| 0),
        Command::Separability(args) => commands::separability::run(args).map(|_| 0),
        Command::Gitcheck(cmd) => commands::gitcheck::run(cmd).map(|_| 0),
        Command::Modrep(cmd) => commands::modrep::run(cmd).map(|_| 0),
        Command::VerifyPaper(args) => commands::verify::run(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
