//! `qgame`: isomorphism search, lift verification, grid equilibria and
//! payoff surfaces for EWL quantum games.
//!
//! Exit codes: 0 success or affirmative result, 1 negative finding,
//! 2 input error, 3 I/O error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "qgame", version, about = "Quantum (EWL) games and their isomorphisms")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "QGAME_SEED", default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the strong isomorphisms between two games and any strategic equivalence.
    Iso { a: PathBuf, b: PathBuf },
    /// Lift every strong isomorphism a -> b and check payoff equality on random profiles.
    LiftVerify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Strategy spaces for both games, overriding the files (one name, or one per player).
        #[arg(long)]
        spaces: Option<String>,
    },
    /// Grid search for pure ε-equilibria of the quantum game.
    Ne {
        file: PathBuf,
        /// Strategy spaces, overriding the file (one name, or one per player).
        #[arg(long)]
        spaces: Option<String>,
        /// Steps per player as `theta,alpha,beta`.
        #[arg(long, default_value = "17,33,1")]
        grid: GridSpec,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        /// Also write the equilibria to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Payoffs as one player's U(θ, α, 0) sweeps a grid against a fixed opponent.
    Surface {
        file: PathBuf,
        /// The sweeping player, 1 or 2.
        #[arg(long, default_value_t = 1)]
        player: usize,
        /// The opponent's strategy as `theta,alpha[,beta]`.
        #[arg(long, default_value = "0,0")]
        opponent: Angles,
        /// Steps as `theta,alpha`.
        #[arg(long, default_value = "17,33")]
        grid: GridSpec,
        /// Output file; standard output if absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the operator identities behind the lift on random draws.
    Identities {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Up to three step counts; missing ones are 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub theta: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|_| format!("expected step counts like '17,33,1', got '{s}'"))?;
        if parts.is_empty() || parts.len() > 3 || parts.contains(&0) {
            return Err(format!("expected one to three positive step counts, got '{s}'"));
        }
        let get = |k: usize| parts.get(k).copied().unwrap_or(1);
        Ok(Self { theta: get(0), alpha: get(1), beta: get(2) })
    }
}

/// `theta,alpha[,beta]` in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angles(pub f64, pub f64, pub f64);

impl FromStr for Angles {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
        match parts.as_deref() {
            Ok([t, a]) => Ok(Self(*t, *a, 0.0)),
            Ok([t, a, b]) => Ok(Self(*t, *a, *b)),
            _ => Err(format!("expected 'theta,alpha' or 'theta,alpha,beta', got '{s}'")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = match cli.command {
        Command::Iso { a, b } => commands::iso(&a, &b),
        Command::LiftVerify { a, b, samples, spaces } => {
            commands::lift_verify(&a, &b, samples, seed, spaces.as_deref())
        }
        Command::Ne { file, spaces, grid, eps, csv } => {
            commands::ne(&file, spaces.as_deref(), grid, eps, csv.as_deref())
        }
        Command::Surface { file, player, opponent, grid, csv } => {
            commands::surface(&file, player, opponent, grid, csv.as_deref())
        }
        Command::Identities { samples } => commands::identities(samples, seed),
    };
    match result {
        Ok(Outcome { text, affirmative }) => {
            print!("{text}");
            ExitCode::from(if affirmative { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("qgame: {e}");
            ExitCode::from(e.code())
        }
    }
}
