//! `stackgpa`: solve, build, evaluate and audit approximate Stackelberg
//! leaders from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stackgpa::hardness::HardnessError;
use stackgpa::OracleError;

#[derive(Parser, Debug)]
#[command(name = "stackgpa", version, about = "Approximate Stackelberg leaders for repeated bimatrix games")]
pub struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// State budget for the best-response oracle, or pair budget for grid audits.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Leader,
    Follower,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Threat value V and the leader strategy that holds the follower to it.
    Threat { game: PathBuf },
    /// Solve the Stackelberg LP: optimal pair distribution and OPT_LP.
    Solve { game: PathBuf },
    /// Build a prescribed-sequence leader for a horizon.
    Build {
        game: PathBuf,
        #[arg(long, short = 't')]
        horizon: usize,
        /// Use the sampled construction instead of the deterministic one.
        #[arg(long)]
        sampled: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the leader to this file.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Verify a leader file and best-respond to it exactly.
    Evaluate {
        game: PathBuf,
        gpa: PathBuf,
        /// Required unless the leader is a prescribed sequence.
        #[arg(long, short = 't')]
        horizon: Option<usize>,
        /// Only run the linear-time prescription check, not the best response.
        #[arg(long)]
        verify_only: bool,
    },
    /// Play a leader against a follower and record the transcript.
    Simulate {
        game: PathBuf,
        #[arg(long)]
        leader: PathBuf,
        /// Follower file; the oracle best response is used when omitted.
        #[arg(long)]
        follower: Option<PathBuf>,
        #[arg(long, short = 't')]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// External regret of one side on a transcript.
    Regret {
        game: PathBuf,
        transcript: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Leader)]
        side: SideArg,
    },
    /// Three-player game built from a graph.
    Reduce {
        graph: PathBuf,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Audit Player 3's best reply: at the cover strategies when a balanced
    /// cover exists, over a strategy grid otherwise.
    AuditVc {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        resolution: usize,
        #[arg(long, default_value_t = 5)]
        c_exponent: u32,
    },
}

/// A check that ran and failed, as opposed to bad input. `report` is still
/// printed to stdout.
#[derive(Debug)]
pub struct VerificationFailed {
    pub reason: String,
    pub report: String,
}

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.reason)
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<VerificationFailed>() {
            return 4;
        }
        if let Some(OracleError::StateSpaceExceeded { .. }) = cause.downcast_ref() {
            return 3;
        }
        if let Some(HardnessError::BudgetExceeded { .. }) = cause.downcast_ref() {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let Some(failed) = err.downcast_ref::<VerificationFailed>() {
                print!("{}", failed.report);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_follow_the_error_kind() {
        let budget = anyhow::Error::new(OracleError::StateSpaceExceeded {
            budget: 1,
            required: 2.into(),
        })
        .context("best response search failed");
        assert_eq!(exit_code(&budget), 3);
        let failed = anyhow::Error::new(VerificationFailed {
            reason: "x".into(),
            report: String::new(),
        });
        assert_eq!(exit_code(&failed), 4);
        assert_eq!(exit_code(&anyhow::anyhow!("cannot read game.json")), 2);
    }
}
