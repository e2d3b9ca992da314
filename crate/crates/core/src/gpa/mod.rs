//! Game playing algorithms (GPAs): per-round strategy functions of the history.
//!
//! A GPA here always exposes the exact conditional mixed strategy it would
//! sample from at a given history. Upfront randomness (as in the sampled
//! construction) is resolved at build time, so what remains is either
//! deterministic given the history or an independent fresh draw per round.

mod lookup;
mod mw;
mod prescribed;
mod record;
mod reference;

pub use lookup::LookupTableGpa;
pub use mw::MultiplicativeWeights;
pub use prescribed::{
    build_deterministic_gpa, build_deterministic_gpa_from, build_sampled_gpa, build_sampled_gpa_from, counter_rng, sampling_bound_approx, within_sampling_bound,
    CycleParameters, DeterministicConstruction, PrescribedSequenceGpa, SampledConstruction,
};
pub use record::{GpaRecord, LookupEntry};
pub use reference::{grim_trigger, two_phase_defect_gpa, ConstantGpa, MyopicFollower, ObedientFollower, TriggerGpa};

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{ActionPair, BimatrixGame, GameError, MixedStrategy};

/// How a GPA uses randomness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Randomness {
    /// The strategy is pure and a function of the history alone.
    Deterministic,
    /// A fresh independent draw from the exposed strategy each round.
    PerRound,
    /// Coins shared across rounds; the exposed strategy is not the true
    /// conditional law, so exact best responses are undefined for it.
    CrossRound,
}

/// Which player a GPA acts for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Leader,
    Follower,
}

impl Side {
    pub fn action_count(self, game: &BimatrixGame) -> usize {
        match self {
            Side::Leader => game.rows(),
            Side::Follower => game.cols(),
        }
    }

    pub fn own_action(self, pair: ActionPair) -> usize {
        match self {
            Side::Leader => pair.row,
            Side::Follower => pair.col,
        }
    }

    pub fn opponent_action(self, pair: ActionPair) -> usize {
        match self {
            Side::Leader => pair.col,
            Side::Follower => pair.row,
        }
    }

    /// The pair formed by this side playing `own` against `opponent`.
    pub fn pair(self, own: usize, opponent: usize) -> ActionPair {
        match self {
            Side::Leader => ActionPair::new(own, opponent),
            Side::Follower => ActionPair::new(opponent, own),
        }
    }

    pub fn payoff(self, game: &BimatrixGame, pair: ActionPair) -> &crate::rational::Rational {
        match self {
            Side::Leader => game.leader_payoff(pair),
            Side::Follower => game.follower_payoff(pair),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Leader => "leader",
            Side::Follower => "follower",
        })
    }
}

fn format_history(history: &[ActionPair]) -> String {
    let parts: Vec<String> = history.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpaError {
    #[error("horizon {horizon} is too short: the cycle length is {cycle_length}")]
    HorizonTooShort { horizon: usize, cycle_length: BigInt },
    #[error("no lookup entry for history {}", format_history(.0))]
    MissingEntry(Vec<ActionPair>),
    #[error("history of length {history} is past the horizon {horizon}")]
    PastHorizon { history: usize, horizon: usize },
    #[error("action {action} is out of range for {actions} actions")]
    ActionOutOfRange { action: usize, actions: usize },
    #[error("prescription has length {found}, expected {expected}")]
    LengthMismatch { found: usize, expected: usize },
    #[error("learning rate must lie in (0, 1)")]
    BadLearningRate,
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A strategy for one side of a repeated bimatrix game.
pub trait GamePlayingAlgorithm: Send + Sync {
    /// Mixed strategy for round `history.len() + 1` of a `horizon`-round game.
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError>;

    fn randomness(&self) -> Randomness;
}

impl<G: GamePlayingAlgorithm + ?Sized> GamePlayingAlgorithm for Box<G> {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        (**self).strategy(game, horizon, history)
    }

    fn randomness(&self) -> Randomness {
        (**self).randomness()
    }
}

impl<G: GamePlayingAlgorithm + ?Sized> GamePlayingAlgorithm for std::sync::Arc<G> {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        (**self).strategy(game, horizon, history)
    }

    fn randomness(&self) -> Randomness {
        (**self).randomness()
    }
}

pub(crate) fn check_action(action: usize, actions: usize) -> Result<usize, GpaError> {
    if action < actions {
        Ok(action)
    } else {
        Err(GpaError::ActionOutOfRange { action, actions })
    }
}
