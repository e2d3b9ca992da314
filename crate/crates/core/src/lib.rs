//! Exact approximate-Stackelberg leader algorithms for finite-horizon repeated
//! bimatrix games, with a backward-induction follower oracle and generators
//! for the three-player hardness reduction.
//!
//! All payoffs and probabilities are exact rationals ([`Rational`]).

pub mod game;
pub mod gpa;
pub mod hardness;
pub mod lp;
pub mod oracle;
pub mod rational;

pub use game::{
    average_payoffs, compare_pairs, pair_ordering, total_payoffs, validate_game, ActionPair, BimatrixGame, GameError,
    MixedStrategy, PairOrdering, Transcript,
};
pub use gpa::{GamePlayingAlgorithm, GpaError, GpaRecord, Randomness, Side};
pub use lp::{follower_cap, max_follower_pair, stackelberg_lp, threat, StackelbergLp, ThreatResult};
pub use oracle::{
    best_response, external_regret, simulate, stackelberg_gap, verify_prescription, BestResponseResult, Oracle,
    OracleError, RegretReport, Verdict,
};
pub use rational::{format_rational, parse_rational, ratio, Rational};
