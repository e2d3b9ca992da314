#![allow(dead_code)]

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stackgpa::gpa::{GamePlayingAlgorithm, GpaError, Randomness};
use stackgpa::{ratio, ActionPair, BimatrixGame, MixedStrategy, Rational};

pub fn pd() -> BimatrixGame {
    BimatrixGame::from_fractions(
        &[&[(3, 5), (0, 1)], &[(1, 1), (1, 5)]],
        &[&[(3, 5), (1, 1)], &[(0, 1), (1, 5)]],
    )
    .unwrap()
}

pub fn inevitability() -> BimatrixGame {
    BimatrixGame::from_fractions(
        &[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]],
        &[&[(1, 2), (1, 1)], &[(0, 1), (0, 1)]],
    )
    .unwrap()
}

/// Row 1 dominates for the leader, but committing to row 2 pays more.
pub fn regret_counterexample() -> BimatrixGame {
    BimatrixGame::from_fractions(
        &[&[(1, 4), (3, 4)], &[(0, 1), (1, 2)]],
        &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]],
    )
    .unwrap()
}

pub fn matching_pennies() -> BimatrixGame {
    BimatrixGame::from_fractions(
        &[&[(1, 1), (-1, 1)], &[(-1, 1), (1, 1)]],
        &[&[(-1, 1), (1, 1)], &[(1, 1), (-1, 1)]],
    )
    .unwrap()
}

/// Random payoffs `k/d` with `d <= max_den`, `|k| <= d`.
pub fn random_game(rng: &mut impl Rng, rows: usize, cols: usize, max_den: i64) -> BimatrixGame {
    let mut entry = || {
        let d = rng.gen_range(1..=max_den);
        ratio(rng.gen_range(-d..=d), d)
    };
    let m1 = (0..rows).map(|_| (0..cols).map(|_| entry()).collect()).collect();
    let m2 = (0..rows).map(|_| (0..cols).map(|_| entry()).collect()).collect();
    stackgpa::validate_game(m1, m2).unwrap()
}

pub fn random_zero_sum(rng: &mut impl Rng, n: usize, max_den: i64) -> BimatrixGame {
    let g = random_game(rng, n, n, max_den);
    let m1 = g.leader_matrix();
    let m2 = m1.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
    g.with_matrices(m1, m2).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn history_hash(seed: u64, history: &[ActionPair]) -> u64 {
    let mut h = DefaultHasher::new();
    seed.hash(&mut h);
    history.hash(&mut h);
    h.finish()
}

/// Deterministic leader whose row is an arbitrary fixed function of the history.
pub struct ScrambledLeader {
    pub seed: u64,
}

impl GamePlayingAlgorithm for ScrambledLeader {
    fn strategy(&self, game: &BimatrixGame, _: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let row = (history_hash(self.seed, history) % game.rows() as u64) as usize;
        Ok(MixedStrategy::pure(game.rows(), row))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

/// Leader with small-denominator mixed strategies that vary with the history.
pub struct ScrambledMixedLeader {
    pub seed: u64,
}

impl GamePlayingAlgorithm for ScrambledMixedLeader {
    fn strategy(&self, game: &BimatrixGame, _: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let mut r = rng(history_hash(self.seed, history));
        let mut weights: Vec<i64> = (0..game.rows()).map(|_| r.gen_range(0..3)).collect();
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: i64 = weights.iter().sum();
        Ok(MixedStrategy::new(weights.into_iter().map(|w| ratio(w, total)).collect())?)
    }

    fn randomness(&self) -> Randomness {
        Randomness::PerRound
    }
}

/// Every (follower total, leader total) achievable by some deterministic
/// follower lookup table over reachable histories. Nothing is pruned.
pub fn all_follower_outcomes(
    leader: &dyn GamePlayingAlgorithm,
    game: &BimatrixGame,
    horizon: usize,
    history: &mut Vec<ActionPair>,
) -> Vec<(Rational, Rational)> {
    if history.len() == horizon {
        return vec![(Rational::zero(), Rational::zero())];
    }
    let x = leader.strategy(game, horizon, history).unwrap();
    let mut outcomes = Vec::new();
    for j in 0..game.cols() {
        // Independent sub-tables below each leader row; combine every choice.
        let mut combined = vec![(Rational::zero(), Rational::zero())];
        for (i, w) in x.support() {
            let pair = ActionPair::new(i, j);
            history.push(pair);
            let below = all_follower_outcomes(leader, game, horizon, history);
            history.pop();
            let mut next = Vec::with_capacity(combined.len() * below.len());
            for (f, l) in &combined {
                for (bf, bl) in &below {
                    next.push((
                        f + w * (bf + game.follower_payoff(pair)),
                        l + w * (bl + game.leader_payoff(pair)),
                    ));
                }
            }
            combined = next;
        }
        outcomes.extend(combined);
    }
    outcomes
}

/// Lexicographic (follower, leader) maximum over all follower lookup tables.
pub fn brute_force_best_response(
    leader: &dyn GamePlayingAlgorithm,
    game: &BimatrixGame,
    horizon: usize,
) -> (Rational, Rational) {
    all_follower_outcomes(leader, game, horizon, &mut Vec::new())
        .into_iter()
        .max()
        .unwrap()
}
