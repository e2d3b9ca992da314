use rand::Rng;

use super::OracleError;
use crate::game::{ActionPair, BimatrixGame, MixedStrategy, Transcript};
use crate::gpa::{counter_rng, GamePlayingAlgorithm, GpaError};

fn checked(strategy: MixedStrategy, expected: usize) -> Result<MixedStrategy, GpaError> {
    if strategy.len() == expected {
        Ok(strategy)
    } else {
        Err(GpaError::LengthMismatch {
            found: strategy.len(),
            expected,
        })
    }
}

/// Plays `leader` against `follower` for `horizon` rounds.
///
/// Round `k` uses draw `2k` under `seed` for the leader and `2k + 1` for the
/// follower, so the transcript depends only on the seed.
pub fn simulate(
    leader: &dyn GamePlayingAlgorithm,
    follower: &dyn GamePlayingAlgorithm,
    game: &BimatrixGame,
    horizon: usize,
    seed: u64,
) -> Result<Transcript, OracleError> {
    let mut pairs = Vec::with_capacity(horizon);
    for k in 0..horizon as u64 {
        let x = checked(leader.strategy(game, horizon, &pairs)?, game.rows())?;
        let y = checked(follower.strategy(game, horizon, &pairs)?, game.cols())?;
        let row = x.pick(counter_rng(seed, 2 * k).gen());
        let col = y.pick(counter_rng(seed, 2 * k + 1).gen());
        pairs.push(ActionPair::new(row, col));
    }
    Ok(Transcript::new(pairs))
}
