//! Exponential weights (Hedge) over one player's pure actions with full
//! information about the realized opponent action.
//!
//! The weights are evaluated in `f64` since they involve `exp`; the resulting
//! probabilities are converted exactly (each float is a dyadic rational) and
//! renormalized in rational arithmetic, so the exposed strategy is an exact
//! distribution that the oracle can consume. Nothing on a solver path reads
//! these weights back as payoffs.

use num_traits::{One, Signed, Zero};

use super::{GamePlayingAlgorithm, GpaError, Randomness, Side};
use crate::game::{ActionPair, BimatrixGame, MixedStrategy};
use crate::rational::{from_f64_exact, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeWeights {
    side: Side,
    learning_rate: Rational,
    eta: f64,
}

impl MultiplicativeWeights {
    pub fn new(side: Side, learning_rate: Rational) -> Result<Self, GpaError> {
        if !learning_rate.is_positive() || learning_rate >= Rational::one() {
            return Err(GpaError::BadLearningRate);
        }
        let eta = to_f64(&learning_rate);
        Ok(MultiplicativeWeights {
            side,
            learning_rate,
            eta,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn learning_rate(&self) -> &Rational {
        &self.learning_rate
    }

    /// Cumulative payoff of each own action against the realized opponent actions.
    pub fn cumulative_payoffs(&self, game: &BimatrixGame, history: &[ActionPair]) -> Vec<f64> {
        let actions = self.side.action_count(game);
        let mut totals = vec![0.0; actions];
        for &pair in history {
            let opponent = self.side.opponent_action(pair);
            for (a, total) in totals.iter_mut().enumerate() {
                *total += to_f64(self.side.payoff(game, self.side.pair(a, opponent)));
            }
        }
        totals
    }

    /// Evaluated probabilities before exact renormalization.
    pub fn probabilities(&self, game: &BimatrixGame, history: &[ActionPair]) -> Vec<f64> {
        let totals = self.cumulative_payoffs(game, history);
        let top = totals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = totals.iter().map(|t| (self.eta * (t - top)).exp()).collect();
        let sum: f64 = weights.iter().sum();
        weights.into_iter().map(|w| w / sum).collect()
    }
}

impl GamePlayingAlgorithm for MultiplicativeWeights {
    fn strategy(&self, game: &BimatrixGame, _horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let exact: Vec<Rational> = self
            .probabilities(game, history)
            .into_iter()
            .map(|p| from_f64_exact(p).unwrap_or_else(Rational::zero))
            .collect();
        let total: Rational = exact.iter().sum();
        let weights = exact.into_iter().map(|w| w / &total).collect();
        Ok(MixedStrategy::new(weights)?)
    }

    fn randomness(&self) -> Randomness {
        Randomness::PerRound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pennies() -> BimatrixGame {
        BimatrixGame::from_fractions(&[&[(1, 1), (-1, 1)], &[(-1, 1), (1, 1)]], &[&[(-1, 1), (1, 1)], &[(1, 1), (-1, 1)]])
            .unwrap()
    }

    #[test]
    fn first_round_is_uniform() {
        let g = BimatrixGame::from_fractions(&[[(0, 1); 3]; 3], &[[(0, 1); 3]; 3]).unwrap();
        let mw = MultiplicativeWeights::new(Side::Leader, ratio(1, 10)).unwrap();
        assert_eq!(mw.strategy(&g, 10, &[]).unwrap(), MixedStrategy::uniform(3));
    }

    #[test]
    fn weight_ratio_grows_against_constant_opponent() {
        let g = pennies();
        let mw = MultiplicativeWeights::new(Side::Leader, ratio(1, 10)).unwrap();
        let mut history = Vec::new();
        let mut last_ratio = 1.0;
        for _ in 0..20 {
            let p = mw.probabilities(&g, &history);
            let r = p[0] / p[1];
            assert!(r > last_ratio || history.is_empty());
            last_ratio = r;
            history.push(ActionPair::new(1, 0));
        }
        assert!(last_ratio > 1.0);
        let s = mw.strategy(&g, 20, &history).unwrap();
        assert!(s.weight(0) > s.weight(1));
    }

    #[test]
    fn follower_side_uses_follower_payoffs() {
        let g = pennies();
        let mw = MultiplicativeWeights::new(Side::Follower, ratio(1, 2)).unwrap();
        let history = vec![ActionPair::new(0, 0); 5];
        let s = mw.strategy(&g, 10, &history).unwrap();
        assert!(s.weight(1) > s.weight(0));
    }

    #[test]
    fn learning_rate_must_be_in_unit_interval() {
        assert!(MultiplicativeWeights::new(Side::Leader, ratio(0, 1)).is_err());
        assert!(MultiplicativeWeights::new(Side::Leader, ratio(1, 1)).is_err());
    }
}
