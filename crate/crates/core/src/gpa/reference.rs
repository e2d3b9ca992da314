//! Reference strategies: trigger strategies, constants, script followers and
//! a myopic best responder.

use std::sync::Arc;

use num_traits::Zero;

use super::{check_action, GamePlayingAlgorithm, GpaError, Randomness, Side};
use crate::game::{ActionPair, BimatrixGame, MixedStrategy};
use crate::rational::Rational;

/// Leader that plays `phase1_row` for the first `phase1_len` rounds and
/// `cooperate.row` afterwards, as long as the follower has always answered
/// with `cooperate.col`. Any other follower action switches it to
/// `punish_row` for the rest of the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriggerGpa {
    pub cooperate: ActionPair,
    pub punish_row: usize,
    pub phase1_len: usize,
}

impl TriggerGpa {
    pub fn triggered(&self, history: &[ActionPair]) -> bool {
        history.iter().any(|p| p.col != self.cooperate.col)
    }
}

impl GamePlayingAlgorithm for TriggerGpa {
    fn strategy(&self, game: &BimatrixGame, _horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let row = if self.triggered(history) || history.len() < self.phase1_len {
            self.punish_row
        } else {
            self.cooperate.row
        };
        Ok(MixedStrategy::pure(game.rows(), row))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

/// Cooperate until the follower first leaves `cooperate.col`, then punish forever.
pub fn grim_trigger(game: &BimatrixGame, cooperate: ActionPair, punish_row: usize) -> Result<TriggerGpa, GpaError> {
    two_phase_defect_gpa(game, cooperate, punish_row, 0)
}

/// Defect (play `punish_row`) for `phase1_len` rounds, then cooperate, with a
/// grim trigger on follower defection in either phase.
pub fn two_phase_defect_gpa(
    game: &BimatrixGame,
    cooperate: ActionPair,
    punish_row: usize,
    phase1_len: usize,
) -> Result<TriggerGpa, GpaError> {
    check_action(cooperate.row, game.rows())?;
    check_action(cooperate.col, game.cols())?;
    check_action(punish_row, game.rows())?;
    Ok(TriggerGpa {
        cooperate,
        punish_row,
        phase1_len,
    })
}

/// Plays the same pure action every round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantGpa {
    pub side: Side,
    pub action: usize,
}

impl GamePlayingAlgorithm for ConstantGpa {
    fn strategy(&self, game: &BimatrixGame, _horizon: usize, _history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let actions = self.side.action_count(game);
        check_action(self.action, actions)?;
        Ok(MixedStrategy::pure(actions, self.action))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

/// Follower that plays the column of each prescribed pair regardless of history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObedientFollower {
    pub prescription: Vec<ActionPair>,
}

impl GamePlayingAlgorithm for ObedientFollower {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let round = history.len();
        let pair = self
            .prescription
            .get(round)
            .ok_or(GpaError::PastHorizon { history: round, horizon })?;
        check_action(pair.col, game.cols())?;
        Ok(MixedStrategy::pure(game.cols(), pair.col))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

/// Follower that best-replies to the leader's announced strategy for the
/// current round only. Ties go to the higher expected leader payoff, then to
/// the lower column.
#[derive(Clone)]
pub struct MyopicFollower {
    pub leader: Arc<dyn GamePlayingAlgorithm>,
}

impl MyopicFollower {
    pub fn new(leader: Arc<dyn GamePlayingAlgorithm>) -> Self {
        MyopicFollower { leader }
    }
}

/// Best pure reply of the follower to a leader mixed strategy.
pub fn myopic_reply(game: &BimatrixGame, leader: &MixedStrategy) -> usize {
    let mut best: Option<(usize, Rational, Rational)> = None;
    for j in 0..game.cols() {
        let (mut f, mut l) = (Rational::zero(), Rational::zero());
        for (i, w) in leader.support() {
            let pair = ActionPair::new(i, j);
            f += w * game.follower_payoff(pair);
            l += w * game.leader_payoff(pair);
        }
        let better = match &best {
            None => true,
            Some((_, bf, bl)) => f > *bf || (f == *bf && l > *bl),
        };
        if better {
            best = Some((j, f, l));
        }
    }
    best.expect("games have at least one column").0
}

impl GamePlayingAlgorithm for MyopicFollower {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let leader = self.leader.strategy(game, horizon, history)?;
        Ok(MixedStrategy::pure(game.cols(), myopic_reply(game, &leader)))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd() -> BimatrixGame {
        BimatrixGame::from_fractions(
            &[&[(3, 5), (0, 1)], &[(1, 1), (1, 5)]],
            &[&[(3, 5), (1, 1)], &[(0, 1), (1, 5)]],
        )
        .unwrap()
    }

    #[test]
    fn grim_trigger_punishes_after_defection() {
        let g = pd();
        let gpa = grim_trigger(&g, ActionPair::new(0, 0), 1).unwrap();
        assert_eq!(gpa.strategy(&g, 5, &[]).unwrap().as_pure(), Some(0));
        let h = [ActionPair::new(0, 0), ActionPair::new(0, 1), ActionPair::new(1, 0)];
        assert_eq!(gpa.strategy(&g, 5, &h).unwrap().as_pure(), Some(1));
    }

    #[test]
    fn zero_phase_one_is_grim_trigger() {
        let g = pd();
        let grim = grim_trigger(&g, ActionPair::new(0, 0), 1).unwrap();
        let two = two_phase_defect_gpa(&g, ActionPair::new(0, 0), 1, 0).unwrap();
        assert_eq!(grim, two);
    }

    #[test]
    fn two_phase_defects_first() {
        let g = pd();
        let gpa = two_phase_defect_gpa(&g, ActionPair::new(0, 0), 1, 2).unwrap();
        let mut h = Vec::new();
        let rows: Vec<usize> = (0..4)
            .map(|_| {
                let row = gpa.strategy(&g, 4, &h).unwrap().as_pure().unwrap();
                h.push(ActionPair::new(row, 0));
                row
            })
            .collect();
        assert_eq!(rows, vec![1, 1, 0, 0]);
    }

    #[test]
    fn bad_indices_are_rejected() {
        let g = pd();
        assert!(grim_trigger(&g, ActionPair::new(2, 0), 1).is_err());
        assert!(grim_trigger(&g, ActionPair::new(0, 0), 5).is_err());
    }

    #[test]
    fn myopic_reply_in_pd_is_defect() {
        let g = pd();
        assert_eq!(myopic_reply(&g, &MixedStrategy::pure(2, 0)), 1);
        assert_eq!(myopic_reply(&g, &MixedStrategy::uniform(2)), 1);
    }
}
