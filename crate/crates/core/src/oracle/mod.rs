//! Ground truth for the follower side: exact best responses by backward
//! induction, the linear prescription check, simulation and regret.

mod regret;
mod simulate;

pub use regret::{external_regret, RegretReport};
pub use simulate::simulate;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::game::{ActionPair, BimatrixGame, GameError, MixedStrategy};
use crate::gpa::{GamePlayingAlgorithm, GpaError, LookupTableGpa, PrescribedSequenceGpa, Randomness, Side};
use crate::lp::{follower_cap, max_follower_pair, stackelberg_lp};
use crate::rational::{int, Rational};

/// Default limit on the number of follower decision histories the oracle expands.
pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space exceeds the budget of {budget} histories (worst case {required}); reduce the horizon")]
    StateSpaceExceeded { budget: usize, required: BigInt },
    #[error("the leader uses randomness shared across rounds, so its best response is undefined")]
    RandomnessContractViolation,
    #[error(transparent)]
    Gpa(#[from] GpaError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// One follower decision on the equilibrium path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathEntry {
    pub history: Vec<ActionPair>,
    /// The leader's strategy at this history.
    pub leader: MixedStrategy,
    /// One-based in JSON.
    #[serde(serialize_with = "serialize_one_based")]
    pub action: usize,
}

fn serialize_one_based<S: serde::Serializer>(value: &usize, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_u64(*value as u64 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestResponseResult {
    pub horizon: usize,
    /// Expected follower total over all rounds.
    #[serde(with = "crate::rational::serde_rational")]
    pub follower_value: Rational,
    /// Expected leader total, with follower ties broken in the leader's favor.
    #[serde(with = "crate::rational::serde_rational")]
    pub leader_value: Rational,
    /// Decisions at histories reachable under the leader and this policy,
    /// ordered by (length, history).
    pub on_path: Vec<PathEntry>,
    #[serde(skip)]
    pub follower_policy: HashMap<Vec<ActionPair>, usize>,
}

impl BestResponseResult {
    pub fn leader_average(&self) -> Rational {
        &self.leader_value / int(self.horizon as i64)
    }

    pub fn follower_average(&self) -> Rational {
        &self.follower_value / int(self.horizon as i64)
    }

    /// The unique realized play when the leader is pure on the path.
    pub fn deterministic_path(&self) -> Option<Vec<ActionPair>> {
        let mut path = Vec::with_capacity(self.horizon);
        for entry in &self.on_path {
            if entry.history != path {
                return None;
            }
            path.push(ActionPair::new(entry.leader.as_pure()?, entry.action));
        }
        Some(path)
    }

    /// The full policy as a follower lookup table.
    pub fn lookup_table(&self) -> LookupTableGpa {
        LookupTableGpa::from_entries(Side::Follower, self.follower_policy.iter().map(|(h, &a)| (h.clone(), a)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("best response serializes")
    }
}

/// Best-response search with a configurable state budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub budget: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_STATE_BUDGET,
        }
    }
}

struct Search<'a> {
    leader: &'a dyn GamePlayingAlgorithm,
    game: &'a BimatrixGame,
    horizon: usize,
    budget: usize,
    nodes: usize,
    policy: HashMap<Vec<ActionPair>, usize>,
    leader_at: HashMap<Vec<ActionPair>, MixedStrategy>,
}

impl Search<'_> {
    fn exceeded(&self) -> OracleError {
        let branching = BigInt::from(self.game.pair_count());
        let mut required = BigInt::zero();
        let mut level = BigInt::from(1);
        for _ in 0..self.horizon {
            required += &level;
            level *= &branching;
        }
        OracleError::StateSpaceExceeded {
            budget: self.budget,
            required,
        }
    }

    /// Returns (follower, leader) expected continuation totals from `history`.
    fn solve(&mut self, history: &mut Vec<ActionPair>) -> Result<(Rational, Rational), OracleError> {
        if history.len() == self.horizon {
            return Ok((Rational::zero(), Rational::zero()));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(self.exceeded());
        }
        let x = self.leader.strategy(self.game, self.horizon, history)?;
        if x.len() != self.game.rows() {
            return Err(GpaError::LengthMismatch {
                found: x.len(),
                expected: self.game.rows(),
            }
            .into());
        }
        let mut best: Option<(usize, Rational, Rational)> = None;
        for j in 0..self.game.cols() {
            let (mut fv, mut lv) = (Rational::zero(), Rational::zero());
            for (i, w) in x.support() {
                let pair = ActionPair::new(i, j);
                history.push(pair);
                let (cf, cl) = self.solve(history)?;
                history.pop();
                fv += w * (cf + self.game.follower_payoff(pair));
                lv += w * (cl + self.game.leader_payoff(pair));
            }
            let better = match &best {
                None => true,
                Some((_, bf, bl)) => fv > *bf || (fv == *bf && lv > *bl),
            };
            if better {
                best = Some((j, fv, lv));
            }
        }
        let (j, fv, lv) = best.expect("games have at least one column");
        self.policy.insert(history.clone(), j);
        self.leader_at.insert(history.clone(), x);
        Ok((fv, lv))
    }

    fn on_path(&self) -> Vec<PathEntry> {
        let mut entries = Vec::new();
        let mut frontier = vec![Vec::new()];
        while let Some(history) = frontier.pop() {
            let (Some(&action), Some(leader)) = (self.policy.get(&history), self.leader_at.get(&history)) else {
                continue;
            };
            for (i, _) in leader.support() {
                let mut next = history.clone();
                next.push(ActionPair::new(i, action));
                frontier.push(next);
            }
            entries.push(PathEntry {
                history,
                leader: leader.clone(),
                action,
            });
        }
        entries.sort_by(|a, b| a.history.len().cmp(&b.history.len()).then_with(|| a.history.cmp(&b.history)));
        entries
    }
}

impl Oracle {
    pub fn new(budget: usize) -> Self {
        Oracle { budget }
    }

    /// Exact follower best response to `leader` over `horizon` rounds.
    ///
    /// Ties are broken by the leader's continuation value, then by the lowest
    /// column.
    pub fn best_response(
        &self,
        leader: &dyn GamePlayingAlgorithm,
        game: &BimatrixGame,
        horizon: usize,
    ) -> Result<BestResponseResult, OracleError> {
        if leader.randomness() == Randomness::CrossRound {
            return Err(OracleError::RandomnessContractViolation);
        }
        let mut search = Search {
            leader,
            game,
            horizon,
            budget: self.budget,
            nodes: 0,
            policy: HashMap::new(),
            leader_at: HashMap::new(),
        };
        let (follower_value, leader_value) = search.solve(&mut Vec::with_capacity(horizon))?;
        Ok(BestResponseResult {
            horizon,
            follower_value,
            leader_value,
            on_path: search.on_path(),
            follower_policy: search.policy,
        })
    }

    /// `OPT_LP - leader_value / T` against an exactly best-responding follower.
    pub fn stackelberg_gap(
        &self,
        leader: &dyn GamePlayingAlgorithm,
        game: &BimatrixGame,
        horizon: usize,
    ) -> Result<Rational, OracleError> {
        let response = self.best_response(leader, game, horizon)?;
        Ok(stackelberg_lp(game).opt - response.leader_average())
    }
}

pub fn best_response(
    leader: &dyn GamePlayingAlgorithm,
    game: &BimatrixGame,
    horizon: usize,
) -> Result<BestResponseResult, OracleError> {
    Oracle::default().best_response(leader, game, horizon)
}

pub fn stackelberg_gap(leader: &dyn GamePlayingAlgorithm, game: &BimatrixGame, horizon: usize) -> Result<Rational, OracleError> {
    Oracle::default().stackelberg_gap(leader, game, horizon)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "round", rename_all = "snake_case")]
pub enum Verdict {
    Obeys,
    /// One-based round at which the obey-suffix falls below the deviation bound.
    DeviationProfitableAt(usize),
}

/// Linear-time obedience check for a prescribed-sequence leader.
///
/// At every round `t` the follower's payoff from obeying through the end must
/// be at least `m + V·(T - t)`: one round at the best follower payoff `m`
/// followed by the threat cap `V`. The check is sound but conservative.
pub fn verify_prescription(gpa: &PrescribedSequenceGpa, game: &BimatrixGame) -> Verdict {
    let horizon = gpa.horizon();
    let (_, best) = max_follower_pair(game);
    let cap = follower_cap(game, gpa.threat());
    let mut suffix = Rational::zero();
    let mut first_failure = None;
    for (k, &pair) in gpa.prescription().iter().enumerate().rev() {
        suffix += game.follower_payoff(pair);
        let round = k + 1;
        let deviation = &best + &cap * int((horizon - round) as i64);
        if suffix < deviation {
            first_failure = Some(round);
        }
    }
    match first_failure {
        Some(round) => Verdict::DeviationProfitableAt(round),
        None => Verdict::Obeys,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpa::{build_deterministic_gpa, grim_trigger, ConstantGpa};
    use crate::rational::ratio;

    fn pd() -> BimatrixGame {
        BimatrixGame::from_fractions(
            &[&[(3, 5), (0, 1)], &[(1, 1), (1, 5)]],
            &[&[(3, 5), (1, 1)], &[(0, 1), (1, 5)]],
        )
        .unwrap()
    }

    #[test]
    fn grim_trigger_three_rounds() {
        let g = pd();
        let leader = grim_trigger(&g, ActionPair::new(0, 0), 1).unwrap();
        let r = best_response(&leader, &g, 3).unwrap();
        assert_eq!(r.follower_value, ratio(11, 5));
        assert_eq!(r.leader_value, ratio(6, 5));
        let path = r.deterministic_path().unwrap();
        assert_eq!(path, vec![ActionPair::new(0, 0), ActionPair::new(0, 0), ActionPair::new(0, 1)]);
    }

    #[test]
    fn pd_prescription_is_obeyed() {
        let g = pd();
        let built = build_deterministic_gpa(&g, 11).unwrap();
        assert_eq!(verify_prescription(&built.gpa, &g), Verdict::Obeys);
        let r = best_response(&built.gpa, &g, 11).unwrap();
        assert_eq!(r.deterministic_path().unwrap(), built.gpa.prescription());
        assert_eq!(r.leader_average(), ratio(39, 55));
        let gap = stackelberg_gap(&built.gpa, &g, 11).unwrap();
        assert_eq!(gap, ratio(13, 15) - ratio(39, 55));
    }

    #[test]
    fn reversed_prescription_fails_at_round_three() {
        let g = pd();
        let built = build_deterministic_gpa(&g, 11).unwrap();
        let mut reversed = built.gpa.prescription().to_vec();
        reversed.reverse();
        let gpa = PrescribedSequenceGpa::new(&g, reversed, built.gpa.threat().clone()).unwrap();
        assert_eq!(verify_prescription(&gpa, &g), Verdict::DeviationProfitableAt(3));
    }

    #[test]
    fn single_best_pair_obeys() {
        let g = pd();
        let gpa = PrescribedSequenceGpa::new(&g, vec![ActionPair::new(0, 1)], MixedStrategy::pure(2, 1)).unwrap();
        assert_eq!(verify_prescription(&gpa, &g), Verdict::Obeys);
    }

    #[test]
    fn uniform_leader_one_round_is_static_reply() {
        let g = BimatrixGame::from_fractions(
            &[&[(1, 2), (-1, 1)], &[(0, 1), (1, 4)]],
            &[&[(-1, 2), (1, 1)], &[(0, 1), (-1, 4)]],
        )
        .unwrap();
        struct Uniform;
        impl GamePlayingAlgorithm for Uniform {
            fn strategy(&self, g: &BimatrixGame, _: usize, _: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
                Ok(MixedStrategy::uniform(g.rows()))
            }
            fn randomness(&self) -> Randomness {
                Randomness::PerRound
            }
        }
        let r = best_response(&Uniform, &g, 1).unwrap();
        // Column means: -1/4 and 3/8.
        assert_eq!(r.follower_value, ratio(3, 8));
        assert_eq!(r.follower_policy[&vec![]], 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = pd();
        let leader = ConstantGpa {
            side: Side::Leader,
            action: 0,
        };
        let err = Oracle::new(10).best_response(&leader, &g, 6).unwrap_err();
        match err {
            OracleError::StateSpaceExceeded { budget: 10, required } => {
                // 1 + 4 + 16 + 64 + 256 + 1024
                assert_eq!(required, BigInt::from(1365));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cross_round_leaders_are_rejected() {
        struct Shared;
        impl GamePlayingAlgorithm for Shared {
            fn strategy(&self, g: &BimatrixGame, _: usize, _: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
                Ok(MixedStrategy::uniform(g.rows()))
            }
            fn randomness(&self) -> Randomness {
                Randomness::CrossRound
            }
        }
        assert_eq!(
            best_response(&Shared, &pd(), 2).unwrap_err(),
            OracleError::RandomnessContractViolation
        );
    }

    #[test]
    fn ties_favor_the_leader() {
        // Both columns give the follower 0; the leader prefers column 2.
        let g = BimatrixGame::from_fractions(&[[(0, 1), (1, 1)]], &[[(0, 1), (0, 1)]]).unwrap();
        let leader = ConstantGpa {
            side: Side::Leader,
            action: 0,
        };
        let r = best_response(&leader, &g, 2).unwrap();
        assert_eq!(r.leader_value, int(2));
        assert_eq!(r.follower_policy[&vec![]], 1);
    }

    #[test]
    fn serialization_lists_on_path_entries() {
        let g = pd();
        let leader = grim_trigger(&g, ActionPair::new(0, 0), 1).unwrap();
        let r = best_response(&leader, &g, 2).unwrap();
        let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(value["follower_value"], "8/5");
        assert_eq!(value["on_path"].as_array().unwrap().len(), 2);
        assert_eq!(value["on_path"][1]["history"], serde_json::json!([[1, 1]]));
        assert_eq!(value["on_path"][1]["action"], 2);
    }
}
