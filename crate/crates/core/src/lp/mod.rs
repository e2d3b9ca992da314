//! Threat value, the Stackelberg upper-bound LP, and the follower's best pair.

mod simplex;

pub use simplex::{simplex_solve, Constraint, LinearProgram, LpSolution, LpStatus, Relation};

use num_traits::{One, Zero};

use crate::game::{ActionPair, BimatrixGame, MixedStrategy};
use crate::rational::Rational;

/// The follower's minimax value `V` and a leader strategy `x*` attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreatResult {
    pub value: Rational,
    pub strategy: MixedStrategy,
}

/// Highest per-round follower payoff against a fixed leader mixed strategy.
pub fn follower_cap(game: &BimatrixGame, leader: &MixedStrategy) -> Rational {
    (0..game.cols())
        .map(|j| {
            leader
                .support()
                .map(|(i, w)| w * game.follower_payoff(ActionPair::new(i, j)))
                .sum::<Rational>()
        })
        .max()
        .expect("games have at least one column")
}

/// `V = min_x max_j xᵀ M2 e_j`, solved as a zero-sum LP on `M2`.
pub fn threat(game: &BimatrixGame) -> ThreatResult {
    // Variables: x_0..x_{rows-1} >= 0, then the free cap v. Maximize -v.
    let rows = game.rows();
    let mut objective = vec![Rational::zero(); rows + 1];
    objective[rows] = -Rational::one();
    let mut lp = LinearProgram::new(objective);
    lp.set_lower_bound(rows, None);
    for j in 0..game.cols() {
        let mut coeffs: Vec<Rational> = (0..rows)
            .map(|i| -game.follower_payoff(ActionPair::new(i, j)))
            .collect();
        coeffs.push(Rational::one());
        lp.add_constraint(coeffs, Relation::Ge, Rational::zero());
    }
    let mut simplex_row = vec![Rational::one(); rows];
    simplex_row.push(Rational::zero());
    lp.add_constraint(simplex_row, Relation::Eq, Rational::one());

    let solution = simplex_solve(&lp);
    assert_eq!(solution.status, LpStatus::Optimal, "threat LP is always feasible and bounded");
    let strategy = MixedStrategy::new(solution.values[..rows].to_vec()).expect("simplex point is a distribution");
    let value = solution.values[rows].clone();
    debug_assert_eq!(follower_cap(game, &strategy), value);
    ThreatResult { value, strategy }
}

/// Optimal distribution over action pairs for the leader subject to the
/// follower getting at least the threat value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackelbergLp {
    /// Weights in row-major pair order.
    pub alpha: Vec<Rational>,
    pub opt: Rational,
    pub threat: ThreatResult,
}

impl StackelbergLp {
    pub fn weight(&self, game: &BimatrixGame, pair: ActionPair) -> &Rational {
        &self.alpha[game.pair_index(pair)]
    }

    /// Pairs with positive weight, row-major.
    pub fn support<'a>(&'a self, game: &'a BimatrixGame) -> impl Iterator<Item = (ActionPair, &'a Rational)> + 'a {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, w)| (game.pair_at(k), w))
    }
}

/// Builds the upper-bound LP for a given threat value.
pub fn stackelberg_program(game: &BimatrixGame, threat_value: &Rational) -> LinearProgram {
    let leader: Vec<Rational> = game.pairs().map(|p| game.leader_payoff(p).clone()).collect();
    let follower: Vec<Rational> = game.pairs().map(|p| game.follower_payoff(p).clone()).collect();
    let mut lp = LinearProgram::new(leader);
    lp.add_constraint(follower, Relation::Ge, threat_value.clone());
    lp.add_constraint(vec![Rational::one(); game.pair_count()], Relation::Eq, Rational::one());
    lp
}

pub fn stackelberg_lp(game: &BimatrixGame) -> StackelbergLp {
    let threat = threat(game);
    let solution = simplex_solve(&stackelberg_program(game, &threat.value));
    // The pair distribution induced by x* and a follower best reply is feasible,
    // and the objective is bounded by max M1.
    assert_eq!(solution.status, LpStatus::Optimal);
    StackelbergLp {
        alpha: solution.values,
        opt: solution.objective_value,
        threat,
    }
}

/// The pair with the largest follower payoff `m`; ties go to the larger leader
/// payoff, then to the smaller `(row, col)`.
pub fn max_follower_pair(game: &BimatrixGame) -> (ActionPair, Rational) {
    let pair = game
        .pairs()
        .min_by(|&a, &b| {
            game.follower_payoff(b)
                .cmp(game.follower_payoff(a))
                .then_with(|| game.leader_payoff(b).cmp(game.leader_payoff(a)))
                .then_with(|| a.cmp(&b))
        })
        .expect("games have at least one pair");
    (pair, game.follower_payoff(pair).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pd() -> BimatrixGame {
        BimatrixGame::from_fractions(
            &[&[(3, 5), (0, 1)], &[(1, 1), (1, 5)]],
            &[&[(3, 5), (1, 1)], &[(0, 1), (1, 5)]],
        )
        .unwrap()
    }

    fn inevitability() -> BimatrixGame {
        BimatrixGame::from_fractions(
            &[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]],
            &[&[(1, 2), (1, 1)], &[(0, 1), (0, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn pd_threat_is_pure_defect() {
        let t = threat(&pd());
        assert_eq!(t.value, ratio(1, 5));
        assert_eq!(t.strategy, MixedStrategy::pure(2, 1));
    }

    #[test]
    fn inevitability_threat_is_zero() {
        let t = threat(&inevitability());
        assert_eq!(t.value, int(0));
        assert_eq!(t.strategy, MixedStrategy::pure(2, 1));
    }

    #[test]
    fn constant_follower_payoff_threat() {
        let g = BimatrixGame::from_fractions(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 2)]], &[&[(-1, 3); 2], &[(-1, 3); 2]])
            .unwrap();
        let t = threat(&g);
        assert_eq!(t.value, ratio(-1, 3));
        assert_eq!(follower_cap(&g, &t.strategy), ratio(-1, 3));
    }

    #[test]
    fn matching_pennies_threat_is_mixed() {
        let g = BimatrixGame::from_fractions(&[&[(1, 1), (-1, 1)], &[(-1, 1), (1, 1)]], &[&[(-1, 1), (1, 1)], &[(1, 1), (-1, 1)]])
            .unwrap();
        let t = threat(&g);
        assert_eq!(t.value, int(0));
        assert_eq!(t.strategy.weights(), &[ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn pd_stackelberg_lp() {
        let g = pd();
        let s = stackelberg_lp(&g);
        assert_eq!(s.opt, ratio(13, 15));
        assert_eq!(s.weight(&g, ActionPair::one_based(1, 1)), &ratio(1, 3));
        assert_eq!(s.weight(&g, ActionPair::one_based(2, 1)), &ratio(2, 3));
        assert_eq!(s.weight(&g, ActionPair::one_based(1, 2)), &int(0));
        assert_eq!(s.weight(&g, ActionPair::one_based(2, 2)), &int(0));
    }

    #[test]
    fn inevitability_lp_is_point_mass() {
        let g = inevitability();
        let s = stackelberg_lp(&g);
        assert_eq!(s.opt, int(1));
        assert_eq!(s.weight(&g, ActionPair::one_based(1, 1)), &int(1));
    }

    #[test]
    fn zero_game_lp() {
        let g = BimatrixGame::from_fractions(&[[(0, 1); 2]; 2], &[[(0, 1); 2]; 2]).unwrap();
        let s = stackelberg_lp(&g);
        assert_eq!(s.opt, int(0));
        assert_eq!(s.alpha.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn max_follower_pair_examples() {
        assert_eq!(max_follower_pair(&pd()), (ActionPair::one_based(1, 2), int(1)));
        assert_eq!(max_follower_pair(&inevitability()), (ActionPair::one_based(1, 2), int(1)));
        let constant = BimatrixGame::from_fractions(&[&[(0, 1), (1, 2)], &[(1, 1), (1, 2)]], &[&[(1, 4); 2], &[(1, 4); 2]])
            .unwrap();
        assert_eq!(max_follower_pair(&constant), (ActionPair::one_based(2, 1), ratio(1, 4)));
    }
}
