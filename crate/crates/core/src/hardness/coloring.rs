use std::collections::BTreeSet;

use super::{Graph, HardnessError};
use crate::game::{ActionPair, BimatrixGame, MixedStrategy};
use crate::gpa::{GamePlayingAlgorithm, GpaError, Randomness};
use crate::rational::{ratio, Rational};

/// Leader whose last-round mix rewards the follower for encoding a small
/// proper coloring of `graph` in its first `T - 1` moves.
///
/// Round `t < T` colors vertex `t` with the follower's action; the last vertex
/// gets no round, so edges touching it are not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringLeaderGpa {
    graph: Graph,
}

impl ColoringLeaderGpa {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn horizon(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Score of the follower's first `T - 1` moves: `n` if action `n` was used
    /// or the coloring is improper, otherwise the number of distinct colors.
    pub fn score(&self, history: &[ActionPair]) -> usize {
        let n = self.graph.vertex_count();
        let colors: Vec<usize> = history.iter().take(n - 1).map(|p| p.col).collect();
        if colors.iter().any(|&c| c == n - 1) {
            return n;
        }
        let proper = self
            .graph
            .edges()
            .iter()
            .filter(|(u, v)| *u < colors.len() && *v < colors.len())
            .all(|&(u, v)| colors[u] != colors[v]);
        if !proper {
            return n;
        }
        colors.iter().collect::<BTreeSet<_>>().len()
    }
}

impl GamePlayingAlgorithm for ColoringLeaderGpa {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let n = self.graph.vertex_count();
        let round = history.len();
        if round >= horizon {
            return Err(GpaError::PastHorizon { history: round, horizon });
        }
        if round + 1 < horizon {
            return Ok(MixedStrategy::pure(game.rows(), 0));
        }
        let g = self.score(history) as i64;
        let mut weights = vec![Rational::from_integer(0.into()); n];
        weights[n - 1] = ratio(n as i64 - g, n as i64);
        weights[0] = ratio(g, n as i64);
        Ok(MixedStrategy::new(weights)?)
    }

    fn randomness(&self) -> Randomness {
        Randomness::PerRound
    }
}

/// The companion game (follower earns 1 only on `(n, n)`, leader earns 0),
/// horizon `T = n`, and the coloring leader.
pub fn coloring_leader_gpa(graph: &Graph) -> Result<(BimatrixGame, usize, ColoringLeaderGpa), HardnessError> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(HardnessError::GraphTooSmall { vertices: n, minimum: 2 });
    }
    let zero = Rational::from_integer(0.into());
    let m1 = vec![vec![zero.clone(); n]; n];
    let mut m2 = m1.clone();
    m2[n - 1][n - 1] = Rational::from_integer(1.into());
    let game = crate::game::validate_game(m1, m2).expect("0/1 payoffs are valid");
    Ok((game, n, ColoringLeaderGpa { graph: graph.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::best_response;

    #[test]
    fn path_on_three_vertices_needs_two_colors() {
        let graph = Graph::path(3);
        let (game, horizon, leader) = coloring_leader_gpa(&graph).unwrap();
        let r = best_response(&leader, &game, horizon).unwrap();
        assert_eq!(r.follower_value, ratio(1, 3));
        let root = r.follower_policy[&vec![]];
        let second = r.follower_policy[&vec![ActionPair::new(0, root)]];
        assert_ne!(root, second);
        assert_eq!(leader.score(&[ActionPair::new(0, root), ActionPair::new(0, second)]), 2);
    }

    #[test]
    fn early_top_action_scores_n() {
        let graph = Graph::path(3);
        let (game, horizon, leader) = coloring_leader_gpa(&graph).unwrap();
        let history = [ActionPair::new(0, 2), ActionPair::new(0, 0)];
        assert_eq!(leader.score(&history), 3);
        let s = leader.strategy(&game, horizon, &history).unwrap();
        assert_eq!(s.as_pure(), Some(0));
    }

    #[test]
    fn improper_coloring_scores_n() {
        let leader = ColoringLeaderGpa { graph: Graph::path(3) };
        assert_eq!(leader.score(&[ActionPair::new(0, 1), ActionPair::new(0, 1)]), 3);
    }

    #[test]
    fn companion_game_layout() {
        let (game, horizon, _) = coloring_leader_gpa(&Graph::path(4)).unwrap();
        assert_eq!((game.rows(), game.cols(), horizon), (4, 4, 4));
        assert_eq!(game.follower_payoff(ActionPair::new(3, 3)), &ratio(1, 1));
        assert_eq!(game.follower_payoff(ActionPair::new(3, 2)), &ratio(0, 1));
    }
}
