use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{Graph, HardnessError};
use crate::rational::{format_rational, Rational};

/// A Player-3 pure strategy in the reduced game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player3Action {
    /// `t_v`: bet on vertex `v` being played by neither opponent.
    Vertex(usize),
    /// `t_e`: bet on Player 1 avoiding both endpoints of edge `e` (index into the edge list).
    Edge(usize),
    /// `t_0`: the safe action, paying everyone 1.
    Safe,
}

/// Three-player game produced from a graph. Players 1 and 2 pick vertices;
/// Player 3 picks a vertex, an edge, or the safe action.
///
/// Player-3 actions are indexed vertices first, then edges, then `t_0` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePlayerGame {
    graph: Graph,
    /// Payoff to Player 3 on every non-safe action that does not collide.
    bonus: Rational,
    mu1: Vec<Rational>,
    mu2: Vec<Rational>,
    mu3: Vec<Rational>,
}

impl ThreePlayerGame {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `(n, n, m + n + 1)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        let n = self.graph.vertex_count();
        (n, n, self.player3_count())
    }

    pub fn player3_count(&self) -> usize {
        self.graph.vertex_count() + self.graph.edge_count() + 1
    }

    pub fn safe_action(&self) -> usize {
        self.player3_count() - 1
    }

    /// `n / (n - 2)`.
    pub fn bonus(&self) -> &Rational {
        &self.bonus
    }

    pub fn player3_action(&self, t: usize) -> Player3Action {
        let n = self.graph.vertex_count();
        if t < n {
            Player3Action::Vertex(t)
        } else if t < n + self.graph.edge_count() {
            Player3Action::Edge(t - n)
        } else {
            Player3Action::Safe
        }
    }

    /// Label used in reports and files: `t3`, `e1-2`, `t0` (one-based vertices).
    pub fn player3_label(&self, t: usize) -> String {
        match self.player3_action(t) {
            Player3Action::Vertex(v) => format!("t{}", v + 1),
            Player3Action::Edge(e) => {
                let (u, v) = self.graph.edges()[e];
                format!("e{}-{}", u + 1, v + 1)
            }
            Player3Action::Safe => "t0".into(),
        }
    }

    fn index(&self, r: usize, s: usize, t: usize) -> usize {
        (r * self.graph.vertex_count() + s) * self.player3_count() + t
    }

    pub fn mu1(&self, r: usize, s: usize, t: usize) -> &Rational {
        &self.mu1[self.index(r, s, t)]
    }

    pub fn mu2(&self, r: usize, s: usize, t: usize) -> &Rational {
        &self.mu2[self.index(r, s, t)]
    }

    pub fn mu3(&self, r: usize, s: usize, t: usize) -> &Rational {
        &self.mu3[self.index(r, s, t)]
    }

    pub fn to_json_value(&self) -> Value {
        let (n, _, k) = self.shape();
        let tensor = |data: &[Rational]| -> Value {
            Value::Array(
                (0..n)
                    .map(|r| {
                        Value::Array(
                            (0..n)
                                .map(|s| {
                                    Value::Array(
                                        (0..k)
                                            .map(|t| Value::String(format_rational(&data[self.index(r, s, t)])))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        json!({
            "shape": [n, n, k],
            "player3_actions": (0..k).map(|t| self.player3_label(t)).collect::<Vec<_>>(),
            "mu1": tensor(&self.mu1),
            "mu2": tensor(&self.mu2),
            "mu3": tensor(&self.mu3),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("three-player game serializes")
    }
}

/// The vertex-cover reduction to a three-player game.
pub fn reduce_graph(graph: &Graph) -> Result<ThreePlayerGame, HardnessError> {
    let n = graph.vertex_count();
    if n < 3 {
        return Err(HardnessError::GraphTooSmall { vertices: n, minimum: 3 });
    }
    let bonus = Rational::new((n as i64).into(), ((n - 2) as i64).into());
    let k = n + graph.edge_count() + 1;
    let size = n * n * k;
    let (mut mu1, mut mu3) = (Vec::with_capacity(size), Vec::with_capacity(size));
    for r in 0..n {
        for s in 0..n {
            for t in 0..k {
                let (common, third) = if t == k - 1 {
                    (Rational::one(), Rational::one())
                } else if t < n {
                    let hit = t == r || t == s;
                    (Rational::zero(), if hit { Rational::zero() } else { bonus.clone() })
                } else {
                    let (u, v) = graph.edges()[t - n];
                    let hit = r == u || r == v;
                    (Rational::zero(), if hit { Rational::zero() } else { bonus.clone() })
                };
                mu1.push(common);
                mu3.push(third);
            }
        }
    }
    Ok(ThreePlayerGame {
        graph: graph.clone(),
        bonus,
        mu2: mu1.clone(),
        mu1,
        mu3,
    })
}
