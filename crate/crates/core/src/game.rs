//! Bimatrix games, action pairs, mixed strategies and transcripts.
//!
//! Indices are zero-based in memory. Every file format and every `Display`
//! implementation uses one-based indices, so `ActionPair { row: 1, col: 0 }`
//! prints as `(2,1)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::rational::{format_rational, int, lcm_of_denominators, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("payoff matrices must be nonempty")]
    Empty,
    #[error("{matrix} row {row} has {found} entries, expected {expected}")]
    Ragged {
        matrix: &'static str,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("M1 is {0}x{1} but M2 is {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("{matrix}[{row}][{col}] = {value} lies outside [-1, 1]")]
    EntryOutOfRange {
        matrix: &'static str,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("{matrix}[{row}][{col}]: {reason}")]
    BadEntry {
        matrix: &'static str,
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("malformed game file: {0}")]
    Json(String),
    #[error("transcript is empty")]
    EmptyTranscript,
    #[error("action pair {pair} is outside a {rows}x{cols} game")]
    PairOutOfBounds { pair: ActionPair, rows: usize, cols: usize },
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
}

/// A (leader row, follower column) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionPair {
    pub row: usize,
    pub col: usize,
}

impl ActionPair {
    pub const fn new(row: usize, col: usize) -> Self {
        ActionPair { row, col }
    }

    /// Builds a pair from one-based indices, as written in files and examples.
    pub fn one_based(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "one-based indices start at 1");
        ActionPair::new(row - 1, col - 1)
    }
}

impl fmt::Display for ActionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

impl Serialize for ActionPair {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        [self.row + 1, self.col + 1].serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ActionPair {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(de)?;
        if row == 0 || col == 0 {
            return Err(serde::de::Error::custom("action indices are 1-based"));
        }
        Ok(ActionPair::new(row - 1, col - 1))
    }
}

/// Two-player game with leader payoffs `M1` and follower payoffs `M2`.
///
/// All entries lie in `[-1, 1]`; `granularity` is the LCM of every payoff
/// denominator, so each payoff is an integer multiple of `1/granularity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    rows: usize,
    cols: usize,
    leader: Vec<Rational>,
    follower: Vec<Rational>,
    granularity: BigInt,
}

fn check_shape(matrix: &'static str, m: &[Vec<Rational>]) -> Result<(usize, usize), GameError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(GameError::Empty);
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != cols {
            return Err(GameError::Ragged {
                matrix,
                row: row + 1,
                found: r.len(),
                expected: cols,
            });
        }
    }
    Ok((rows, cols))
}

/// Validates raw payoff matrices and computes the granularity.
pub fn validate_game(m1: Vec<Vec<Rational>>, m2: Vec<Vec<Rational>>) -> Result<BimatrixGame, GameError> {
    let (r1, c1) = check_shape("M1", &m1)?;
    let (r2, c2) = check_shape("M2", &m2)?;
    if (r1, c1) != (r2, c2) {
        return Err(GameError::ShapeMismatch(r1, c1, r2, c2));
    }
    let one = Rational::one();
    for (name, m) in [("M1", &m1), ("M2", &m2)] {
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.abs() > one {
                    return Err(GameError::EntryOutOfRange {
                        matrix: name,
                        row: i + 1,
                        col: j + 1,
                        value: format_rational(v),
                    });
                }
            }
        }
    }
    let leader: Vec<Rational> = m1.into_iter().flatten().collect();
    let follower: Vec<Rational> = m2.into_iter().flatten().collect();
    let granularity = lcm_of_denominators(leader.iter().chain(follower.iter()));
    Ok(BimatrixGame {
        rows: r1,
        cols: c1,
        leader,
        follower,
        granularity,
    })
}

impl BimatrixGame {
    /// Convenience constructor from `(num, den)` pairs.
    pub fn from_fractions<R: AsRef<[(i64, i64)]>>(m1: &[R], m2: &[R]) -> Result<Self, GameError> {
        let conv = |m: &[R]| {
            m.iter()
                .map(|row| row.as_ref().iter().map(|&(n, d)| crate::rational::ratio(n, d)).collect())
                .collect()
        };
        validate_game(conv(m1), conv(m2))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn granularity(&self) -> &BigInt {
        &self.granularity
    }

    pub fn pair_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Row-major index of a pair.
    pub fn pair_index(&self, pair: ActionPair) -> usize {
        pair.row * self.cols + pair.col
    }

    pub fn pair_at(&self, index: usize) -> ActionPair {
        ActionPair::new(index / self.cols, index % self.cols)
    }

    pub fn contains(&self, pair: ActionPair) -> bool {
        pair.row < self.rows && pair.col < self.cols
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = ActionPair> + '_ {
        (0..self.pair_count()).map(move |k| self.pair_at(k))
    }

    pub fn leader_payoff(&self, pair: ActionPair) -> &Rational {
        &self.leader[self.pair_index(pair)]
    }

    pub fn follower_payoff(&self, pair: ActionPair) -> &Rational {
        &self.follower[self.pair_index(pair)]
    }

    pub fn leader_matrix(&self) -> Vec<Vec<Rational>> {
        self.leader.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn follower_matrix(&self) -> Vec<Vec<Rational>> {
        self.follower.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// The game with the roles' payoffs replaced; used for zero-sum values.
    pub fn with_matrices(&self, m1: Vec<Vec<Rational>>, m2: Vec<Vec<Rational>>) -> Result<Self, GameError> {
        validate_game(m1, m2)
    }

    /// Parses the JSON game format `{"M1": [[...]], "M2": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self, GameError> {
        #[derive(Deserialize)]
        struct GameFile {
            #[serde(rename = "M1")]
            m1: Vec<Vec<Value>>,
            #[serde(rename = "M2")]
            m2: Vec<Vec<Value>>,
        }
        let file: GameFile = serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))?;
        let convert = |name: &'static str, m: Vec<Vec<Value>>| -> Result<Vec<Vec<Rational>>, GameError> {
            m.into_iter()
                .enumerate()
                .map(|(i, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(j, cell)| parse_cell(name, i + 1, j + 1, &cell))
                        .collect()
                })
                .collect()
        };
        validate_game(convert("M1", file.m1)?, convert("M2", file.m2)?)
    }

    pub fn to_json(&self) -> String {
        let render = |m: &[Rational]| -> Vec<Vec<String>> {
            m.chunks(self.cols)
                .map(|row| row.iter().map(format_rational).collect())
                .collect()
        };
        let value = serde_json::json!({
            "M1": render(&self.leader),
            "M2": render(&self.follower),
        });
        serde_json::to_string_pretty(&value).expect("game serializes")
    }
}

fn parse_cell(matrix: &'static str, row: usize, col: usize, cell: &Value) -> Result<Rational, GameError> {
    let bad = |reason: String| GameError::BadEntry {
        matrix,
        row,
        col,
        reason,
    };
    match cell {
        Value::Number(n) => match n.as_i64() {
            Some(v) => Ok(int(v)),
            None => Err(bad(format!("{n} is not an integer; write fractions as \"p/q\""))),
        },
        Value::String(s) => parse_rational(s).map_err(|e| bad(e.to_string())),
        other => Err(bad(format!("expected integer or \"p/q\" string, found {other}"))),
    }
}

/// Follower-payoff order over all pairs used by every prescription.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrdering {
    sequence: Vec<ActionPair>,
    rank: Vec<usize>,
}

impl PairOrdering {
    pub fn sequence(&self) -> &[ActionPair] {
        &self.sequence
    }

    /// Position of the pair's row-major index in the ordering.
    pub fn rank_of(&self, pair_index: usize) -> usize {
        self.rank[pair_index]
    }
}

/// Compares pairs by follower payoff ascending, then leader payoff descending,
/// then `(row, col)`.
pub fn compare_pairs(game: &BimatrixGame, a: ActionPair, b: ActionPair) -> Ordering {
    game.follower_payoff(a)
        .cmp(game.follower_payoff(b))
        .then_with(|| game.leader_payoff(b).cmp(game.leader_payoff(a)))
        .then_with(|| a.cmp(&b))
}

pub fn pair_ordering(game: &BimatrixGame) -> PairOrdering {
    let mut sequence: Vec<ActionPair> = game.pairs().collect();
    sequence.sort_by(|&a, &b| compare_pairs(game, a, b));
    let mut rank = vec![0; sequence.len()];
    for (position, &pair) in sequence.iter().enumerate() {
        rank[game.pair_index(pair)] = position;
    }
    PairOrdering { sequence, rank }
}

/// A probability vector over one player's actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedStrategy {
    #[serde(with = "crate::rational::serde_rational_vec")]
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self, GameError> {
        if weights.is_empty() {
            return Err(GameError::InvalidStrategy("no actions".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(GameError::InvalidStrategy("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(GameError::InvalidStrategy(format!("weights sum to {total}")));
        }
        Ok(MixedStrategy { weights })
    }

    pub fn pure(actions: usize, action: usize) -> Self {
        assert!(action < actions, "action {action} out of range");
        let mut weights = vec![Rational::zero(); actions];
        weights[action] = Rational::one();
        MixedStrategy { weights }
    }

    pub fn uniform(actions: usize) -> Self {
        let w = crate::rational::ratio(1, actions as i64);
        MixedStrategy {
            weights: vec![w; actions],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, action: usize) -> &Rational {
        &self.weights[action]
    }

    /// Actions with positive probability, in index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.weights.iter().enumerate().filter(|(_, w)| w.is_positive())
    }

    /// The single action played with probability one, if any.
    pub fn as_pure(&self) -> Option<usize> {
        self.weights.iter().position(One::is_one)
    }

    /// Selects an action given a uniform draw `u` in `[0, 1)`.
    pub fn pick(&self, u: f64) -> usize {
        if let Some(a) = self.as_pure() {
            return a;
        }
        let mut acc = 0.0;
        let mut last = 0;
        for (a, w) in self.support() {
            acc += crate::rational::to_f64(w);
            last = a;
            if u < acc {
                return a;
            }
        }
        last
    }
}

/// A realized sequence of action pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub pairs: Vec<ActionPair>,
}

impl Transcript {
    pub fn new(pairs: Vec<ActionPair>) -> Self {
        Transcript { pairs }
    }

    pub fn horizon(&self) -> usize {
        self.pairs.len()
    }

    pub fn check_bounds(&self, game: &BimatrixGame) -> Result<(), GameError> {
        match self.pairs.iter().find(|p| !game.contains(**p)) {
            Some(&pair) => Err(GameError::PairOutOfBounds {
                pair,
                rows: game.rows(),
                cols: game.cols(),
            }),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GameError> {
        serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))
    }
}

/// Exact totals `(Σ M1, Σ M2)` over a pair sequence.
pub fn total_payoffs(game: &BimatrixGame, pairs: &[ActionPair]) -> (Rational, Rational) {
    pairs.iter().fold((Rational::zero(), Rational::zero()), |(l, f), &p| {
        (l + game.leader_payoff(p), f + game.follower_payoff(p))
    })
}

/// Exact per-round averages of leader and follower payoffs.
pub fn average_payoffs(game: &BimatrixGame, pairs: &[ActionPair]) -> Result<(Rational, Rational), GameError> {
    if pairs.is_empty() {
        return Err(GameError::EmptyTranscript);
    }
    let (l, f) = total_payoffs(game, pairs);
    let t = int(pairs.len() as i64);
    Ok((l / &t, f / t))
}
