use std::collections::HashMap;

use super::{check_action, GamePlayingAlgorithm, GpaError, Randomness, Side};
use crate::game::{ActionPair, BimatrixGame, MixedStrategy};

/// Deterministic GPA given explicitly as a history -> pure action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupTableGpa {
    side: Side,
    table: HashMap<Vec<ActionPair>, usize>,
}

impl LookupTableGpa {
    pub fn new(side: Side) -> Self {
        LookupTableGpa {
            side,
            table: HashMap::new(),
        }
    }

    pub fn from_entries(side: Side, entries: impl IntoIterator<Item = (Vec<ActionPair>, usize)>) -> Self {
        LookupTableGpa {
            side,
            table: entries.into_iter().collect(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn insert(&mut self, history: Vec<ActionPair>, action: usize) {
        self.table.insert(history, action);
    }

    pub fn get(&self, history: &[ActionPair]) -> Option<usize> {
        self.table.get(history).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Entries sorted by (history length, history), for stable output.
    pub fn sorted_entries(&self) -> Vec<(&Vec<ActionPair>, usize)> {
        let mut entries: Vec<_> = self.table.iter().map(|(h, &a)| (h, a)).collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        entries
    }
}

impl GamePlayingAlgorithm for LookupTableGpa {
    fn strategy(&self, game: &BimatrixGame, _horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        let actions = self.side().action_count(game);
        let action = self
            .get(history)
            .ok_or_else(|| GpaError::MissingEntry(history.to_vec()))?;
        Ok(MixedStrategy::pure(actions, check_action(action, actions)?))
    }

    fn randomness(&self) -> Randomness {
        Randomness::Deterministic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game() -> BimatrixGame {
        BimatrixGame::from_fractions(&[[(0, 1); 2]; 2], &[[(0, 1); 2]; 2]).unwrap()
    }

    #[test]
    fn constant_table() {
        let g = game();
        let mut table = LookupTableGpa::new(Side::Leader);
        table.insert(vec![], 0);
        for a in 0..2 {
            for b in 0..2 {
                table.insert(vec![ActionPair::new(a, b)], 0);
            }
        }
        assert_eq!(table.strategy(&g, 2, &[]).unwrap().as_pure(), Some(0));
        assert_eq!(table.strategy(&g, 2, &[ActionPair::new(1, 1)]).unwrap().as_pure(), Some(0));
    }

    #[test]
    fn missing_entry_off_path() {
        let g = game();
        let table = LookupTableGpa::from_entries(Side::Follower, [(vec![], 1)]);
        let err = table.strategy(&g, 2, &[ActionPair::new(0, 1)]).unwrap_err();
        assert_eq!(err, GpaError::MissingEntry(vec![ActionPair::new(0, 1)]));
    }
}
