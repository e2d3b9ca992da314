//! JSON records for GPAs. Action indices in records are one-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    check_action, grim_trigger, two_phase_defect_gpa, ConstantGpa, GamePlayingAlgorithm, GpaError, LookupTableGpa,
    MultiplicativeWeights, ObedientFollower, PrescribedSequenceGpa, Side, TriggerGpa,
};
use crate::game::{ActionPair, BimatrixGame, GameError, MixedStrategy};
use crate::rational::Rational;

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(value: &usize, ser: S) -> Result<S::Ok, S::Error> {
        (value + 1).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<usize, D::Error> {
        match usize::deserialize(de)? {
            0 => Err(serde::de::Error::custom("action indices are 1-based")),
            v => Ok(v - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupEntry {
    pub history: Vec<ActionPair>,
    #[serde(with = "one_based")]
    pub action: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GpaRecord {
    Prescribed {
        prescription: Vec<ActionPair>,
        threat: MixedStrategy,
    },
    GrimTrigger {
        cooperate: ActionPair,
        #[serde(with = "one_based")]
        punish_row: usize,
    },
    TwoPhase {
        cooperate: ActionPair,
        #[serde(with = "one_based")]
        punish_row: usize,
        phase1_len: usize,
    },
    #[serde(rename = "mw")]
    MultiplicativeWeights {
        side: Side,
        #[serde(with = "crate::rational::serde_rational")]
        learning_rate: Rational,
    },
    Lookup {
        side: Side,
        entries: Vec<LookupEntry>,
    },
    Constant {
        side: Side,
        #[serde(with = "one_based")]
        action: usize,
    },
    Obedient {
        prescription: Vec<ActionPair>,
    },
}

impl GpaRecord {
    pub fn kind(&self) -> &'static str {
        match self {
            GpaRecord::Prescribed { .. } => "prescribed",
            GpaRecord::GrimTrigger { .. } => "grim_trigger",
            GpaRecord::TwoPhase { .. } => "two_phase",
            GpaRecord::MultiplicativeWeights { .. } => "mw",
            GpaRecord::Lookup { .. } => "lookup",
            GpaRecord::Constant { .. } => "constant",
            GpaRecord::Obedient { .. } => "obedient",
        }
    }

    /// The side this GPA plays for.
    pub fn side(&self) -> Side {
        match self {
            GpaRecord::Prescribed { .. } | GpaRecord::GrimTrigger { .. } | GpaRecord::TwoPhase { .. } => Side::Leader,
            GpaRecord::MultiplicativeWeights { side, .. }
            | GpaRecord::Lookup { side, .. }
            | GpaRecord::Constant { side, .. } => *side,
            GpaRecord::Obedient { .. } => Side::Follower,
        }
    }

    /// Validates the record against `game` and builds the GPA.
    pub fn instantiate(&self, game: &BimatrixGame) -> Result<Arc<dyn GamePlayingAlgorithm>, GpaError> {
        Ok(match self {
            GpaRecord::Prescribed { prescription, threat } => {
                let threat = MixedStrategy::new(threat.weights().to_vec())?;
                Arc::new(PrescribedSequenceGpa::new(game, prescription.clone(), threat)?)
            }
            GpaRecord::GrimTrigger { cooperate, punish_row } => Arc::new(grim_trigger(game, *cooperate, *punish_row)?),
            GpaRecord::TwoPhase {
                cooperate,
                punish_row,
                phase1_len,
            } => Arc::new(two_phase_defect_gpa(game, *cooperate, *punish_row, *phase1_len)?),
            GpaRecord::MultiplicativeWeights { side, learning_rate } => {
                Arc::new(MultiplicativeWeights::new(*side, learning_rate.clone())?)
            }
            GpaRecord::Lookup { side, entries } => {
                let actions = side.action_count(game);
                for entry in entries {
                    check_action(entry.action, actions)?;
                    check_pairs(game, &entry.history)?;
                }
                Arc::new(LookupTableGpa::from_entries(
                    *side,
                    entries.iter().map(|e| (e.history.clone(), e.action)),
                ))
            }
            GpaRecord::Constant { side, action } => {
                check_action(*action, side.action_count(game))?;
                Arc::new(ConstantGpa {
                    side: *side,
                    action: *action,
                })
            }
            GpaRecord::Obedient { prescription } => {
                check_pairs(game, prescription)?;
                Arc::new(ObedientFollower {
                    prescription: prescription.clone(),
                })
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("GPA record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GameError> {
        serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))
    }
}

fn check_pairs(game: &BimatrixGame, pairs: &[ActionPair]) -> Result<(), GameError> {
    match pairs.iter().find(|&&p| !game.contains(p)) {
        Some(&pair) => Err(GameError::PairOutOfBounds {
            pair,
            rows: game.rows(),
            cols: game.cols(),
        }),
        None => Ok(()),
    }
}

impl From<&PrescribedSequenceGpa> for GpaRecord {
    fn from(gpa: &PrescribedSequenceGpa) -> Self {
        GpaRecord::Prescribed {
            prescription: gpa.prescription().to_vec(),
            threat: gpa.threat().clone(),
        }
    }
}

impl From<&TriggerGpa> for GpaRecord {
    fn from(gpa: &TriggerGpa) -> Self {
        if gpa.phase1_len == 0 {
            GpaRecord::GrimTrigger {
                cooperate: gpa.cooperate,
                punish_row: gpa.punish_row,
            }
        } else {
            GpaRecord::TwoPhase {
                cooperate: gpa.cooperate,
                punish_row: gpa.punish_row,
                phase1_len: gpa.phase1_len,
            }
        }
    }
}

impl From<&LookupTableGpa> for GpaRecord {
    fn from(gpa: &LookupTableGpa) -> Self {
        GpaRecord::Lookup {
            side: gpa.side(),
            entries: gpa
                .sorted_entries()
                .into_iter()
                .map(|(history, action)| LookupEntry {
                    history: history.clone(),
                    action,
                })
                .collect(),
        }
    }
}
