use num_traits::Zero;
use serde::Serialize;

use crate::game::{BimatrixGame, GameError, Transcript};
use crate::gpa::Side;
use crate::rational::Rational;

/// External regret of one side against the realized opponent actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegretReport {
    /// Best fixed-action total minus the realized total; negative when the
    /// realized play beats every fixed action.
    #[serde(with = "crate::rational::serde_rational")]
    pub total_regret: Rational,
    /// Lowest-indexed maximizer; one-based in JSON.
    #[serde(serialize_with = "one_based")]
    pub best_fixed_action: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub realized_total: Rational,
}

fn one_based<S: serde::Serializer>(value: &usize, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_u64(*value as u64 + 1)
}

impl RegretReport {
    pub fn per_round(&self, horizon: usize) -> Rational {
        &self.total_regret / crate::rational::int(horizon as i64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("regret report serializes")
    }
}

pub fn external_regret(transcript: &Transcript, game: &BimatrixGame, side: Side) -> Result<RegretReport, GameError> {
    if transcript.pairs.is_empty() {
        return Err(GameError::EmptyTranscript);
    }
    transcript.check_bounds(game)?;
    let realized_total: Rational = transcript.pairs.iter().map(|&p| side.payoff(game, p)).sum();
    let mut fixed = vec![Rational::zero(); side.action_count(game)];
    for &pair in &transcript.pairs {
        let opponent = side.opponent_action(pair);
        for (a, total) in fixed.iter_mut().enumerate() {
            *total += side.payoff(game, side.pair(a, opponent));
        }
    }
    let mut best_fixed_action = 0;
    for (a, total) in fixed.iter().enumerate() {
        if *total > fixed[best_fixed_action] {
            best_fixed_action = a;
        }
    }
    Ok(RegretReport {
        total_regret: &fixed[best_fixed_action] - &realized_total,
        best_fixed_action,
        realized_total,
    })
}
