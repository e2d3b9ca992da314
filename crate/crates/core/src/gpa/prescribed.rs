//! The prescribed-sequence leader: play a scripted list of action pairs and
//! switch to the threat strategy forever once the follower leaves the script.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GamePlayingAlgorithm, GpaError, Randomness};
use crate::game::{pair_ordering, ActionPair, BimatrixGame, MixedStrategy};
use crate::lp::{max_follower_pair, stackelberg_lp, StackelbergLp};
use crate::rational::{int, lcm_of_denominators, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrescribedSequenceGpa {
    prescription: Vec<ActionPair>,
    threat: MixedStrategy,
}

impl PrescribedSequenceGpa {
    pub fn new(game: &BimatrixGame, prescription: Vec<ActionPair>, threat: MixedStrategy) -> Result<Self, GpaError> {
        if let Some(&bad) = prescription.iter().find(|p| !game.contains(**p)) {
            return Err(crate::game::GameError::PairOutOfBounds {
                pair: bad,
                rows: game.rows(),
                cols: game.cols(),
            }
            .into());
        }
        if threat.len() != game.rows() {
            return Err(GpaError::LengthMismatch {
                found: threat.len(),
                expected: game.rows(),
            });
        }
        Ok(PrescribedSequenceGpa { prescription, threat })
    }

    pub fn prescription(&self) -> &[ActionPair] {
        &self.prescription
    }

    pub fn threat(&self) -> &MixedStrategy {
        &self.threat
    }

    pub fn horizon(&self) -> usize {
        self.prescription.len()
    }

    /// First zero-based round in which the follower's column left the script.
    pub fn first_deviation(&self, history: &[ActionPair]) -> Option<usize> {
        history
            .iter()
            .zip(&self.prescription)
            .position(|(played, prescribed)| played.col != prescribed.col)
    }
}

impl GamePlayingAlgorithm for PrescribedSequenceGpa {
    fn strategy(&self, game: &BimatrixGame, horizon: usize, history: &[ActionPair]) -> Result<MixedStrategy, GpaError> {
        if horizon != self.horizon() {
            return Err(GpaError::LengthMismatch {
                found: self.horizon(),
                expected: horizon,
            });
        }
        let round = history.len();
        if round >= horizon {
            return Err(GpaError::PastHorizon { history: round, horizon });
        }
        if self.first_deviation(history).is_some() {
            Ok(self.threat.clone())
        } else {
            Ok(MixedStrategy::pure(game.rows(), self.prescription[round].row))
        }
    }

    fn randomness(&self) -> Randomness {
        if self.threat.as_pure().is_some() {
            Randomness::Deterministic
        } else {
            Randomness::PerRound
        }
    }
}

/// `T = repetitions * cycle_length + remainder` with `remainder` in `[1, cycle_length]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleParameters {
    pub cycle_length: usize,
    pub repetitions: usize,
    pub remainder: usize,
    /// Copies of each pair in the first `repetitions * cycle_length` rounds, row-major.
    pub counts: Vec<usize>,
}

impl CycleParameters {
    pub fn horizon(&self) -> usize {
        self.repetitions * self.cycle_length + self.remainder
    }

    /// The guaranteed additive gap `2N/T`.
    pub fn cycle_bound(&self) -> Rational {
        Rational::new(BigInt::from(2 * self.cycle_length), BigInt::from(self.horizon()))
    }

    /// The sharper `2r/T` form of the same guarantee.
    pub fn remainder_bound(&self) -> Rational {
        Rational::new(BigInt::from(2 * self.remainder), BigInt::from(self.horizon()))
    }
}

#[derive(Clone, Debug)]
pub struct DeterministicConstruction {
    pub gpa: PrescribedSequenceGpa,
    pub params: CycleParameters,
    pub lp: StackelbergLp,
    pub treat: ActionPair,
}

pub fn build_deterministic_gpa(game: &BimatrixGame, horizon: usize) -> Result<DeterministicConstruction, GpaError> {
    build_deterministic_gpa_from(game, &stackelberg_lp(game), horizon)
}

/// Deterministic construction from an already solved LP.
pub fn build_deterministic_gpa_from(
    game: &BimatrixGame,
    lp: &StackelbergLp,
    horizon: usize,
) -> Result<DeterministicConstruction, GpaError> {
    let cycle = lcm_of_denominators(&lp.alpha);
    if BigInt::from(horizon) <= cycle {
        return Err(GpaError::HorizonTooShort {
            horizon,
            cycle_length: cycle,
        });
    }
    let cycle_length = cycle.to_usize().expect("cycle length is below the horizon");
    let remainder = match horizon % cycle_length {
        0 => cycle_length,
        r => r,
    };
    let repetitions = (horizon - remainder) / cycle_length;
    let block = BigInt::from(repetitions * cycle_length);
    let counts: Vec<usize> = lp
        .alpha
        .iter()
        .map(|a| {
            let (q, r) = (a.numer() * &block).div_rem(a.denom());
            debug_assert!(r.is_zero());
            q.to_usize().expect("count fits the horizon")
        })
        .collect();
    debug_assert_eq!(counts.iter().sum::<usize>(), repetitions * cycle_length);

    let (treat, _) = max_follower_pair(game);
    let mut prescription = Vec::with_capacity(horizon);
    for &pair in pair_ordering(game).sequence() {
        prescription.extend(std::iter::repeat_n(pair, counts[game.pair_index(pair)]));
    }
    prescription.extend(std::iter::repeat_n(treat, remainder));

    Ok(DeterministicConstruction {
        gpa: PrescribedSequenceGpa::new(game, prescription, lp.threat.strategy.clone())?,
        params: CycleParameters {
            cycle_length,
            repetitions,
            remainder,
            counts,
        },
        lp: lp.clone(),
        treat,
    })
}

/// The generator for draw `counter` under `seed`: one ChaCha stream per draw,
/// so draws do not depend on the order they are taken in.
pub fn counter_rng(seed: u64, counter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(counter);
    rng
}

#[derive(Clone, Debug)]
pub struct SampledConstruction {
    pub gpa: PrescribedSequenceGpa,
    /// The `T-1` raw draws in draw order, before swap repair.
    pub pre_swap: Vec<ActionPair>,
    /// The first `T-1` pairs after swap repair, in draw order.
    pub post_swap: Vec<ActionPair>,
    pub swaps: usize,
    /// `m == V`: no sampling, every round is the best pair for the follower.
    pub degenerate: bool,
    pub lp: StackelbergLp,
}

pub fn build_sampled_gpa(game: &BimatrixGame, horizon: usize, seed: u64) -> Result<SampledConstruction, GpaError> {
    build_sampled_gpa_from(game, &stackelberg_lp(game), horizon, seed)
}

/// Draws `T-1` pairs from the LP distribution, repairs the follower average up to
/// the threat value, sorts by follower payoff and appends one final treat.
pub fn build_sampled_gpa_from(
    game: &BimatrixGame,
    lp: &StackelbergLp,
    horizon: usize,
    seed: u64,
) -> Result<SampledConstruction, GpaError> {
    if horizon < 2 {
        return Err(GpaError::HorizonTooShort {
            horizon,
            cycle_length: BigInt::from(1),
        });
    }
    let (treat, best) = max_follower_pair(game);
    let threat_value = &lp.threat.value;
    let threat = lp.threat.strategy.clone();

    if &best == threat_value {
        return Ok(SampledConstruction {
            gpa: PrescribedSequenceGpa::new(game, vec![treat; horizon], threat)?,
            pre_swap: Vec::new(),
            post_swap: Vec::new(),
            swaps: 0,
            degenerate: true,
            lp: lp.clone(),
        });
    }

    // Exact sampling: a uniform integer below N picks pair k with probability α_k.
    let scale = lcm_of_denominators(&lp.alpha);
    let mut cumulative = Vec::with_capacity(lp.alpha.len());
    let mut acc = BigInt::zero();
    for a in &lp.alpha {
        acc += a.numer() * (&scale / a.denom());
        cumulative.push(acc.clone());
    }
    let draws = horizon - 1;
    let pre_swap: Vec<ActionPair> = (0..draws)
        .map(|k| {
            let u = counter_rng(seed, k as u64).gen_bigint_range(&BigInt::zero(), &scale);
            let index = cumulative.partition_point(|c| c <= &u);
            game.pair_at(index)
        })
        .collect();

    let mut samples = pre_swap.clone();
    let target = threat_value * int(draws as i64);
    let mut follower_total: Rational = samples.iter().map(|&p| game.follower_payoff(p)).sum();
    let mut swaps = 0;
    while follower_total < target {
        let (slot, _) = samples
            .iter()
            .enumerate()
            .min_by(|(ia, a), (ib, b)| {
                game.follower_payoff(**a)
                    .cmp(game.follower_payoff(**b))
                    .then_with(|| game.leader_payoff(**a).cmp(game.leader_payoff(**b)))
                    .then_with(|| ia.cmp(ib))
            })
            .expect("at least one draw");
        follower_total += &best - game.follower_payoff(samples[slot]);
        samples[slot] = treat;
        swaps += 1;
    }
    let post_swap = samples.clone();

    let order = pair_ordering(game);
    samples.sort_by_key(|&p| order.rank_of(game.pair_index(p)));
    samples.push(treat);

    Ok(SampledConstruction {
        gpa: PrescribedSequenceGpa::new(game, samples, threat)?,
        pre_swap,
        post_swap,
        swaps,
        degenerate: false,
        lp: lp.clone(),
    })
}

/// Whether `d <= k·√(10A) / t^(1/4)`, decided exactly by comparing fourth powers.
pub fn within_sampling_bound(d: &Rational, k: u32, granularity: &BigInt, t: usize) -> bool {
    if !d.is_positive() {
        return true;
    }
    let d4 = d * d * d * d;
    let ten_a = BigInt::from(10) * granularity;
    let rhs = BigInt::from(k).pow(4) * &ten_a * &ten_a;
    d4 * int(t as i64) <= Rational::from_integer(rhs)
}

/// `k·√(10A) / t^(1/4)` as a float, for display only.
pub fn sampling_bound_approx(k: u32, granularity: &BigInt, t: usize) -> f64 {
    let a = granularity.to_f64().unwrap_or(f64::INFINITY);
    k as f64 * (10.0 * a).sqrt() / (t as f64).powf(0.25)
}
