use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{HardnessError, ThreePlayerGame};
use crate::game::MixedStrategy;
use crate::rational::Rational;

/// Default cap on the number of strategy pairs a grid audit may evaluate.
pub const DEFAULT_GRID_BUDGET: u64 = 20_000_000;

fn check_dimension(game: &ThreePlayerGame, strategy: &MixedStrategy) -> Result<(), HardnessError> {
    let n = game.graph().vertex_count();
    if strategy.len() == n {
        Ok(())
    } else {
        Err(HardnessError::DimensionMismatch {
            expected: n,
            found: strategy.len(),
        })
    }
}

/// Player 3's exact best reply to independent mixed strategies of Players 1
/// and 2. Ties prefer `t_0`, then the lowest index.
pub fn player3_audit(
    game: &ThreePlayerGame,
    p1: &MixedStrategy,
    p2: &MixedStrategy,
) -> Result<(usize, Rational), HardnessError> {
    check_dimension(game, p1)?;
    check_dimension(game, p2)?;
    let k = game.player3_count();
    let mut values = vec![Rational::zero(); k];
    for (r, wr) in p1.support() {
        for (s, ws) in p2.support() {
            let w = wr * ws;
            for (t, value) in values.iter_mut().enumerate() {
                let payoff = game.mu3(r, s, t);
                if !payoff.is_zero() {
                    *value += &w * payoff;
                }
            }
        }
    }
    let safe = game.safe_action();
    let mut best = safe;
    for t in 0..safe {
        if values[t] > values[best] {
            best = t;
        }
    }
    Ok((best, values.swap_remove(best)))
}

/// Minimum over grid points of Player 3's best-reply value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAudit {
    pub worst_case: Rational,
    pub p1: MixedStrategy,
    pub p2: MixedStrategy,
    pub best_action: usize,
    /// Number of strategy pairs evaluated.
    pub points: u64,
}

/// `1 + 1/((n-2)·n^(c-1))`, the separation Player 3 is guaranteed when no
/// balanced cover exists.
pub fn player3_threshold(n: usize, c_exponent: u32) -> Rational {
    let n_big = BigInt::from(n);
    let denom = BigInt::from(n - 2) * num_traits::pow(n_big, c_exponent.saturating_sub(1) as usize);
    Rational::one() + Rational::new(BigInt::one(), denom)
}

/// All weight vectors over `n` actions with entries in `{0, 1, .., resolution}`
/// summing to `resolution`, in lexicographic order.
fn compositions(n: usize, resolution: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, slots: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            fill(prefix, left - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n), resolution, n, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn grid_audit_player3(game: &ThreePlayerGame, resolution: usize) -> Result<GridAudit, HardnessError> {
    grid_audit_player3_with_budget(game, resolution, DEFAULT_GRID_BUDGET)
}

/// Exhaustive audit over strategies whose weights are multiples of
/// `1/resolution`. Certifies nothing off the grid.
pub fn grid_audit_player3_with_budget(
    game: &ThreePlayerGame,
    resolution: usize,
    budget: u64,
) -> Result<GridAudit, HardnessError> {
    if resolution == 0 {
        return Err(HardnessError::InvalidResolution);
    }
    let n = game.graph().vertex_count();
    let k = game.player3_count();
    let per_side = binomial((resolution + n - 1) as u64, (n - 1) as u64);
    let required = &per_side * &per_side;
    if required > BigInt::from(budget) {
        return Err(HardnessError::BudgetExceeded {
            what: "grid audit",
            required: format!("{required} strategy pairs"),
            budget: format!("{budget} strategy pairs"),
        });
    }

    // Scale μ3 to integers so each grid point is evaluated in i128.
    let scale = game.bonus().denom().clone();
    let mu: Vec<i128> = (0..n)
        .flat_map(|r| (0..n).flat_map(move |s| (0..k).map(move |t| (r, s, t))))
        .map(|(r, s, t)| {
            (game.mu3(r, s, t) * Rational::from(scale.clone()))
                .to_integer()
                .to_i128()
                .expect("scaled payoffs are small")
        })
        .collect();
    let grid = compositions(n, resolution);
    let safe = k - 1;

    // Best scaled Player-3 value (and action) at one grid point.
    let evaluate = |a: &[usize], b: &[usize], values: &mut [i128]| -> (i128, usize) {
        values.iter_mut().for_each(|v| *v = 0);
        for (r, &ar) in a.iter().enumerate().filter(|(_, &w)| w > 0) {
            for (s, &bs) in b.iter().enumerate().filter(|(_, &w)| w > 0) {
                let w = (ar * bs) as i128;
                let row = &mu[(r * n + s) * k..(r * n + s + 1) * k];
                for (v, &m) in values.iter_mut().zip(row) {
                    *v += w * m;
                }
            }
        }
        let mut best = safe;
        for t in 0..safe {
            if values[t] > values[best] {
                best = t;
            }
        }
        (values[best], best)
    };

    let (value, i, j, best_action) = grid
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut values = vec![0i128; k];
            let mut local: Option<(i128, usize, usize, usize)> = None;
            for (j, b) in grid.iter().enumerate() {
                let (v, t) = evaluate(a, b, &mut values);
                if local.is_none_or(|(lv, ..)| v < lv) {
                    local = Some((v, i, j, t));
                }
            }
            local.expect("grid is nonempty")
        })
        .reduce_with(|x, y| if (y.0, y.1, y.2) < (x.0, x.1, x.2) { y } else { x })
        .expect("grid is nonempty");

    let to_strategy = |weights: &[usize]| {
        MixedStrategy::new(
            weights
                .iter()
                .map(|&w| Rational::new(BigInt::from(w), BigInt::from(resolution)))
                .collect(),
        )
        .expect("grid weights sum to one")
    };
    let denom = BigInt::from(resolution * resolution) * scale;
    Ok(GridAudit {
        worst_case: Rational::new(BigInt::from(value), denom),
        p1: to_strategy(&grid[i]),
        p2: to_strategy(&grid[j]),
        best_action,
        points: required.to_u64().expect("checked against the budget"),
    })
}
