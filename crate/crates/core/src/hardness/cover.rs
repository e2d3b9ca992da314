use num_traits::Zero;

use super::{Graph, HardnessError};
use crate::game::MixedStrategy;
use crate::rational::Rational;

/// Largest vertex count the brute-force search accepts by default.
pub const DEFAULT_COVER_LIMIT: usize = 20;

/// A vertex cover of size at most `⌊n/2⌋`, smallest first, if one exists.
pub fn balanced_vertex_cover(graph: &Graph) -> Result<Option<Vec<usize>>, HardnessError> {
    balanced_vertex_cover_with_limit(graph, DEFAULT_COVER_LIMIT)
}

pub fn balanced_vertex_cover_with_limit(graph: &Graph, max_vertices: usize) -> Result<Option<Vec<usize>>, HardnessError> {
    let n = graph.vertex_count();
    if n > max_vertices {
        return Err(HardnessError::BudgetExceeded {
            what: "vertex cover search",
            required: format!("{n} vertices"),
            budget: format!("{max_vertices} vertices"),
        });
    }
    for size in 0..=n / 2 {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if graph.is_cover(&subset) {
                return Ok(Some(subset));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Player 1 uniform on the cover (padded to `⌊n/2⌋` with the lowest other
/// vertices), Player 2 uniform on the remaining vertices.
pub fn cover_strategies(graph: &Graph, cover: &[usize]) -> Result<(MixedStrategy, MixedStrategy), HardnessError> {
    let n = graph.vertex_count();
    if n < 2 {
        return Err(HardnessError::GraphTooSmall { vertices: n, minimum: 2 });
    }
    let half = n / 2;
    let mut chosen = vec![false; n];
    for &v in cover {
        if v >= n {
            return Err(HardnessError::InvalidCover(format!("vertex {} does not exist", v + 1)));
        }
        if std::mem::replace(&mut chosen[v], true) {
            return Err(HardnessError::InvalidCover(format!("vertex {} is listed twice", v + 1)));
        }
    }
    if cover.len() > half {
        return Err(HardnessError::InvalidCover(format!(
            "{} vertices exceed the balanced size {half}",
            cover.len()
        )));
    }
    if let Some(&(u, v)) = graph.edges().iter().find(|(u, v)| !chosen[*u] && !chosen[*v]) {
        return Err(HardnessError::InvalidCover(format!("edge {} {} is not covered", u + 1, v + 1)));
    }
    let mut missing = half - cover.len();
    for slot in chosen.iter_mut() {
        if missing == 0 {
            break;
        }
        if !*slot {
            *slot = true;
            missing -= 1;
        }
    }
    let uniform = |members: &dyn Fn(usize) -> bool, count: usize| {
        let w = Rational::new(1.into(), (count as i64).into());
        let weights = (0..n)
            .map(|v| if members(v) { w.clone() } else { Rational::zero() })
            .collect();
        MixedStrategy::new(weights).expect("uniform weights sum to one")
    };
    Ok((uniform(&|v| chosen[v], half), uniform(&|v| !chosen[v], n - half)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn four_cycle_has_a_diagonal_cover() {
        assert_eq!(balanced_vertex_cover(&Graph::cycle(4)).unwrap(), Some(vec![0, 2]));
    }

    #[test]
    fn complete_four_has_none() {
        assert_eq!(balanced_vertex_cover(&Graph::complete(4)).unwrap(), None);
    }

    #[test]
    fn edgeless_graph_has_empty_cover() {
        let g = Graph::new(6, []).unwrap();
        assert_eq!(balanced_vertex_cover(&g).unwrap(), Some(vec![]));
    }

    #[test]
    fn large_graphs_exceed_the_budget() {
        assert!(balanced_vertex_cover(&Graph::path(21)).is_err());
    }

    #[test]
    fn four_cycle_strategies() {
        let (p1, p2) = cover_strategies(&Graph::cycle(4), &[0, 2]).unwrap();
        let h = ratio(1, 2);
        let z = ratio(0, 1);
        assert_eq!(p1.weights(), &[h.clone(), z.clone(), h.clone(), z.clone()]);
        assert_eq!(p2.weights(), &[z.clone(), h.clone(), z, h]);
    }

    #[test]
    fn small_cover_is_padded() {
        // Star centered at vertex 3 on six vertices.
        let g = Graph::new(6, (0..6).filter(|&v| v != 2).map(|v| (2, v))).unwrap();
        let (p1, p2) = cover_strategies(&g, &[2]).unwrap();
        let support: Vec<usize> = p1.support().map(|(v, _)| v).collect();
        assert_eq!(support, vec![0, 1, 2]);
        assert!(p1.support().all(|(_, w)| *w == ratio(1, 3)));
        assert_eq!(p2.support().count(), 3);
    }

    #[test]
    fn non_cover_is_rejected() {
        let g = Graph::cycle(4);
        assert!(matches!(cover_strategies(&g, &[0, 1]), Err(HardnessError::InvalidCover(_))));
        assert!(matches!(cover_strategies(&g, &[0, 1, 2]), Err(HardnessError::InvalidCover(_))));
    }
}
