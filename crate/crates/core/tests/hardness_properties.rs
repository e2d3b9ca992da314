use num_traits::{One, Zero};
use proptest::prelude::*;
use stackgpa::hardness::{
    balanced_vertex_cover, cover_strategies, grid_audit_player3, player3_audit, reduce_graph, Graph, Player3Action,
};
use stackgpa::ratio;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), slots).prop_map(move |keep| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(keep).filter(|(_, k)| *k).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Smallest cover size by bitmask, if one of size at most `n/2` exists.
fn bitmask_cover_size(g: &Graph) -> Option<u32> {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize <= n / 2)
        .filter(|mask| g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
        .map(|mask| mask.count_ones())
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn player3_collisions_pay_nothing(g in graph(7)) {
        let game = reduce_graph(&g).unwrap();
        let n = g.vertex_count();
        let (r, s, t) = game.shape();
        prop_assert_eq!((r, s, t), (n, n, n + g.edge_count() + 1));
        let bonus = ratio(n as i64, n as i64 - 2);
        for v in 0..n {
            for w in 0..n {
                prop_assert!(game.mu3(v, w, v).is_zero());
                prop_assert!(game.mu3(v, w, w).is_zero());
                for k in 0..t {
                    let x = game.mu3(v, w, k);
                    prop_assert!(x.is_zero() || x.is_one() || *x == bonus);
                    prop_assert_eq!(game.mu1(v, w, k), game.mu2(v, w, k));
                }
            }
        }
        prop_assert_eq!(game.player3_action(game.safe_action()), Player3Action::Safe);
    }

    #[test]
    fn cover_search_matches_bitmask(g in graph(10)) {
        let found = balanced_vertex_cover(&g).unwrap();
        let expected = bitmask_cover_size(&g);
        prop_assert_eq!(found.as_ref().map(|c| c.len() as u32), expected);
        if let Some(cover) = found {
            prop_assert!(g.is_cover(&cover));
        }
    }

    #[test]
    fn balanced_covers_hold_player3_to_one(g in graph(8)) {
        prop_assume!(g.vertex_count() % 2 == 0);
        let Some(cover) = balanced_vertex_cover(&g).unwrap() else {
            return Ok(());
        };
        let game = reduce_graph(&g).unwrap();
        let (p1, p2) = cover_strategies(&g, &cover).unwrap();
        let (action, value) = player3_audit(&game, &p1, &p2).unwrap();
        prop_assert_eq!(action, game.safe_action());
        prop_assert_eq!(value, ratio(1, 1));
    }
}

#[test]
fn grid_worst_case_shrinks_under_refinement() {
    let graphs = [Graph::cycle(3), Graph::complete(3), Graph::cycle(4), Graph::complete(4), Graph::path(4)];
    for g in &graphs {
        let game = reduce_graph(g).unwrap();
        let coarse = grid_audit_player3(&game, 1).unwrap();
        let mid = grid_audit_player3(&game, 2).unwrap();
        let fine = grid_audit_player3(&game, 4).unwrap();
        assert!(mid.worst_case <= coarse.worst_case, "{g}");
        assert!(fine.worst_case <= mid.worst_case, "{g}");
        // Every reported minimizer is a real grid point with that value.
        let (_, value) = player3_audit(&game, &fine.p1, &fine.p2).unwrap();
        assert_eq!(value, fine.worst_case);
    }
}
