mod common;

use proptest::prelude::*;
use stackgpa::rational::int;
use stackgpa::{average_payoffs, format_rational, pair_ordering, parse_rational, ratio, ActionPair, BimatrixGame, Rational};

fn game_from_seed(seed: u64) -> BimatrixGame {
    use rand::Rng;
    let mut r = common::rng(seed);
    let rows = r.gen_range(1..=4);
    let cols = r.gen_range(1..=4);
    common::random_game(&mut r, rows, cols, 3)
}

fn pairs_in(game: &BimatrixGame, raw: &[(usize, usize)]) -> Vec<ActionPair> {
    raw.iter().map(|&(i, j)| ActionPair::new(i % game.rows(), j % game.cols())).collect()
}

proptest! {
    #[test]
    fn rational_text_round_trips(num in any::<i64>(), den in 1i64..=i64::MAX) {
        let r = ratio(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn pair_ordering_is_a_stable_permutation(seed in any::<u64>()) {
        let g = game_from_seed(seed);
        let order = pair_ordering(&g);
        let mut seen: Vec<ActionPair> = order.sequence().to_vec();
        seen.sort();
        let all: Vec<ActionPair> = g.pairs().collect();
        prop_assert_eq!(seen, all);
        let mut resorted = order.sequence().to_vec();
        resorted.sort_by(|a, b| stackgpa::compare_pairs(&g, *a, *b));
        prop_assert_eq!(resorted.as_slice(), order.sequence());
        for w in order.sequence().windows(2) {
            prop_assert!(g.follower_payoff(w[0]) <= g.follower_payoff(w[1]));
        }
        for (rank, &p) in order.sequence().iter().enumerate() {
            prop_assert_eq!(order.rank_of(g.pair_index(p)), rank);
        }
    }

    #[test]
    fn averages_combine_linearly(
        seed in any::<u64>(),
        a in prop::collection::vec((0usize..4, 0usize..4), 1..30),
        b in prop::collection::vec((0usize..4, 0usize..4), 1..30),
    ) {
        let g = game_from_seed(seed);
        let (a, b) = (pairs_in(&g, &a), pairs_in(&g, &b));
        let (la, fa) = average_payoffs(&g, &a).unwrap();
        let (lb, fb) = average_payoffs(&g, &b).unwrap();
        let joined: Vec<ActionPair> = a.iter().chain(&b).copied().collect();
        let (l, f) = average_payoffs(&g, &joined).unwrap();
        let (ta, tb) = (int(a.len() as i64), int(b.len() as i64));
        let total = &ta + &tb;
        prop_assert_eq!(l, (&ta * la + &tb * lb) / &total);
        prop_assert_eq!(f, (ta * fa + tb * fb) / total);
    }

    #[test]
    fn game_json_round_trips(seed in any::<u64>()) {
        let g = game_from_seed(seed);
        let back = BimatrixGame::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&back, &g);
        let expected_a = g
            .leader_matrix()
            .into_iter()
            .chain(g.follower_matrix())
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, r: Rational| num_integer::Integer::lcm(&acc, r.denom()));
        prop_assert_eq!(g.granularity(), &expected_a);
    }
}
