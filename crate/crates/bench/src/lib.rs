//! Fixture games shared by the benchmarks.

use stackgpa::{ratio, validate_game, BimatrixGame, Rational};

pub fn prisoners_dilemma() -> BimatrixGame {
    BimatrixGame::from_fractions(
        &[&[(3, 5), (0, 1)], &[(1, 1), (1, 5)]],
        &[&[(3, 5), (1, 1)], &[(0, 1), (1, 5)]],
    )
    .unwrap()
}

/// An `n x n` game with entries in `[-1, 1]` and denominators up to 6,
/// fixed by `salt`.
pub fn dense_game(n: usize, salt: u64) -> BimatrixGame {
    let entry = |i: usize, j: usize, m: u64| -> Rational {
        let h = (i as u64 * 31 + j as u64 * 17 + m * 7 + salt * 13) % 97;
        let den = (h % 6 + 1) as i64;
        let num = (h / 6) as i64 % (2 * den + 1) - den;
        ratio(num, den)
    };
    let matrix = |m: u64| -> Vec<Vec<Rational>> { (0..n).map(|i| (0..n).map(|j| entry(i, j, m)).collect()).collect() };
    validate_game(matrix(0), matrix(1)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for n in 1..=6 {
            let g = dense_game(n, 3);
            assert_eq!((g.rows(), g.cols()), (n, n));
        }
        assert_eq!(prisoners_dilemma().pair_count(), 4);
    }
}
