//! Small reference games used throughout the docs and tests.

use crate::coalition::Coalition;
use crate::game::{basis_game, BasisKind};
use crate::scalar::Scalar;
use crate::{Game, Rational};

fn game(n: usize, entries: &[(&[usize], i64)]) -> Game {
    Game::new(
        n,
        entries.iter().map(|(players, w)| {
            (
                Coalition::from_players(players.iter().map(|p| p - 1)),
                Rational::from_int(*w),
            )
        }),
    )
    .expect("fixture is well formed")
}

/// Three players: `v{1}=6, v{1,2}=12, v{1,3}=6, v{1,2,3}=18`, all else 0.
pub fn v0() -> Game {
    game(
        3,
        &[(&[1], 6), (&[1, 2], 12), (&[1, 3], 6), (&[1, 2, 3], 18)],
    )
}

/// Unanimity game of `{1,2}` on three players.
pub fn u12() -> Game {
    basis_game(3, BasisKind::Unanimity, Coalition::from_players([0, 1])).expect("fixture")
}

/// Identity game of `{1}` on three players.
pub fn e1() -> Game {
    basis_game(3, BasisKind::Identity, Coalition::singleton(0)).expect("fixture")
}

/// Two players: `v{1}=1, v{2}=0, v{1,2}=1`.
pub fn v2() -> Game {
    game(2, &[(&[1], 1), (&[1, 2], 1)])
}
