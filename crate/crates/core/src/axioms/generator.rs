//! Seeded random games, and constructive builders for game pairs that meet
//! the hypotheses of the conditional axioms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::Coalition;
use crate::error::{check_range, Result};
use crate::game::TuGame;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameMode {
    Unrestricted,
    /// Nonnegative worths, singletons worth 0, and `v(S) ≥ v(S∖i)` throughout.
    ZeroMonotonic,
}

/// Recipe for one deterministic random game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameGenerator {
    pub seed: u64,
    pub n: usize,
    /// Inclusive integer range for the drawn worths. Zero-monotonic mode
    /// clamps the lower end to 0.
    pub low: i64,
    pub high: i64,
    pub mode: GameMode,
}

impl GameGenerator {
    pub fn new(seed: u64, n: usize) -> Self {
        GameGenerator {
            seed,
            n,
            low: -9,
            high: 9,
            mode: GameMode::Unrestricted,
        }
    }

    pub fn zero_monotonic(mut self) -> Self {
        self.mode = GameMode::ZeroMonotonic;
        self
    }

    pub fn with_range(mut self, low: i64, high: i64) -> Self {
        self.low = low;
        self.high = high;
        self
    }

    pub fn generate<T: Scalar>(&self) -> Result<TuGame<T>> {
        check_range("n", self.n, 1, crate::MAX_PLAYERS)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match self.mode {
            GameMode::Unrestricted => random_game(&mut rng, self.n, self.low, self.high),
            GameMode::ZeroMonotonic => {
                zero_monotonic_game(&mut rng, self.n, self.low.max(0), self.high.max(0))
            }
        }
    }
}

pub fn generate_game<T: Scalar>(generator: &GameGenerator) -> Result<TuGame<T>> {
    generator.generate()
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw<T: Scalar>(rng: &mut impl Rng, low: i64, high: i64) -> T {
    T::from_int(rng.gen_range(low..=high.max(low)))
}

/// Independent integer worths in `[low, high]`.
pub fn random_game<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    low: i64,
    high: i64,
) -> Result<TuGame<T>> {
    TuGame::from_fn(n, |c| {
        if c.is_empty() {
            T::zero()
        } else {
            draw(rng, low, high)
        }
    })
}

/// Draws nonnegative worths with zero singletons, then lifts every coalition
/// to at least the worth of each of its maximal proper subsets, so that
/// `v(S) − v(S∖i) ≥ 0 = v(i)`.
pub fn zero_monotonic_game<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    low: i64,
    high: i64,
) -> Result<TuGame<T>> {
    let mut table: Vec<T> = Coalition::all(n)
        .map(|c| {
            if c.size() <= 1 {
                T::zero()
            } else {
                draw(rng, low, high)
            }
        })
        .collect();
    for bits in 1..table.len() {
        let c = Coalition::from_bits(bits as u32);
        for i in c.members() {
            let below = c.without(i).index();
            if table[below] > table[bits] {
                table[bits] = table[below].clone();
            }
        }
    }
    TuGame::from_table(n, table)
}

/// A small nonzero rational `p/q`.
pub fn random_scalar<T: Scalar>(rng: &mut impl Rng) -> T {
    let mut p = rng.gen_range(-5i64..=5);
    if p == 0 {
        p = 1;
    }
    T::from_ratio(p, rng.gen_range(1u64..=4))
}

pub fn random_player(rng: &mut impl Rng, n: usize) -> usize {
    rng.gen_range(0..n)
}

/// Two distinct players, or `None` when `n < 2`.
pub fn random_pair(rng: &mut impl Rng, n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let players: Vec<usize> = (0..n).collect();
    let mut pick = players.choose_multiple(rng, 2);
    Some((*pick.next()?, *pick.next()?))
}

/// Rewrites the coalitions containing `player` so it becomes a k-nullifying
/// null player: `v(S∪i) = 0` for `s < k` and `v(S∪i) = v(S)` otherwise.
pub fn plant_k_nullifying_null<T: Scalar>(
    v: &TuGame<T>,
    player: usize,
    k: usize,
) -> Result<TuGame<T>> {
    v.check_player(player)?;
    v.check_k(k)?;
    let mut table = v.table().to_vec();
    for s in v.grand().without(player).subsets() {
        table[s.with(player).index()] = if s.size() < k {
            T::zero()
        } else {
            table[s.index()].clone()
        };
    }
    TuGame::from_table(v.n(), table)
}

/// Rewrites `v` so `player` is a p-null player: size-`p` coalitions without
/// it are worth `v(N)`, and it adds nothing to coalitions of size `< p`.
pub fn plant_p_null<T: Scalar>(v: &TuGame<T>, player: usize, p: usize) -> Result<TuGame<T>> {
    v.check_player(player)?;
    check_range("p", p, 1, v.n() - 1)?;
    let grand = v.grand_worth().clone();
    let mut table = v.table().to_vec();
    let others = v.grand().without(player);
    for s in others.subsets().filter(|s| s.size() == p) {
        table[s.index()] = grand.clone();
    }
    for s in others.subsets().filter(|s| s.size() < p) {
        table[s.with(player).index()] = table[s.index()].clone();
    }
    TuGame::from_table(v.n(), table)
}

/// Makes `i` and `j` symmetric by copying `v(S∪i)` onto `v(S∪j)`.
pub fn symmetrize<T: Scalar>(v: &TuGame<T>, i: usize, j: usize) -> Result<TuGame<T>> {
    v.check_player(i)?;
    v.check_player(j)?;
    let mut table = v.table().to_vec();
    for s in v.grand().without(i).without(j).subsets() {
        table[s.with(j).index()] = table[s.with(i).index()].clone();
    }
    TuGame::from_table(v.n(), table)
}

/// `Σ c_S u_S` with integer `c_S ∈ [0, high]` over the coalitions accepted
/// by `keep`; every accepted `S` adds `c_S` to the marginal contributions of
/// its members.
pub fn nonnegative_unanimity_sum<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    high: i64,
    keep: impl Fn(Coalition) -> bool,
) -> Result<TuGame<T>> {
    let dividends = Coalition::all(n)
        .map(|c| {
            if !c.is_empty() && keep(c) {
                draw(rng, 0, high)
            } else {
                T::zero()
            }
        })
        .collect();
    TuGame::from_dividends(n, dividends)
}

/// A game `d` in which `player` has nonnegative marginals on coalitions of
/// size `≥ k` and nonnegative worths `d(S∪i)` for `s < k`; built from
/// hybrid-basis coordinates, nonnegative on coalitions containing `player`.
pub fn partial_monotone_increment<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    player: usize,
    range: i64,
) -> Result<TuGame<T>> {
    let coords: Vec<T> = Coalition::all(n)
        .map(|c| {
            if c.is_empty() {
                T::zero()
            } else if c.contains(player) {
                draw(rng, 0, range)
            } else {
                draw(rng, -range, range)
            }
        })
        .collect();
    TuGame::from_lambda(n, k, &coords)
}
