//! TU games as total worth tables over the subset lattice.

use std::fmt;
use std::ops::{Add, Sub};

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{check_range, Error, Result};
use crate::scalar::Scalar;

/// A transferable-utility game on players `0..n`.
///
/// `worths[S.bits()]` holds `v(S)`; the table is total and `v(∅) = 0`.
#[derive(Clone, PartialEq)]
pub struct TuGame<T> {
    n: usize,
    worths: Vec<T>,
}

/// Which standard basis game to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `e_S`: worth 1 on `S` only.
    Identity,
    /// `u_S`: worth 1 on supersets of `S`.
    Unanimity,
    /// `w_S`: `e_S` when `|S| < k`, `u_S` otherwise.
    Hybrid { k: usize },
}

/// Player-type predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlayerType {
    Null,
    Nullifying,
    KNullifyingNull(usize),
    PNull(usize),
    SymmetricTo(usize),
}

fn check_players(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        Err(Error::PlayerCount(n))
    } else {
        Ok(())
    }
}

impl<T: Scalar> TuGame<T> {
    /// Builds a game from explicit entries; unlisted coalitions are worth 0.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coalition, T)>,
    {
        check_players(n)?;
        let mut worths = vec![T::zero(); 1 << n];
        let mut seen = vec![false; 1 << n];
        for (coalition, worth) in entries {
            if coalition.span() > n {
                return Err(Error::PlayerOutOfRange {
                    player: coalition.span(),
                    n,
                });
            }
            let idx = coalition.index();
            if seen[idx] {
                return Err(Error::DuplicateCoalition(coalition.to_string()));
            }
            seen[idx] = true;
            if coalition.is_empty() && !worth.is_zero() {
                return Err(Error::NonzeroEmptyWorth);
            }
            worths[idx] = worth;
        }
        Ok(TuGame { n, worths })
    }

    /// The null game `v_0`.
    pub fn null(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// Builds a game by evaluating `f` on every nonempty coalition.
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> T) -> Result<Self> {
        check_players(n)?;
        let worths = Coalition::all(n)
            .map(|c| if c.is_empty() { T::zero() } else { f(c) })
            .collect();
        Ok(TuGame { n, worths })
    }

    /// Wraps a full table indexed by coalition bits.
    pub fn from_table(n: usize, worths: Vec<T>) -> Result<Self> {
        check_players(n)?;
        if worths.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: worths.len(),
            });
        }
        if !worths[0].is_zero() {
            return Err(Error::NonzeroEmptyWorth);
        }
        Ok(TuGame { n, worths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn worth(&self, coalition: Coalition) -> &T {
        &self.worths[coalition.index()]
    }

    /// `v(N)`.
    pub fn grand_worth(&self) -> &T {
        &self.worths[self.worths.len() - 1]
    }

    pub fn table(&self) -> &[T] {
        &self.worths
    }

    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        Coalition::all(self.n)
    }

    pub fn is_null(&self) -> bool {
        self.worths.iter().all(|w| w.is_zero())
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.n {
            Err(Error::PlayerOutOfRange {
                player: player + 1,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_coalition(&self, coalition: Coalition) -> Result<()> {
        if coalition.span() > self.n {
            Err(Error::PlayerOutOfRange {
                player: coalition.span(),
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_same_n(&self, other: &TuGame<T>) -> Result<()> {
        if self.n != other.n {
            Err(Error::PlayerCountMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        check_range("k", k, 1, self.n)
    }

    /// `v(S ∪ i) − v(S)`.
    pub fn marginal_contribution(&self, player: usize, coalition: Coalition) -> Result<T> {
        self.check_player(player)?;
        self.check_coalition(coalition)?;
        if coalition.contains(player) {
            return Err(Error::PlayerInCoalition {
                player: player + 1,
                coalition: coalition.to_string(),
            });
        }
        Ok(self.marginal(player, coalition))
    }

    pub(crate) fn marginal(&self, player: usize, coalition: Coalition) -> T {
        let mut m = self.worth(coalition.with(player)).clone();
        m -= self.worth(coalition);
        m
    }

    /// Harsanyi dividend of one coalition by the alternating sum over its subsets.
    pub fn harsanyi_dividend(&self, coalition: Coalition) -> Result<T> {
        self.check_coalition(coalition)?;
        if coalition.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        Ok(alternating_sum(self, coalition, 0))
    }

    /// All dividends at once via the Möbius transform, O(n·2^n).
    /// Entry 0 (the empty coalition) is 0.
    pub fn dividends(&self) -> Vec<T> {
        let mut table = self.worths.clone();
        mobius_transform(&mut table);
        table
    }

    /// Coordinate of `v` along `w_S` in the size-`k` hybrid basis.
    pub fn lambda_coefficient(&self, coalition: Coalition, k: usize) -> Result<T> {
        self.check_coalition(coalition)?;
        if coalition.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        self.check_k(k)?;
        if coalition.size() < k {
            Ok(self.worth(coalition).clone())
        } else {
            Ok(alternating_sum(self, coalition, k))
        }
    }

    /// All hybrid-basis coordinates for `k`. Above the threshold these are the
    /// dividends of the truncated game.
    pub fn lambda_coefficients(&self, k: usize) -> Result<Vec<T>> {
        self.check_k(k)?;
        let mut table = self.truncate_below(k)?.worths;
        mobius_transform(&mut table);
        for c in self.coalitions().filter(|c| c.size() < k) {
            table[c.index()] = self.worth(c).clone();
        }
        table[0] = T::zero();
        Ok(table)
    }

    /// Rebuilds a game from unanimity coordinates (inverse of [`Self::dividends`]).
    pub fn from_dividends(n: usize, mut dividends: Vec<T>) -> Result<Self> {
        check_players(n)?;
        if dividends.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: dividends.len(),
            });
        }
        dividends[0] = T::zero();
        zeta_transform(&mut dividends);
        Ok(TuGame {
            n,
            worths: dividends,
        })
    }

    /// Rebuilds a game from hybrid-basis coordinates (inverse of
    /// [`Self::lambda_coefficients`]).
    pub fn from_lambda(n: usize, k: usize, coords: &[T]) -> Result<Self> {
        check_players(n)?;
        check_range("k", k, 1, n)?;
        if coords.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: coords.len(),
            });
        }
        let mut upper: Vec<T> = Coalition::all(n)
            .map(|c| {
                if c.size() >= k {
                    coords[c.index()].clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        zeta_transform(&mut upper);
        for c in Coalition::all(n).filter(|c| !c.is_empty() && c.size() < k) {
            upper[c.index()] = coords[c.index()].clone();
        }
        upper[0] = T::zero();
        Ok(TuGame { n, worths: upper })
    }

    /// `v*(S) = v(N) − v(N∖S)`.
    pub fn dual(&self) -> TuGame<T> {
        let full = self.worths.len() - 1;
        let grand = self.grand_worth();
        let worths = (0..self.worths.len())
            .map(|s| {
                let mut w = grand.clone();
                w -= &self.worths[full ^ s];
                w
            })
            .collect();
        TuGame { n: self.n, worths }
    }

    /// Zeroes every coalition smaller than `k`.
    pub fn truncate_below(&self, k: usize) -> Result<TuGame<T>> {
        self.check_k(k)?;
        Ok(self.map_by_size(|s, w| if s < k { T::zero() } else { w.clone() }))
    }

    /// `(v_{<k}, v_{≥k})`; the parts sum to `v`.
    pub fn split_at(&self, k: usize) -> Result<(TuGame<T>, TuGame<T>)> {
        self.check_k(k)?;
        let lower = self.map_by_size(|s, w| if s < k { w.clone() } else { T::zero() });
        Ok((lower, self.truncate_below(k)?))
    }

    /// `(B v)(S) = b_|S| · v(S)`.
    pub fn scale_by_coefficients(&self, coefficients: &EslCoefficients<T>) -> Result<TuGame<T>> {
        if coefficients.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                found: coefficients.b.len(),
            });
        }
        Ok(self.map_by_size(|s, w| {
            let mut x = w.clone();
            x *= &coefficients.b[s];
            x
        }))
    }

    fn map_by_size(&self, f: impl Fn(usize, &T) -> T) -> TuGame<T> {
        let worths = self
            .worths
            .iter()
            .enumerate()
            .map(|(bits, w)| f(Coalition::from_bits(bits as u32).size(), w))
            .collect();
        TuGame { n: self.n, worths }
    }

    /// `γ·v`.
    pub fn scaled(&self, factor: &T) -> TuGame<T> {
        let worths = self
            .worths
            .iter()
            .map(|w| {
                let mut x = w.clone();
                x *= factor;
                x
            })
            .collect();
        TuGame { n: self.n, worths }
    }

    /// `γ·u + η·w`.
    pub fn linear_combination(
        gamma: &T,
        u: &TuGame<T>,
        eta: &T,
        w: &TuGame<T>,
    ) -> Result<TuGame<T>> {
        u.check_same_n(w)?;
        Ok(&u.scaled(gamma) + &w.scaled(eta))
    }

    /// Checks `v(S) − v(S∖i) ≥ v(i)` for every `i ∈ S`; returns the first
    /// violating `(i, S)` in coalition order.
    pub fn zero_monotonic_witness(&self) -> Option<(usize, Coalition)> {
        for s in self.coalitions().skip(1) {
            for i in s.members() {
                let mut diff = self.worth(s).clone();
                diff -= self.worth(s.without(i));
                if diff < *self.worth(Coalition::singleton(i)) {
                    return Some((i, s));
                }
            }
        }
        None
    }

    pub fn is_zero_monotonic(&self) -> bool {
        self.zero_monotonic_witness().is_none()
    }

    /// Evaluates a player-type predicate exhaustively.
    pub fn player_type(&self, player: usize, probe: PlayerType) -> Result<bool> {
        self.check_player(player)?;
        let n = self.n;
        let others = self.grand().without(player);
        let result = match probe {
            PlayerType::Null => others
                .subsets()
                .all(|s| self.worth(s.with(player)) == self.worth(s)),
            PlayerType::Nullifying => others
                .subsets()
                .all(|s| self.worth(s.with(player)).is_zero()),
            PlayerType::KNullifyingNull(k) => {
                check_range("k", k, 1, n)?;
                self.is_k_nullifying_null(player, k)
            }
            PlayerType::PNull(p) => {
                if n < 2 {
                    return Err(Error::OutOfRange {
                        name: "p",
                        value: p,
                        min: 1,
                        max: 0,
                    });
                }
                check_range("p", p, 1, n - 1)?;
                let grand = self.grand_worth();
                others.subsets().all(|s| {
                    if s.size() < p && self.worth(s.with(player)) != self.worth(s) {
                        return false;
                    }
                    !(s.size() == p && self.worth(s) != grand)
                })
            }
            PlayerType::SymmetricTo(j) => {
                self.check_player(j)?;
                let rest = others.without(j);
                rest.subsets()
                    .all(|s| self.worth(s.with(player)) == self.worth(s.with(j)))
            }
        };
        Ok(result)
    }

    pub(crate) fn is_k_nullifying_null(&self, player: usize, k: usize) -> bool {
        self.grand().without(player).subsets().all(|s| {
            let with = self.worth(s.with(player));
            if s.size() < k {
                with.is_zero()
            } else {
                with == self.worth(s)
            }
        })
    }

    /// Players `i < j` that are symmetric in this game.
    pub fn symmetric_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.player_type(i, PlayerType::SymmetricTo(j)) == Ok(true) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

fn alternating_sum<T: Scalar>(v: &TuGame<T>, coalition: Coalition, min_size: usize) -> T {
    let s = coalition.size();
    let mut acc = T::zero();
    for t in coalition.subsets().filter(|t| t.size() >= min_size) {
        if (s - t.size()).is_multiple_of(2) {
            acc += v.worth(t);
        } else {
            acc -= v.worth(t);
        }
    }
    acc
}

/// In-place inverse subset-sum (Möbius) transform.
pub fn mobius_transform<T: Scalar>(table: &mut [T]) {
    T::subset_transform(table, true);
}

/// In-place subset-sum (zeta) transform.
pub fn zeta_transform<T: Scalar>(table: &mut [T]) {
    T::subset_transform(table, false);
}

/// Standard basis game on `n` players.
pub fn basis_game<T: Scalar>(n: usize, kind: BasisKind, support: Coalition) -> Result<TuGame<T>> {
    check_players(n)?;
    if support.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if support.span() > n {
        return Err(Error::PlayerOutOfRange {
            player: support.span(),
            n,
        });
    }
    let identity = match kind {
        BasisKind::Identity => true,
        BasisKind::Unanimity => false,
        BasisKind::Hybrid { k } => {
            check_range("k", k, 1, n)?;
            support.size() < k
        }
    };
    TuGame::from_fn(n, |t| {
        let hit = if identity {
            t == support
        } else {
            support.is_subset_of(t)
        };
        if hit {
            T::one()
        } else {
            T::zero()
        }
    })
}

impl<'a, T: Scalar> Add for &'a TuGame<T> {
    type Output = TuGame<T>;

    /// Pointwise sum. Panics if the player counts differ.
    fn add(self, rhs: &'a TuGame<T>) -> TuGame<T> {
        assert_eq!(self.n, rhs.n, "adding games on different player sets");
        let worths = self
            .worths
            .iter()
            .zip(&rhs.worths)
            .map(|(a, b)| {
                let mut x = a.clone();
                x += b;
                x
            })
            .collect();
        TuGame { n: self.n, worths }
    }
}

impl<'a, T: Scalar> Sub for &'a TuGame<T> {
    type Output = TuGame<T>;

    fn sub(self, rhs: &'a TuGame<T>) -> TuGame<T> {
        assert_eq!(self.n, rhs.n, "subtracting games on different player sets");
        let worths = self
            .worths
            .iter()
            .zip(&rhs.worths)
            .map(|(a, b)| {
                let mut x = a.clone();
                x -= b;
                x
            })
            .collect();
        TuGame { n: self.n, worths }
    }
}

impl<T: Scalar> fmt::Debug for TuGame<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TuGame(n={}", self.n)?;
        for c in self.coalitions().skip(1) {
            let w = self.worth(c);
            if !w.is_zero() {
                write!(f, ", {c}={w}")?;
            }
        }
        write!(f, ")")
    }
}

/// The vector `(b_0, …, b_n)` describing an efficient, symmetric, linear value
/// by `Φ(v) = Shapley(B v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EslCoefficients<T> {
    b: Vec<T>,
}

impl<T: Scalar> EslCoefficients<T> {
    /// Requires `b_0 = 0` and `b_n = 1`.
    pub fn new(b: Vec<T>) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::InvalidCoefficients(format!(
                "need at least b_0 and b_1, got {} entries",
                b.len()
            )));
        }
        if !b[0].is_zero() {
            return Err(Error::InvalidCoefficients(format!("b_0 = {} ≠ 0", b[0])));
        }
        let last = &b[b.len() - 1];
        if !last.is_one() {
            return Err(Error::InvalidCoefficients(format!(
                "b_{} = {} ≠ 1",
                b.len() - 1,
                last
            )));
        }
        Ok(EslCoefficients { b })
    }

    /// The step vector of the size-`k` egalitarian/marginal split:
    /// 0 below `k`, 1 from `k` on.
    pub fn step(n: usize, k: usize) -> Result<Self> {
        check_players(n)?;
        check_range("k", k, 1, n)?;
        let b = (0..=n)
            .map(|s| if s >= k { T::one() } else { T::zero() })
            .collect();
        Self::new(b)
    }

    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn get(&self, s: usize) -> &T {
        &self.b[s]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.b
    }
}
