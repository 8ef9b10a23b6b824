//! Coalitions as bit patterns and orders of entry.
//!
//! Inside the library players are 0-based bit positions. Keys in game files
//! and everything printed for humans use 1-based indices.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of players for full worth tables.
pub const MAX_PLAYERS: usize = 24;

/// A set of players encoded as a bit pattern (bit `i` = player `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    pub fn grand(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1 << player)
    }

    /// Builds a coalition from 0-based player indices.
    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |acc, p| acc | (1 << p)))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub const fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << player)
    }

    pub const fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << player))
    }

    pub const fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within the grand coalition of `n` players.
    pub fn complement(self, n: usize) -> Self {
        Coalition(Coalition::grand(n).0 & !self.0)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Highest player index + 1, i.e. the least `n` this coalition fits in.
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, the empty set included, in decreasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(self.0),
        }
    }

    /// All `2^n` coalitions in bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        (0..1u32 << n).map(Coalition)
    }

    /// Parses a file key such as `"1,3"`: ascending 1-based indices. The empty
    /// string is the empty coalition.
    pub fn parse_key(key: &str, n: usize) -> Result<Self> {
        let trimmed = key.trim();
        if trimmed.is_empty() {
            return Ok(Coalition::EMPTY);
        }
        let mut bits = 0u32;
        let mut last = 0usize;
        for part in trimmed.split(',') {
            let player: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coalition key `{key}`")))?;
            if player == 0 || player > n {
                return Err(Error::PlayerOutOfRange { player, n });
            }
            if player <= last {
                return Err(Error::Parse(format!(
                    "coalition key `{key}` must list players in strictly ascending order"
                )));
            }
            last = player;
            bits |= 1 << (player - 1);
        }
        Ok(Coalition(bits))
    }

    /// Canonical file key (`"1,3"`).
    pub fn key(self) -> String {
        self.members()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

pub struct Subsets {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.full)
        };
        Some(Coalition(cur))
    }
}

/// An order of entry. `order[r]` is the player at 0-based rank `r`;
/// `position[p]` is the rank of player `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &p) in order.iter().enumerate() {
            if p >= n {
                return Err(Error::PlayerOutOfRange { player: p + 1, n });
            }
            if position[p] != usize::MAX {
                return Err(Error::Parse(format!(
                    "player {} appears twice in the order",
                    p + 1
                )));
            }
            position[p] = rank;
        }
        Ok(Permutation { order, position })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based rank of `player`.
    pub fn rank(&self, player: usize) -> usize {
        self.position[player]
    }

    pub fn at(&self, rank: usize) -> usize {
        self.order[rank]
    }

    /// The first `len` entrants.
    pub fn prefix(&self, len: usize) -> Coalition {
        Coalition::from_players(self.order[..len].iter().copied())
    }

    /// Players entering at rank `from` or later.
    pub fn suffix(&self, from: usize) -> Coalition {
        Coalition::from_players(self.order[from.min(self.n())..].iter().copied())
    }

    /// Players entering before `player`.
    pub fn predecessors(&self, player: usize) -> Coalition {
        self.prefix(self.position[player])
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Permutation::from_order(order).expect("reversal of a permutation")
    }

    /// All `n!` orders, lexicographically.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation::from_order(order.clone()).expect("valid order"));
            if !next_permutation(&mut order) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Advances `xs` to the next lexicographic permutation; false once the last
/// one has been passed (and `xs` is back in ascending order).
pub fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
