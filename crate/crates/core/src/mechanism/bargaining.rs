//! Stage 3: take-it-or-leave-it bargaining solved by backward induction.
//!
//! Both protocols are a fixed sequence of rounds. In each round one proposer
//! offers every other active player a payoff out of the round's worth; a
//! single rejection ends the round, some players leave with nothing, and the
//! survivors move to the next round. A lone survivor receives its own worth.
//! Responders accept exactly when the offer covers their continuation value.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coalition::{Coalition, Permutation};
use crate::error::{check_range, Error, Result};
use crate::game::TuGame;
use crate::scalar::Scalar;
use crate::values::Allocation;

/// Largest `n` for which the expectation over all `n!` orders is computed.
pub const EXPECTATION_LIMIT: usize = 8;

/// How the stage-3 game reads its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interpretation {
    /// The proposer sits at position `k+1`; on rejection everyone up to that
    /// position leaves, and the remaining tail bargains over its own worth.
    Literal,
    /// The head-continuation protocol with `p = n − k`, played on the dual game.
    DualBeal,
}

impl Interpretation {
    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::Literal => "literal",
            Interpretation::DualBeal => "dual-beal",
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Interpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "literal" => Ok(Interpretation::Literal),
            "dual-beal" | "dualbeal" => Ok(Interpretation::DualBeal),
            other => Err(Error::Parse(format!(
                "unknown interpretation `{other}` (expected literal or dual-beal)"
            ))),
        }
    }
}

/// One round as played on the equilibrium path.
#[derive(Clone, Debug, PartialEq)]
pub struct Round<T> {
    pub proposer: usize,
    pub active: Coalition,
    pub worth: T,
    /// `(responder, offer)` in order of entry.
    pub offers: Vec<(usize, T)>,
    /// Each responder's vote, aligned with `offers`.
    pub votes: Vec<bool>,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BargainingTranscript<T: Scalar> {
    pub rounds: Vec<Round<T>>,
    /// Player paid its own worth when bargaining ran down to it alone.
    pub lone_player: Option<usize>,
    pub payoffs: Allocation<T>,
}

impl<T: Scalar> BargainingTranscript<T> {
    /// The round whose offer was accepted, if any.
    pub fn accepted_round(&self) -> Option<&Round<T>> {
        self.rounds.iter().find(|r| r.accepted)
    }
}

struct RoundSpec<T> {
    proposer: usize,
    active: Coalition,
    worth: T,
}

/// Solves the round sequence backwards, then replays the equilibrium path.
fn solve<T: Scalar>(
    n: usize,
    specs: Vec<RoundSpec<T>>,
    lone: Option<(usize, T)>,
) -> BargainingTranscript<T> {
    let mut continuation = vec![T::zero(); n];
    if let Some((i, w)) = &lone {
        continuation[*i] = w.clone();
    }
    // Decisions and offers for each round, computed from the last round back.
    let mut plans: Vec<(Vec<(usize, T)>, bool)> = Vec::with_capacity(specs.len());
    for spec in specs.iter().rev() {
        let offers: Vec<(usize, T)> = spec
            .active
            .without(spec.proposer)
            .members()
            .map(|j| (j, continuation[j].clone()))
            .collect();
        let mut residual = spec.worth.clone();
        for (_, x) in &offers {
            residual -= x;
        }
        let accept = residual >= continuation[spec.proposer];
        if accept {
            continuation = vec![T::zero(); n];
            for (j, x) in &offers {
                continuation[*j] = x.clone();
            }
            continuation[spec.proposer] = residual;
        }
        plans.push((offers, accept));
    }
    plans.reverse();

    let mut rounds = Vec::new();
    let mut reached_end = true;
    for (spec, (offers, accept)) in specs.into_iter().zip(plans) {
        let (offers, votes) = if accept {
            let votes = vec![true; offers.len()];
            (offers, votes)
        } else {
            // Make sure the offer fails: short-change the first responder.
            let mut offers = offers;
            let mut votes = vec![true; offers.len()];
            if let Some(first) = offers.first_mut() {
                first.1 -= &T::one();
                votes[0] = false;
            }
            (offers, votes)
        };
        rounds.push(Round {
            proposer: spec.proposer,
            active: spec.active,
            worth: spec.worth,
            offers,
            votes,
            accepted: accept,
        });
        if accept {
            reached_end = false;
            break;
        }
    }
    BargainingTranscript {
        rounds,
        lone_player: if reached_end {
            lone.map(|(i, _)| i)
        } else {
            None
        },
        payoffs: Allocation::new(continuation),
    }
}

/// Rounds over a shrinking chain of `(proposer, active set)` pairs, each
/// bargaining over the active set's worth. A size-one set ends the game.
fn chain_protocol<T: Scalar>(
    v: &TuGame<T>,
    chain: Vec<(usize, Coalition)>,
) -> BargainingTranscript<T> {
    let n = v.n();
    let mut specs = Vec::new();
    let mut lone = None;
    for (proposer, active) in chain {
        let worth = v.worth(active).clone();
        if active.size() == 1 {
            lone = Some((proposer, worth));
            break;
        }
        specs.push(RoundSpec {
            proposer,
            active,
            worth,
        });
    }
    solve(n, specs, lone)
}

/// Subgame-perfect play of the stage-3 game for threshold `k` and order `π`.
pub fn stage3_spne<T: Scalar>(
    v: &TuGame<T>,
    k: usize,
    order: &Permutation,
    interpretation: Interpretation,
) -> Result<BargainingTranscript<T>> {
    v.check_k(k)?;
    check_order(v, order)?;
    match interpretation {
        Interpretation::Literal => Ok(literal_stage3(v, k, order)),
        Interpretation::DualBeal => {
            let dual = v.dual();
            Ok(beal_protocol(&dual, v.n() - k, order))
        }
    }
}

fn check_order<T: Scalar>(v: &TuGame<T>, order: &Permutation) -> Result<()> {
    if order.n() != v.n() {
        return Err(Error::PlayerCountMismatch(v.n(), order.n()));
    }
    Ok(())
}

/// Round 0: proposer at 1-based position `min(k+1, n)` over `v(N)`; after a
/// rejection positions `≤ k+1` leave and round `r` has the proposer at
/// position `k+1+r` bargaining over the worth of the remaining tail.
fn literal_stage3<T: Scalar>(
    v: &TuGame<T>,
    k: usize,
    order: &Permutation,
) -> BargainingTranscript<T> {
    let n = v.n();
    let first = k.min(n - 1);
    let mut chain = vec![(order.at(first), v.grand())];
    for rank in k + 1..n {
        chain.push((order.at(rank), order.suffix(rank)));
    }
    chain_protocol(v, chain)
}

/// The head-continuation protocol with parameter `p`: the proposer at
/// position `p+1` bargains over `v(N)`; after a rejection positions `≥ p+1`
/// leave and the prefix of length `j` bargains over its own worth with the
/// proposer at position `j`.
pub fn beal_stage3<T: Scalar>(
    v: &TuGame<T>,
    p: usize,
    order: &Permutation,
) -> Result<BargainingTranscript<T>> {
    check_range("p", p, 0, v.n() - 1)?;
    check_order(v, order)?;
    Ok(beal_protocol(v, p, order))
}

fn beal_protocol<T: Scalar>(
    v: &TuGame<T>,
    p: usize,
    order: &Permutation,
) -> BargainingTranscript<T> {
    let mut chain = vec![(order.at(p), v.grand())];
    for len in (1..=p).rev() {
        chain.push((order.at(len - 1), order.prefix(len)));
    }
    chain_protocol(v, chain)
}

fn average_over_orders<T: Scalar>(
    n: usize,
    play: impl Fn(&Permutation) -> Allocation<T> + Sync,
) -> Result<Allocation<T>> {
    if n > EXPECTATION_LIMIT {
        return Err(Error::TooManyPlayers {
            n,
            limit: EXPECTATION_LIMIT,
            what: "expectation over all orders",
        });
    }
    let orders = Permutation::all(n);
    let count = orders.len();
    let total = orders
        .par_iter()
        .map(&play)
        .reduce(|| Allocation::zeros(n), |a, b| &a + &b);
    Ok(total.scaled(&T::from_ratio(1, count as u64)))
}

/// Stage-3 payoffs averaged over all orders, each equally likely.
pub fn expected_stage3<T: Scalar>(
    v: &TuGame<T>,
    k: usize,
    interpretation: Interpretation,
) -> Result<Allocation<T>> {
    v.check_k(k)?;
    let dual = (interpretation == Interpretation::DualBeal).then(|| v.dual());
    average_over_orders(v.n(), |pi| match &dual {
        None => literal_stage3(v, k, pi).payoffs,
        Some(d) => beal_protocol(d, v.n() - k, pi).payoffs,
    })
}

/// Head-continuation payoffs averaged over all orders.
pub fn expected_beal<T: Scalar>(v: &TuGame<T>, p: usize) -> Result<Allocation<T>> {
    check_range("p", p, 0, v.n() - 1)?;
    average_over_orders(v.n(), |pi| beal_protocol(v, p, pi).payoffs)
}
