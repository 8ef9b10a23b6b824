//! Stages 1, 2 and 4: bids over thresholds and orders, winner selection and
//! the net transfers.

use rayon::prelude::*;

use crate::coalition::Permutation;
use crate::error::{Error, Result};
use crate::game::TuGame;
use crate::scalar::Scalar;
use crate::values::{check_shape, Allocation, ProbabilityVector};

use super::bargaining::{stage3_spne, Interpretation, EXPECTATION_LIMIT};

/// Largest `n` for which [`deviation_check`] runs.
pub const DEVIATION_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct MechanismConfig<T> {
    /// Distribution over the threshold `k ∈ 1..=n`.
    pub alpha: ProbabilityVector<T>,
    pub interpretation: Interpretation,
}

impl<T: Scalar> MechanismConfig<T> {
    pub fn new(alpha: ProbabilityVector<T>, interpretation: Interpretation) -> Self {
        MechanismConfig {
            alpha,
            interpretation,
        }
    }

    /// Thresholds with positive weight; stage 1 bids range over these.
    pub fn thresholds(&self) -> Vec<usize> {
        self.alpha.support().map(|(k, _)| k).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        check_shape(&self.alpha, 1, n, "α over k = 1..n")?;
        if n > EXPECTATION_LIMIT {
            return Err(Error::TooManyPlayers {
                n,
                limit: EXPECTATION_LIMIT,
                what: "the bidding mechanism",
            });
        }
        Ok(())
    }
}

/// Every player's bids. Stage-1 bids must satisfy `Σ_k α_k h_k = 0` and
/// stage-2 bids `Σ_π h_π = 0`, per player.
#[derive(Clone, Debug, PartialEq)]
pub struct BidProfile<T> {
    pub thresholds: Vec<usize>,
    pub orders: Vec<Permutation>,
    /// `threshold_bids[i][a]` is player `i`'s bid on `thresholds[a]`.
    pub threshold_bids: Vec<Vec<T>>,
    /// `order_bids[i][o]` is player `i`'s bid on `orders[o]`.
    pub order_bids: Vec<Vec<T>>,
}

impl<T: Scalar> BidProfile<T> {
    /// All-zero bids.
    pub fn zero(n: usize, config: &MechanismConfig<T>) -> Self {
        let thresholds = config.thresholds();
        let orders = Permutation::all(n);
        BidProfile {
            threshold_bids: vec![vec![T::zero(); thresholds.len()]; n],
            order_bids: vec![vec![T::zero(); orders.len()]; n],
            thresholds,
            orders,
        }
    }

    pub fn validate(&self, n: usize, config: &MechanismConfig<T>) -> Result<()> {
        let bad = |msg: String| Err(Error::BidConstraint(msg));
        if self.thresholds != config.thresholds() {
            return bad("stage-1 bids must cover exactly the support of α".into());
        }
        let orders: usize = (1..=n).product();
        if self.orders.len() != orders || self.orders.iter().any(|o| o.n() != n) {
            return bad(format!("stage-2 bids must cover all {orders} orders"));
        }
        if self.threshold_bids.len() != n || self.order_bids.len() != n {
            return bad(format!("expected bids from {n} players"));
        }
        for i in 0..n {
            if self.threshold_bids[i].len() != self.thresholds.len()
                || self.order_bids[i].len() != self.orders.len()
            {
                return bad(format!(
                    "player {} submitted the wrong number of bids",
                    i + 1
                ));
            }
            let mut weighted = T::zero();
            for (k, h) in self.thresholds.iter().zip(&self.threshold_bids[i]) {
                weighted += &(config.alpha.weight(*k).clone() * h.clone());
            }
            if !weighted.is_zero() {
                return bad(format!("player {}: Σ_k α_k h_k = {weighted}, not 0", i + 1));
            }
            let total = crate::scalar::sum(&self.order_bids[i]);
            if !total.is_zero() {
                return bad(format!("player {}: Σ_π h_π = {total}, not 0", i + 1));
            }
        }
        Ok(())
    }
}

/// Stage-3 equilibrium payoffs for every threshold in the support of `α` and
/// every order.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage3Table<T: Scalar> {
    pub thresholds: Vec<usize>,
    pub orders: Vec<Permutation>,
    /// `payoffs[a][o]` for `thresholds[a]` and `orders[o]`.
    pub payoffs: Vec<Vec<Allocation<T>>>,
}

impl<T: Scalar> Stage3Table<T> {
    pub fn compute(v: &TuGame<T>, config: &MechanismConfig<T>) -> Result<Self> {
        config.check(v.n())?;
        let thresholds = config.thresholds();
        let orders = Permutation::all(v.n());
        let payoffs = thresholds
            .iter()
            .map(|&k| {
                orders
                    .par_iter()
                    .map(|pi| stage3_spne(v, k, pi, config.interpretation).map(|t| t.payoffs))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Stage3Table {
            thresholds,
            orders,
            payoffs,
        })
    }
}

/// One `(k, π)` pair drawn from the winning sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Play<T: Scalar> {
    pub k: usize,
    pub order: Permutation,
    pub stage3: Allocation<T>,
    /// `z^i = g^i − h^i_k − h^i_π + (H_k + H_π)/n`.
    pub net: Allocation<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MechanismOutcome<T: Scalar> {
    /// `H_k`, aligned with the profile's thresholds.
    pub threshold_totals: Vec<T>,
    /// `H_π`, aligned with the profile's orders.
    pub order_totals: Vec<T>,
    pub winning_thresholds: Vec<usize>,
    pub winning_orders: Vec<Permutation>,
    pub plays: Vec<Play<T>>,
    /// Net payoffs averaged uniformly over the winning pairs.
    pub payoffs: Allocation<T>,
}

fn column_totals<T: Scalar>(bids: &[Vec<T>], len: usize) -> Vec<T> {
    let mut totals = vec![T::zero(); len];
    for row in bids {
        for (t, b) in totals.iter_mut().zip(row) {
            *t += b;
        }
    }
    totals
}

fn argmax<T: Scalar>(xs: &[T]) -> Vec<usize> {
    let mut best: Option<&T> = None;
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        match best {
            Some(b) if x < b => {}
            Some(b) if x == b => out.push(i),
            _ => {
                best = Some(x);
                out.clear();
                out.push(i);
            }
        }
    }
    out
}

fn settle<T: Scalar>(table: &Stage3Table<T>, bids: &BidProfile<T>) -> MechanismOutcome<T> {
    let n = bids.threshold_bids.len();
    let threshold_totals = column_totals(&bids.threshold_bids, bids.thresholds.len());
    let order_totals = column_totals(&bids.order_bids, bids.orders.len());
    let win_a = argmax(&threshold_totals);
    let win_o = argmax(&order_totals);
    let inv_n = T::from_ratio(1, n as u64);

    let mut plays = Vec::with_capacity(win_a.len() * win_o.len());
    let mut payoffs = Allocation::zeros(n);
    for &a in &win_a {
        for &o in &win_o {
            let g = &table.payoffs[a][o];
            let mut shared = threshold_totals[a].clone();
            shared += &order_totals[o];
            shared *= &inv_n;
            let net: Vec<T> = (0..n)
                .map(|i| {
                    let mut z = g[i].clone();
                    z -= &bids.threshold_bids[i][a];
                    z -= &bids.order_bids[i][o];
                    z += &shared;
                    z
                })
                .collect();
            let net = Allocation::new(net);
            payoffs = &payoffs + &net;
            plays.push(Play {
                k: table.thresholds[a],
                order: table.orders[o].clone(),
                stage3: g.clone(),
                net,
            });
        }
    }
    let payoffs = payoffs.scaled(&T::from_ratio(1, plays.len() as u64));
    MechanismOutcome {
        threshold_totals,
        order_totals,
        winning_thresholds: win_a.iter().map(|&a| table.thresholds[a]).collect(),
        winning_orders: win_o.iter().map(|&o| table.orders[o].clone()).collect(),
        plays,
        payoffs,
    }
}

/// Plays the mechanism with the given bids and equilibrium play in stage 3.
pub fn run_mechanism<T: Scalar>(
    v: &TuGame<T>,
    config: &MechanismConfig<T>,
    bids: &BidProfile<T>,
) -> Result<MechanismOutcome<T>> {
    let table = Stage3Table::compute(v, config)?;
    bids.validate(v.n(), config)?;
    Ok(settle(&table, bids))
}

/// Bids that make every player indifferent across thresholds and orders:
/// `h^i_k = E_π g^i_{k,π} − Σ_k' α_k' E_π g^i_{k',π}` and
/// `h^i_π = Σ_k α_k g^i_{k,π} − Σ_k α_k E_π g^i_{k,π}`.
pub fn candidate_equilibrium_bids<T: Scalar>(
    v: &TuGame<T>,
    config: &MechanismConfig<T>,
) -> Result<BidProfile<T>> {
    let table = Stage3Table::compute(v, config)?;
    Ok(candidate_from_table(v.n(), config, &table))
}

fn candidate_from_table<T: Scalar>(
    n: usize,
    config: &MechanismConfig<T>,
    table: &Stage3Table<T>,
) -> BidProfile<T> {
    let orders = table.orders.len();
    let inv_orders = T::from_ratio(1, orders as u64);
    let alphas: Vec<T> = table
        .thresholds
        .iter()
        .map(|&k| config.alpha.weight(k).clone())
        .collect();

    // expected[a][i] = E_π g^i_{k_a, π}
    let expected: Vec<Vec<T>> = table
        .payoffs
        .iter()
        .map(|row| {
            let mut acc = Allocation::zeros(n);
            for g in row {
                acc = &acc + g;
            }
            acc.scaled(&inv_orders).into_vec()
        })
        .collect();
    let mixed: Vec<T> = (0..n)
        .map(|i| {
            let mut m = T::zero();
            for (a, w) in alphas.iter().enumerate() {
                m += &(w.clone() * expected[a][i].clone());
            }
            m
        })
        .collect();

    let threshold_bids = (0..n)
        .map(|i| {
            (0..table.thresholds.len())
                .map(|a| expected[a][i].clone() - mixed[i].clone())
                .collect()
        })
        .collect();
    let order_bids = (0..n)
        .map(|i| {
            (0..orders)
                .map(|o| {
                    let mut g = T::zero();
                    for (a, w) in alphas.iter().enumerate() {
                        g += &(w.clone() * table.payoffs[a][o][i].clone());
                    }
                    g - mixed[i].clone()
                })
                .collect()
        })
        .collect();
    BidProfile {
        thresholds: table.thresholds.clone(),
        orders: table.orders.clone(),
        threshold_bids,
        order_bids,
    }
}

/// A single bid moved by `delta`, with the player's other bids shifted so
/// the profile still meets its constraint.
#[derive(Clone, Debug, PartialEq)]
pub enum BidCoordinate {
    Threshold(usize),
    Order(Permutation),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Deviation<T: Scalar> {
    pub player: usize,
    pub coordinate: BidCoordinate,
    pub delta: T,
    pub payoff: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeviationReport<T: Scalar> {
    pub baseline: Allocation<T>,
    /// Highest-paying deviation found for each player.
    pub best: Vec<Option<Deviation<T>>>,
}

impl<T: Scalar> DeviationReport<T> {
    /// Deviations that strictly beat the baseline payoff.
    pub fn profitable(&self) -> Vec<&Deviation<T>> {
        self.best
            .iter()
            .flatten()
            .filter(|d| d.payoff > self.baseline[d.player])
            .collect()
    }
}

fn deviate<T: Scalar>(
    bids: &BidProfile<T>,
    config: &MechanismConfig<T>,
    player: usize,
    coordinate: &BidCoordinate,
    delta: &T,
) -> BidProfile<T> {
    let mut out = bids.clone();
    match coordinate {
        BidCoordinate::Threshold(k) => {
            let a = bids
                .thresholds
                .iter()
                .position(|t| t == k)
                .expect("threshold in support");
            let shift = config.alpha.weight(*k).clone() * delta.clone();
            for h in out.threshold_bids[player].iter_mut() {
                *h -= &shift;
            }
            out.threshold_bids[player][a] += delta;
        }
        BidCoordinate::Order(pi) => {
            let o = bids
                .orders
                .iter()
                .position(|p| p == pi)
                .expect("order listed");
            let shift = delta.clone() * T::from_ratio(1, bids.orders.len() as u64);
            for h in out.order_bids[player].iter_mut() {
                *h -= &shift;
            }
            out.order_bids[player][o] += delta;
        }
    }
    out
}

/// Tries every single-coordinate deviation from `bids` by each step in
/// `grid`, holding the other players' bids fixed.
pub fn deviation_check<T: Scalar>(
    v: &TuGame<T>,
    config: &MechanismConfig<T>,
    bids: &BidProfile<T>,
    grid: &[T],
) -> Result<DeviationReport<T>> {
    let n = v.n();
    if n > DEVIATION_LIMIT {
        return Err(Error::TooManyPlayers {
            n,
            limit: DEVIATION_LIMIT,
            what: "the deviation search",
        });
    }
    let table = Stage3Table::compute(v, config)?;
    bids.validate(n, config)?;
    let baseline = settle(&table, bids).payoffs;
    let coordinates: Vec<BidCoordinate> = bids
        .thresholds
        .iter()
        .map(|&k| BidCoordinate::Threshold(k))
        .chain(bids.orders.iter().cloned().map(BidCoordinate::Order))
        .collect();

    let best = (0..n)
        .into_par_iter()
        .map(|player| {
            let mut best: Option<Deviation<T>> = None;
            for coordinate in &coordinates {
                for delta in grid.iter().filter(|d| !d.is_zero()) {
                    let moved = deviate(bids, config, player, coordinate, delta);
                    let payoff = settle(&table, &moved).payoffs[player].clone();
                    if best.as_ref().is_none_or(|b| payoff > b.payoff) {
                        best = Some(Deviation {
                            player,
                            coordinate: coordinate.clone(),
                            delta: delta.clone(),
                            payoff,
                        });
                    }
                }
            }
            best
        })
        .collect();
    Ok(DeviationReport { baseline, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{v0, v2};
    use crate::scalar::rat;
    use crate::values::{alpha_sed, shapley, sol_p};
    use crate::Rational;

    fn point(n: usize, k: usize) -> ProbabilityVector<Rational> {
        ProbabilityVector::point_mass(n, 1, k).unwrap()
    }

    #[test]
    fn candidate_bids_on_two_players() {
        let config = MechanismConfig::new(point(2, 1), Interpretation::Literal);
        let bids = candidate_equilibrium_bids(&v2(), &config).unwrap();
        bids.validate(2, &config).unwrap();
        // Player 1 proposes when it enters second, and bids up that order.
        let o21 = bids
            .orders
            .iter()
            .position(|o| o.order() == [1, 0])
            .unwrap();
        assert_eq!(bids.order_bids[0][o21], rat(1, 2));
        assert_eq!(bids.order_bids[0][1 - o21], rat(-1, 2));

        let outcome = run_mechanism(&v2(), &config, &bids).unwrap();
        assert_eq!(outcome.winning_orders.len(), 2);
        assert_eq!(outcome.payoffs, Allocation::new(vec![rat(1, 2), rat(1, 2)]));
        assert_ne!(outcome.payoffs, shapley(&v2()));
    }

    #[test]
    fn outcome_matches_the_expected_stage3_payoff() {
        let v = v0();
        let alpha =
            ProbabilityVector::over_thresholds(vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        for interpretation in [Interpretation::Literal, Interpretation::DualBeal] {
            let config = MechanismConfig::new(alpha.clone(), interpretation);
            let bids = candidate_equilibrium_bids(&v, &config).unwrap();
            let outcome = run_mechanism(&v, &config, &bids).unwrap();
            assert_eq!(outcome.payoffs.total(), rat(18, 1));
            if interpretation == Interpretation::DualBeal {
                assert_eq!(outcome.payoffs, alpha_sed(&v, &alpha).unwrap());
            }
        }
        let config = MechanismConfig::new(point(3, 1), Interpretation::Literal);
        let bids = candidate_equilibrium_bids(&v, &config).unwrap();
        let outcome = run_mechanism(&v, &config, &bids).unwrap();
        assert_eq!(outcome.payoffs, sol_p(&v, 1).unwrap());
    }

    #[test]
    fn net_transfers_balance() {
        let config = MechanismConfig::new(point(3, 2), Interpretation::DualBeal);
        let mut bids = BidProfile::zero(3, &config);
        bids.order_bids[0][0] = rat(5, 1);
        bids.order_bids[0][1] = rat(-5, 1);
        let outcome = run_mechanism(&v0(), &config, &bids).unwrap();
        assert_eq!(outcome.winning_orders.len(), 1);
        for play in &outcome.plays {
            assert_eq!(play.net.total(), play.stage3.total());
        }
    }

    #[test]
    fn constraint_violations_are_rejected() {
        let config = MechanismConfig::new(point(3, 2), Interpretation::Literal);
        let mut bids = BidProfile::zero(3, &config);
        bids.order_bids[1][3] = rat(1, 1);
        assert!(matches!(
            run_mechanism(&v0(), &config, &bids),
            Err(Error::BidConstraint(_))
        ));
    }

    #[test]
    fn no_profitable_single_bid_deviation() {
        let grid: Vec<Rational> = [-3, -1, 1, 3].iter().map(|&d| rat(d, 2)).collect();
        for interpretation in [Interpretation::Literal, Interpretation::DualBeal] {
            for (v, n) in [(v2(), 2), (v0(), 3)] {
                let config = MechanismConfig::new(point(n, 1), interpretation);
                let bids = candidate_equilibrium_bids(&v, &config).unwrap();
                let report = deviation_check(&v, &config, &bids, &grid).unwrap();
                assert!(report.profitable().is_empty(), "{:?}", report.profitable());
            }
        }
    }
}
