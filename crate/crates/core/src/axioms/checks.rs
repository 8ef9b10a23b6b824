//! Axiom instances and the checkers that find and evaluate them.
//!
//! Every checker works the same way: scan the inputs for the players (or
//! pairs) that satisfy the axiom's hypothesis, turn each into an
//! [`Instance`], and evaluate the conclusion exactly. The first failing
//! instance becomes the witness.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{PlayerType, TuGame};
use crate::io::GameFile;
use crate::scalar::Scalar;
use crate::values::ValueFunctional;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Efficiency,
    NullPlayer,
    NullifyingPlayer,
    Symmetry,
    Linearity,
    StrongMonotonicity,
    StrategicEquivalence,
    Fairness,
    Desirability,
    DifferentialMarginality,
    KNullifyingNullPlayer(usize),
    KStrategicEquivalence(usize),
    KPartialMonotonicity(usize),
    KPartialMarginality(usize),
    PNullPlayer(usize),
}

impl Axiom {
    /// Short identifier without the size parameter.
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Efficiency => "eff",
            Axiom::NullPlayer => "np",
            Axiom::NullifyingPlayer => "npp",
            Axiom::Symmetry => "sym",
            Axiom::Linearity => "lin",
            Axiom::StrongMonotonicity => "smon",
            Axiom::StrategicEquivalence => "cse",
            Axiom::Fairness => "f",
            Axiom::Desirability => "d",
            Axiom::DifferentialMarginality => "dm",
            Axiom::KNullifyingNullPlayer(_) => "knnpp",
            Axiom::KStrategicEquivalence(_) => "kcse",
            Axiom::KPartialMonotonicity(_) => "kpmon",
            Axiom::KPartialMarginality(_) => "kpm",
            Axiom::PNullPlayer(_) => "pnull",
        }
    }

    pub fn parameter(self) -> Option<usize> {
        match self {
            Axiom::KNullifyingNullPlayer(k)
            | Axiom::KStrategicEquivalence(k)
            | Axiom::KPartialMonotonicity(k)
            | Axiom::KPartialMarginality(k)
            | Axiom::PNullPlayer(k) => Some(k),
            _ => None,
        }
    }

    /// Parses an identifier, filling in `k` for the size-dependent axioms
    /// (`pnull` reads its parameter as `p`).
    pub fn parse(id: &str, k: usize) -> Result<Axiom> {
        Ok(match id.to_ascii_lowercase().as_str() {
            "eff" => Axiom::Efficiency,
            "np" => Axiom::NullPlayer,
            "npp" => Axiom::NullifyingPlayer,
            "sym" => Axiom::Symmetry,
            "lin" => Axiom::Linearity,
            "smon" => Axiom::StrongMonotonicity,
            "cse" => Axiom::StrategicEquivalence,
            "f" => Axiom::Fairness,
            "d" => Axiom::Desirability,
            "dm" => Axiom::DifferentialMarginality,
            "knnpp" => Axiom::KNullifyingNullPlayer(k),
            "kcse" => Axiom::KStrategicEquivalence(k),
            "kpmon" => Axiom::KPartialMonotonicity(k),
            "kpm" => Axiom::KPartialMarginality(k),
            "pnull" => Axiom::PNullPlayer(k),
            other => return Err(Error::Parse(format!("unknown axiom `{other}`"))),
        })
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(k) => write!(f, "{}({k})", self.id()),
            None => f.write_str(self.id()),
        }
    }
}

impl FromStr for Axiom {
    type Err = Error;

    /// Accepts `eff`, `knnpp(2)` and the like.
    fn from_str(s: &str) -> Result<Axiom> {
        let s = s.trim();
        match s.split_once('(') {
            Some((id, rest)) => {
                let k = rest
                    .strip_suffix(')')
                    .and_then(|k| k.trim().parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad axiom `{s}`")))?;
                Axiom::parse(id, k)
            }
            None => Axiom::parse(s, 0).and_then(|a| match a.parameter() {
                Some(_) => Err(Error::Parse(format!(
                    "axiom `{s}` needs a parameter, e.g. `{s}(2)`"
                ))),
                None => Ok(a),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtLeast,
}

impl Relation {
    fn holds<T: Scalar>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Equal => lhs == rhs,
            Relation::AtLeast => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::AtLeast => ">=",
        }
    }
}

/// One concrete case of an axiom whose hypothesis holds.
///
/// `games`, `players` and `scalars` are laid out per axiom:
/// single-game axioms use `[v]`; pair axioms use `[v, w]`; linearity uses
/// `[u, w]` with scalars `[γ, η]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<T: Scalar> {
    pub axiom: Axiom,
    pub games: Vec<TuGame<T>>,
    pub players: Vec<usize>,
    pub scalars: Vec<T>,
    pub note: String,
}

impl<T: Scalar> Instance<T> {
    fn new(axiom: Axiom, games: Vec<TuGame<T>>, players: Vec<usize>) -> Self {
        Instance {
            axiom,
            games,
            players,
            scalars: Vec::new(),
            note: String::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Both sides of the conclusion and the relation required between them.
    pub fn conclusion<F: ValueFunctional<T> + ?Sized>(&self, phi: &F) -> Result<(T, T, Relation)> {
        let eval = |g: &TuGame<T>| phi.evaluate(g);
        let diff = |a: &T, b: &T| {
            let mut x = a.clone();
            x -= b;
            x
        };
        let p = |r: usize| self.players[r];
        Ok(match self.axiom {
            Axiom::Efficiency => {
                let v = &self.games[0];
                (eval(v)?.total(), v.grand_worth().clone(), Relation::Equal)
            }
            Axiom::Symmetry => {
                let x = eval(&self.games[0])?;
                (x[p(0)].clone(), x[p(1)].clone(), Relation::Equal)
            }
            Axiom::Desirability => {
                let x = eval(&self.games[0])?;
                (x[p(0)].clone(), x[p(1)].clone(), Relation::AtLeast)
            }
            Axiom::NullPlayer
            | Axiom::NullifyingPlayer
            | Axiom::KNullifyingNullPlayer(_)
            | Axiom::PNullPlayer(_) => (
                eval(&self.games[0])?[p(0)].clone(),
                T::zero(),
                Relation::Equal,
            ),
            Axiom::Linearity => {
                let (u, w) = (&self.games[0], &self.games[1]);
                let (gamma, eta) = (&self.scalars[0], &self.scalars[1]);
                let combined = TuGame::linear_combination(gamma, u, eta, w)?;
                let mut rhs = eval(u)?[p(0)].clone();
                rhs *= gamma;
                let mut tail = eval(w)?[p(0)].clone();
                tail *= eta;
                rhs += &tail;
                (eval(&combined)?[p(0)].clone(), rhs, Relation::Equal)
            }
            Axiom::StrategicEquivalence | Axiom::KStrategicEquivalence(_) => {
                let (v, w) = (&self.games[0], &self.games[1]);
                (
                    eval(&(v + w))?[p(0)].clone(),
                    eval(v)?[p(0)].clone(),
                    Relation::Equal,
                )
            }
            Axiom::StrongMonotonicity | Axiom::KPartialMonotonicity(_) => {
                let (v, w) = (&self.games[0], &self.games[1]);
                (
                    eval(v)?[p(0)].clone(),
                    eval(w)?[p(0)].clone(),
                    Relation::AtLeast,
                )
            }
            Axiom::KPartialMarginality(_) => {
                let (v, w) = (&self.games[0], &self.games[1]);
                (
                    eval(v)?[p(0)].clone(),
                    eval(w)?[p(0)].clone(),
                    Relation::Equal,
                )
            }
            Axiom::Fairness => {
                let (v, w) = (&self.games[0], &self.games[1]);
                let (before, after) = (eval(v)?, eval(&(v + w))?);
                (
                    diff(&after[p(0)], &before[p(0)]),
                    diff(&after[p(1)], &before[p(1)]),
                    Relation::Equal,
                )
            }
            Axiom::DifferentialMarginality => {
                let (x, y) = (eval(&self.games[0])?, eval(&self.games[1])?);
                (
                    diff(&x[p(0)], &x[p(1)]),
                    diff(&y[p(0)], &y[p(1)]),
                    Relation::Equal,
                )
            }
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "games": self.games.iter().map(|g| GameFile::from_game(g).to_json()).collect::<Vec<_>>(),
            "players": self.players.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "scalars": self.scalars.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "note": self.note,
        })
    }
}

/// A failing instance with both sides of the conclusion as evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T: Scalar> {
    pub instance: Instance<T>,
    pub lhs: T,
    pub rhs: T,
    pub relation: Relation,
    pub seed: Option<u64>,
}

impl<T: Scalar> Witness<T> {
    /// Re-evaluates the instance; true when it reproduces the same failure.
    pub fn replay<F: ValueFunctional<T> + ?Sized>(&self, phi: &F) -> Result<bool> {
        let (lhs, rhs, relation) = self.instance.conclusion(phi)?;
        Ok(lhs == self.lhs
            && rhs == self.rhs
            && relation == self.relation
            && !relation.holds(&lhs, &rhs))
    }

    /// `lhs − rhs`.
    pub fn discrepancy(&self) -> T {
        let mut x = self.lhs.clone();
        x -= &self.rhs;
        x
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance.to_json(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "relation": self.relation.symbol(),
            "seed": self.seed,
        })
    }
}

impl<T: Scalar> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let players: Vec<String> = self
            .instance
            .players
            .iter()
            .map(|p| (p + 1).to_string())
            .collect();
        write!(
            f,
            "players [{}]: {} {} {} fails",
            players.join(","),
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )?;
        if !self.instance.note.is_empty() {
            write!(f, " ({})", self.instance.note)?;
        }
        if let Some(seed) = self.seed {
            write!(f, " [seed {seed}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every exercised instance satisfied the conclusion.
    HoldsOnSample,
    Violated,
    /// No input met the hypothesis.
    NotExercised,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsOnSample => "holds-on-sample",
            Verdict::Violated => "violated",
            Verdict::NotExercised => "not-exercised",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<T: Scalar> {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub witness: Option<Witness<T>>,
    /// Instances whose conclusion was evaluated.
    pub exercised: usize,
    /// Instances skipped because the value is undefined there.
    pub undefined: usize,
    pub seeds: Vec<u64>,
}

impl<T: Scalar> AxiomReport<T> {
    pub fn empty(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            verdict: Verdict::NotExercised,
            witness: None,
            exercised: 0,
            undefined: 0,
            seeds: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSample
    }

    pub fn violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// Tags the report (and its witness) with the seed that produced its inputs.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seeds = vec![seed];
        if let Some(w) = &mut self.witness {
            w.seed = Some(seed);
        }
        self
    }

    /// Combines two reports on the same axiom; the first witness wins.
    pub fn merge(mut self, other: AxiomReport<T>) -> Self {
        debug_assert_eq!(self.axiom, other.axiom);
        self.exercised += other.exercised;
        self.undefined += other.undefined;
        self.seeds.extend(other.seeds);
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.verdict = if self.witness.is_some() {
            Verdict::Violated
        } else if self.exercised > 0 {
            Verdict::HoldsOnSample
        } else {
            Verdict::NotExercised
        };
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.axiom.to_string(),
            "verdict": self.verdict.as_str(),
            "witness": self.witness.as_ref().map(|w| w.to_json()),
            "exercised": self.exercised,
            "undefined": self.undefined,
            "seeds": self.seeds,
        })
    }
}

/// Evaluates instances in order and stops at the first failure.
pub fn check_instances<T, F>(
    axiom: Axiom,
    phi: &F,
    instances: Vec<Instance<T>>,
) -> Result<AxiomReport<T>>
where
    T: Scalar,
    F: ValueFunctional<T> + ?Sized,
{
    let mut report = AxiomReport::empty(axiom);
    for instance in instances {
        match instance.conclusion(phi) {
            Ok((lhs, rhs, relation)) => {
                report.exercised += 1;
                if !relation.holds(&lhs, &rhs) {
                    report.witness = Some(Witness {
                        instance,
                        lhs,
                        rhs,
                        relation,
                        seed: None,
                    });
                    report.verdict = Verdict::Violated;
                    return Ok(report);
                }
            }
            Err(Error::ZeroDenominator) => report.undefined += 1,
            Err(e) => return Err(e),
        }
    }
    if report.exercised > 0 {
        report.verdict = Verdict::HoldsOnSample;
    }
    Ok(report)
}

pub fn check_efficiency<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    v: &TuGame<T>,
) -> Result<AxiomReport<T>> {
    check_instances(
        Axiom::Efficiency,
        phi,
        vec![Instance::new(Axiom::Efficiency, vec![v.clone()], vec![])],
    )
}

pub fn check_symmetry<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    v: &TuGame<T>,
) -> Result<AxiomReport<T>> {
    let instances = v
        .symmetric_pairs()
        .into_iter()
        .map(|(i, j)| Instance::new(Axiom::Symmetry, vec![v.clone()], vec![i, j]))
        .collect();
    check_instances(Axiom::Symmetry, phi, instances)
}

/// Checks `Φ_i(γu + ηw) = γΦ_i(u) + ηΦ_i(w)` for every player of every tuple.
pub fn check_linearity<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    sample: &[(TuGame<T>, TuGame<T>, T, T)],
) -> Result<AxiomReport<T>> {
    let mut instances = Vec::new();
    for (u, w, gamma, eta) in sample {
        u.check_same_n(w)?;
        for i in 0..u.n() {
            let mut inst = Instance::new(Axiom::Linearity, vec![u.clone(), w.clone()], vec![i]);
            inst.scalars = vec![gamma.clone(), eta.clone()];
            instances.push(inst);
        }
    }
    check_instances(Axiom::Linearity, phi, instances)
}

/// The single-game player axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlayerAxiom {
    Null,
    Nullifying,
    KNullifyingNull(usize),
    PNull(usize),
}

/// Every player of the given type must receive 0.
pub fn check_player_axiom<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    v: &TuGame<T>,
    kind: PlayerAxiom,
) -> Result<AxiomReport<T>> {
    let (axiom, probe) = match kind {
        PlayerAxiom::Null => (Axiom::NullPlayer, PlayerType::Null),
        PlayerAxiom::Nullifying => (Axiom::NullifyingPlayer, PlayerType::Nullifying),
        PlayerAxiom::KNullifyingNull(k) => (
            Axiom::KNullifyingNullPlayer(k),
            PlayerType::KNullifyingNull(k),
        ),
        PlayerAxiom::PNull(p) => (Axiom::PNullPlayer(p), PlayerType::PNull(p)),
    };
    let mut instances = Vec::new();
    for i in 0..v.n() {
        if v.player_type(i, probe)? {
            instances.push(Instance::new(axiom, vec![v.clone()], vec![i]));
        }
    }
    check_instances(axiom, phi, instances)
}

/// `Φ_i(v + w) = Φ_i(v)` for every k-nullifying null player `i` of `w`.
pub fn check_kcse<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    k: usize,
    v: &TuGame<T>,
    w: &TuGame<T>,
) -> Result<AxiomReport<T>> {
    v.check_same_n(w)?;
    let axiom = Axiom::KStrategicEquivalence(k);
    let mut instances = Vec::new();
    for i in 0..w.n() {
        if w.player_type(i, PlayerType::KNullifyingNull(k))? {
            instances.push(Instance::new(axiom, vec![v.clone(), w.clone()], vec![i]));
        }
    }
    check_instances(axiom, phi, instances)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialVariant {
    /// k-partial monotonicity: conclude `Φ_i(v) ≥ Φ_i(w)`.
    Mon,
    /// k-partial marginality: conclude `Φ_i(v) = Φ_i(w)`.
    Marg,
}

/// Which k-partial hypotheses hold for one player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialHypotheses {
    /// (i): marginals on every `S ∌ i` with `s ≥ k` compare as required.
    pub marginals: bool,
    /// (ii): worths `v(S ∪ i)` for every `S ∌ i` with `s < k` compare as required.
    pub small_worths: bool,
}

impl PartialHypotheses {
    pub fn both(self) -> bool {
        self.marginals && self.small_worths
    }
}

pub fn partial_hypotheses<T: Scalar>(
    k: usize,
    v: &TuGame<T>,
    w: &TuGame<T>,
    player: usize,
    variant: PartialVariant,
) -> PartialHypotheses {
    let cmp = |a: &T, b: &T| match variant {
        PartialVariant::Mon => a >= b,
        PartialVariant::Marg => a == b,
    };
    let mut h = PartialHypotheses {
        marginals: true,
        small_worths: true,
    };
    for s in v.grand().without(player).subsets() {
        if s.size() >= k {
            h.marginals &= cmp(&v.marginal(player, s), &w.marginal(player, s));
        } else {
            let t = s.with(player);
            h.small_worths &= cmp(v.worth(t), w.worth(t));
        }
    }
    h
}

/// k-partial monotonicity or marginality between `v` and `w`. A player is
/// exercised when both hypotheses hold; each instance notes them.
pub fn check_partial_monotonicity<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    k: usize,
    v: &TuGame<T>,
    w: &TuGame<T>,
    variant: PartialVariant,
) -> Result<AxiomReport<T>> {
    v.check_same_n(w)?;
    v.check_k(k)?;
    let axiom = match variant {
        PartialVariant::Mon => Axiom::KPartialMonotonicity(k),
        PartialVariant::Marg => Axiom::KPartialMarginality(k),
    };
    let mut instances = Vec::new();
    for i in 0..v.n() {
        let h = partial_hypotheses(k, v, w, i, variant);
        if h.both() {
            instances.push(
                Instance::new(axiom, vec![v.clone(), w.clone()], vec![i])
                    .with_note("hypotheses (i) and (ii) hold"),
            );
        }
    }
    check_instances(axiom, phi, instances)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FairnessVariant {
    F,
    DM,
}

/// F: pairs symmetric in `w`, comparing the payoff changes from `v` to
/// `v + w`. DM: pairs with `v(S∪i) − v(S∪j) = w(S∪i) − w(S∪j)` throughout,
/// comparing `Φ_i − Φ_j` across the two games.
pub fn check_fairness_dm<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    v: &TuGame<T>,
    w: &TuGame<T>,
    variant: FairnessVariant,
) -> Result<AxiomReport<T>> {
    v.check_same_n(w)?;
    let n = v.n();
    let axiom = match variant {
        FairnessVariant::F => Axiom::Fairness,
        FairnessVariant::DM => Axiom::DifferentialMarginality,
    };
    let mut instances = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let hypothesis = match variant {
                FairnessVariant::F => w.player_type(i, PlayerType::SymmetricTo(j))?,
                FairnessVariant::DM => same_pair_differences(v, w, i, j),
            };
            if hypothesis {
                instances.push(Instance::new(axiom, vec![v.clone(), w.clone()], vec![i, j]));
            }
        }
    }
    check_instances(axiom, phi, instances)
}

fn same_pair_differences<T: Scalar>(v: &TuGame<T>, w: &TuGame<T>, i: usize, j: usize) -> bool {
    v.grand().without(i).without(j).subsets().all(|s| {
        let mut dv = v.worth(s.with(i)).clone();
        dv -= v.worth(s.with(j));
        let mut dw = w.worth(s.with(i)).clone();
        dw -= w.worth(s.with(j));
        dv == dw
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicVariant {
    /// `m_i^v ≥ m_i^w` everywhere implies `Φ_i(v) ≥ Φ_i(w)`.
    SMon,
    /// `i` null in `w` implies `Φ_i(v + w) = Φ_i(v)`.
    CSE,
    /// `v(S∪i) ≥ v(S∪j)` everywhere implies `Φ_i(v) ≥ Φ_j(v)`; `w` is unused.
    Desirability,
}

pub fn check_classic_monotonicity<T: Scalar, F: ValueFunctional<T> + ?Sized>(
    phi: &F,
    v: &TuGame<T>,
    w: &TuGame<T>,
    variant: ClassicVariant,
) -> Result<AxiomReport<T>> {
    v.check_same_n(w)?;
    let n = v.n();
    let mut instances = Vec::new();
    let axiom = match variant {
        ClassicVariant::SMon => {
            for i in 0..n {
                let dominates = v
                    .grand()
                    .without(i)
                    .subsets()
                    .all(|s| v.marginal(i, s) >= w.marginal(i, s));
                if dominates {
                    instances.push(Instance::new(
                        Axiom::StrongMonotonicity,
                        vec![v.clone(), w.clone()],
                        vec![i],
                    ));
                }
            }
            Axiom::StrongMonotonicity
        }
        ClassicVariant::CSE => {
            for i in 0..n {
                if w.player_type(i, PlayerType::Null)? {
                    instances.push(Instance::new(
                        Axiom::StrategicEquivalence,
                        vec![v.clone(), w.clone()],
                        vec![i],
                    ));
                }
            }
            Axiom::StrategicEquivalence
        }
        ClassicVariant::Desirability => {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let desirable = v
                        .grand()
                        .without(i)
                        .without(j)
                        .subsets()
                        .all(|s| v.worth(s.with(i)) >= v.worth(s.with(j)));
                    if desirable {
                        instances.push(
                            Instance::new(Axiom::Desirability, vec![v.clone()], vec![i, j])
                                .with_note(format!("v(S∪{}) ≥ v(S∪{}) for all S", i + 1, j + 1)),
                        );
                    }
                }
            }
            Axiom::Desirability
        }
    };
    check_instances(axiom, phi, instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{u12, v0, v2};
    use crate::scalar::rat;
    use crate::values::{Counterexample, Functional};
    use crate::{basis_game, BasisKind, Coalition, Game, Rational};

    fn ksed(k: usize) -> Functional<Rational> {
        Functional::KSed(k)
    }

    #[test]
    fn efficiency_examples() {
        assert!(check_efficiency(&Functional::Shapley, &v0())
            .unwrap()
            .holds());
        let r =
            check_efficiency(&Functional::Counterexample(Counterexample::Phi1, 2), &v0()).unwrap();
        assert!(r.violated());
        let w = r.witness.unwrap();
        assert_eq!(w.discrepancy(), w.lhs.clone() - rat(18, 1));
        assert!(check_efficiency(&Functional::EqualDivision, &u12())
            .unwrap()
            .holds());
    }

    #[test]
    fn symmetry_examples() {
        assert!(check_symmetry(&ksed(2), &u12()).unwrap().holds());
        let r =
            check_symmetry(&Functional::Counterexample(Counterexample::Psi6, 2), &u12()).unwrap();
        assert!(r.violated());
        assert_eq!(r.witness.as_ref().unwrap().lhs, rat(5, 2));
        let w12: Game = basis_game(
            3,
            BasisKind::Hybrid { k: 2 },
            Coalition::from_players([0, 1]),
        )
        .unwrap();
        assert!(
            check_symmetry(&Functional::Counterexample(Counterexample::Phi4, 2), &w12)
                .unwrap()
                .violated()
        );
    }

    #[test]
    fn linearity_examples() {
        let sample = vec![(v0(), u12(), rat(2, 3), rat(-5, 2))];
        assert!(check_linearity(&ksed(2), &sample).unwrap().holds());
        assert!(check_linearity(&Functional::Shapley, &sample)
            .unwrap()
            .holds());
        let sample = vec![(v0(), v2_like(), rat(1, 1), rat(1, 1))];
        assert!(check_linearity(
            &Functional::Counterexample(Counterexample::Phi2, 2),
            &sample
        )
        .unwrap()
        .violated());
    }

    fn v2_like() -> Game {
        Game::new(
            3,
            [
                (Coalition::from_players([1, 2]), rat(4, 1)),
                (Coalition::grand(3), rat(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn player_axiom_examples() {
        assert!(
            check_player_axiom(&ksed(2), &u12(), PlayerAxiom::KNullifyingNull(2))
                .unwrap()
                .holds()
        );
        let r = check_player_axiom(
            &Functional::EqualDivision,
            &u12(),
            PlayerAxiom::KNullifyingNull(1),
        )
        .unwrap();
        assert!(r.violated());
        assert_eq!(r.witness.unwrap().lhs, rat(1, 3));
    }

    #[test]
    fn kcse_example() {
        let w = u12().scaled(&rat(5, 1));
        let r = check_kcse(&ksed(2), 2, &v0(), &w).unwrap();
        assert!(r.holds());
        assert_eq!(r.exercised, 1);
    }

    #[test]
    fn partial_monotonicity_examples() {
        let v = v0();
        let t = v.truncate_below(2).unwrap();
        assert!(
            check_partial_monotonicity(&ksed(2), 2, &v, &t, PartialVariant::Marg)
                .unwrap()
                .holds()
        );
        assert!(
            check_partial_monotonicity(&ksed(2), 2, &v, &v, PartialVariant::Mon)
                .unwrap()
                .holds()
        );
        // Same marginals for player 1, but the grand worth falls.
        let w = Game::new(2, [(Coalition::grand(2), rat(2, 1))]).unwrap();
        let v = Game::new(2, [(Coalition::singleton(1), rat(-2, 1))]).unwrap();
        let r =
            check_partial_monotonicity(&Functional::EqualDivision, 1, &v, &w, PartialVariant::Mon)
                .unwrap();
        assert!(r.violated());
        assert_eq!(r.witness.unwrap().instance.players, vec![0]);
    }

    #[test]
    fn fairness_examples() {
        assert!(
            check_fairness_dm(&ksed(2), &v0(), &u12(), FairnessVariant::F)
                .unwrap()
                .holds()
        );
        assert!(
            check_fairness_dm(&Functional::Shapley, &v0(), &u12(), FairnessVariant::F)
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn classic_monotonicity_examples() {
        let w = v2();
        let v = &w + &basis_game(2, BasisKind::Unanimity, Coalition::from_players([0, 1])).unwrap();
        assert!(
            check_classic_monotonicity(&Functional::Shapley, &v, &w, ClassicVariant::SMon)
                .unwrap()
                .holds()
        );
        // Player 1's marginals are unchanged while the grand worth drops.
        let w = Game::new(2, [(Coalition::grand(2), rat(2, 1))]).unwrap();
        let v = Game::new(2, [(Coalition::singleton(1), rat(-2, 1))]).unwrap();
        assert!(
            check_classic_monotonicity(&ksed(2), &v, &w, ClassicVariant::SMon)
                .unwrap()
                .violated()
        );
        let null_in_w = u12().scaled(&rat(3, 1));
        assert!(check_classic_monotonicity(
            &Functional::Shapley,
            &v0(),
            &null_in_w,
            ClassicVariant::CSE
        )
        .unwrap()
        .holds());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in [
            Axiom::Efficiency,
            Axiom::KPartialMarginality(3),
            Axiom::DifferentialMarginality,
        ] {
            assert_eq!(a.to_string().parse::<Axiom>().unwrap(), a);
        }
        assert!("knnpp".parse::<Axiom>().is_err());
        assert!("bogus".parse::<Axiom>().is_err());
    }

    #[test]
    fn witnesses_replay() {
        let phi = Functional::Counterexample(Counterexample::Psi6, 2);
        let r = check_symmetry(&phi, &u12()).unwrap();
        assert!(r.witness.unwrap().replay(&phi).unwrap());
    }
}
