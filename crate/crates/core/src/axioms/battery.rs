//! Seeded axiom batteries and the independence catalogue.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::scalar::Scalar;
use crate::values::{Counterexample, Functional, ValueFunctional};

use super::checks::{
    check_classic_monotonicity, check_efficiency, check_fairness_dm, check_kcse, check_linearity,
    check_partial_monotonicity, check_player_axiom, check_symmetry, Axiom, AxiomReport,
    ClassicVariant, FairnessVariant, PartialVariant, PlayerAxiom,
};
use super::generator::{
    nonnegative_unanimity_sum, partial_monotone_increment, plant_k_nullifying_null, plant_p_null,
    random_game, random_pair, random_player, random_scalar, rng_for, symmetrize,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatteryConfig {
    pub n: usize,
    /// Number of seeded samples per axiom.
    pub games: usize,
    pub base_seed: u64,
    /// Worths are drawn from `[-range, range]`.
    pub range: i64,
}

impl BatteryConfig {
    pub fn new(n: usize, games: usize) -> Self {
        BatteryConfig {
            n,
            games,
            base_seed: 0,
            range: 9,
        }
    }

    pub fn with_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    fn seeds(&self) -> impl IndexedParallelIterator<Item = u64> {
        let base = self.base_seed;
        (0..self.games)
            .into_par_iter()
            .map(move |s| base.wrapping_add(s as u64))
    }
}

/// Draws inputs meeting the axiom's hypothesis from `seed` and checks them.
pub fn check_seeded<T, F>(
    phi: &F,
    axiom: Axiom,
    n: usize,
    range: i64,
    seed: u64,
) -> Result<AxiomReport<T>>
where
    T: Scalar,
    F: ValueFunctional<T> + ?Sized,
{
    let mut rng = rng_for(seed);
    let rng = &mut rng;
    let game = |rng: &mut rand_chacha::ChaCha8Rng| random_game::<T>(rng, n, -range, range);
    let pair = |rng: &mut rand_chacha::ChaCha8Rng| random_pair(rng, n);
    let report = match axiom {
        Axiom::Efficiency => check_efficiency(phi, &game(rng)?)?,
        Axiom::Symmetry => {
            let v = game(rng)?;
            let v = match pair(rng) {
                Some((i, j)) => symmetrize(&v, i, j)?,
                None => v,
            };
            check_symmetry(phi, &v)?
        }
        Axiom::Linearity => {
            let (u, w) = (game(rng)?, game(rng)?);
            let (gamma, eta) = (random_scalar(rng), random_scalar(rng));
            check_linearity(phi, &[(u, w, gamma, eta)])?
        }
        Axiom::NullPlayer | Axiom::NullifyingPlayer | Axiom::KNullifyingNullPlayer(_) => {
            let (kind, k) = match axiom {
                Axiom::NullPlayer => (PlayerAxiom::Null, 1),
                Axiom::NullifyingPlayer => (PlayerAxiom::Nullifying, n),
                Axiom::KNullifyingNullPlayer(k) => (PlayerAxiom::KNullifyingNull(k), k),
                _ => unreachable!(),
            };
            let i = random_player(rng, n);
            let v = plant_k_nullifying_null(&game(rng)?, i, k)?;
            check_player_axiom(phi, &v, kind)?
        }
        Axiom::PNullPlayer(p) => {
            let i = random_player(rng, n);
            let v = plant_p_null(&game(rng)?, i, p)?;
            check_player_axiom(phi, &v, PlayerAxiom::PNull(p))?
        }
        Axiom::KStrategicEquivalence(k) => {
            let v = game(rng)?;
            let i = random_player(rng, n);
            let w = plant_k_nullifying_null(&game(rng)?, i, k)?;
            check_kcse(phi, k, &v, &w)?
        }
        Axiom::StrategicEquivalence => {
            let v = game(rng)?;
            let i = random_player(rng, n);
            let w = plant_k_nullifying_null(&game(rng)?, i, 1)?;
            check_classic_monotonicity(phi, &v, &w, ClassicVariant::CSE)?
        }
        Axiom::KPartialMonotonicity(k) => {
            let w = game(rng)?;
            let i = random_player(rng, n);
            let d = partial_monotone_increment(rng, n, k, i, range)?;
            check_partial_monotonicity(phi, k, &(&w + &d), &w, PartialVariant::Mon)?
        }
        Axiom::KPartialMarginality(k) => {
            let w = game(rng)?;
            let i = random_player(rng, n);
            let d = plant_k_nullifying_null(&game(rng)?, i, k)?;
            check_partial_monotonicity(phi, k, &(&w + &d), &w, PartialVariant::Marg)?
        }
        Axiom::StrongMonotonicity => {
            let w = game(rng)?;
            let i = random_player(rng, n);
            let d = nonnegative_unanimity_sum(rng, n, range, |s| s.contains(i))?;
            check_classic_monotonicity(phi, &(&w + &d), &w, ClassicVariant::SMon)?
        }
        Axiom::Desirability => {
            let base = game(rng)?;
            let v = match pair(rng) {
                Some((i, j)) => {
                    let d = nonnegative_unanimity_sum(rng, n, range, |s| {
                        s.contains(i) && !s.contains(j)
                    })?;
                    &symmetrize(&base, i, j)? + &d
                }
                None => base,
            };
            check_classic_monotonicity(phi, &v, &v, ClassicVariant::Desirability)?
        }
        Axiom::Fairness => {
            let v = game(rng)?;
            let w = game(rng)?;
            let w = match pair(rng) {
                Some((i, j)) => symmetrize(&w, i, j)?,
                None => w,
            };
            check_fairness_dm(phi, &v, &w, FairnessVariant::F)?
        }
        Axiom::DifferentialMarginality => {
            let v = game(rng)?;
            let d = game(rng)?;
            let d = match pair(rng) {
                Some((i, j)) => symmetrize(&d, i, j)?,
                None => d,
            };
            check_fairness_dm(phi, &v, &(&v + &d), FairnessVariant::DM)?
        }
    };
    Ok(report.with_seed(seed))
}

/// Runs every axiom over `config.games` seeds. Reports come back in the
/// order of `axioms`, each merged over seeds in increasing order.
pub fn axiom_battery<T, F>(
    phi: &F,
    axioms: &[Axiom],
    config: &BatteryConfig,
) -> Result<Vec<AxiomReport<T>>>
where
    T: Scalar,
    F: ValueFunctional<T> + ?Sized,
{
    axioms
        .iter()
        .map(|&axiom| {
            let per_seed: Vec<Result<AxiomReport<T>>> = config
                .seeds()
                .map(|seed| check_seeded(phi, axiom, config.n, config.range, seed))
                .collect();
            per_seed
                .into_iter()
                .try_fold(AxiomReport::empty(axiom), |acc, r| Ok(acc.merge(r?)))
        })
        .collect()
}

/// The axiom sets that single out the k-SED value, each with a short label.
pub fn characterizations(k: usize) -> Vec<(&'static str, Vec<Axiom>)> {
    vec![
        (
            "eff+sym+lin+knnpp",
            vec![
                Axiom::Efficiency,
                Axiom::Symmetry,
                Axiom::Linearity,
                Axiom::KNullifyingNullPlayer(k),
            ],
        ),
        (
            "eff+sym+kcse",
            vec![
                Axiom::Efficiency,
                Axiom::Symmetry,
                Axiom::KStrategicEquivalence(k),
            ],
        ),
        (
            "eff+sym+kpmon+kpm",
            vec![
                Axiom::Efficiency,
                Axiom::Symmetry,
                Axiom::KPartialMonotonicity(k),
                Axiom::KPartialMarginality(k),
            ],
        ),
        (
            "eff+knnpp+f",
            vec![
                Axiom::Efficiency,
                Axiom::KNullifyingNullPlayer(k),
                Axiom::Fairness,
            ],
        ),
        (
            "eff+knnpp+dm",
            vec![
                Axiom::Efficiency,
                Axiom::KNullifyingNullPlayer(k),
                Axiom::DifferentialMarginality,
            ],
        ),
    ]
}

/// The nine axioms the k-SED value must satisfy, without repeats.
pub fn ksed_axioms(k: usize) -> Vec<Axiom> {
    vec![
        Axiom::Efficiency,
        Axiom::Symmetry,
        Axiom::Linearity,
        Axiom::KNullifyingNullPlayer(k),
        Axiom::KStrategicEquivalence(k),
        Axiom::KPartialMonotonicity(k),
        Axiom::KPartialMarginality(k),
        Axiom::Fairness,
        Axiom::DifferentialMarginality,
    ]
}

/// A value that meets every axiom of a characterizing set except one.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceCase {
    pub value: Counterexample,
    pub axioms: Vec<Axiom>,
    pub fails: Axiom,
}

/// The catalogue for threshold `k`. Equal division only appears for `k < n`,
/// since at `k = n` it is the k-SED value itself. At `k = n` no coalition
/// without `i` reaches size `k`, so `Phi1` vanishes and its normalized
/// variants (`Phi2`, `Psi2`, `Psi7`) are undefined on every game; they are
/// left out there as well.
pub fn independence_cases(n: usize, k: usize) -> Vec<IndependenceCase> {
    let sets = characterizations(k);
    let first = &sets[0].1;
    let second = &sets[1].1;
    let fourth = &sets[3].1;
    let case = |value, axioms: &Vec<Axiom>, fails| IndependenceCase {
        value,
        axioms: axioms.clone(),
        fails,
    };
    let mut cases = vec![
        case(Counterexample::Phi1, first, Axiom::Efficiency),
        case(Counterexample::Phi2, first, Axiom::Linearity),
        case(Counterexample::Phi4, first, Axiom::Symmetry),
        case(Counterexample::Psi5, second, Axiom::Efficiency),
        case(Counterexample::Psi6, second, Axiom::Symmetry),
        case(
            Counterexample::Psi7,
            second,
            Axiom::KStrategicEquivalence(k),
        ),
        case(Counterexample::Psi1, fourth, Axiom::Efficiency),
        case(Counterexample::Psi2, fourth, Axiom::Fairness),
    ];
    if k < n {
        cases.insert(
            2,
            case(Counterexample::Phi3, first, Axiom::KNullifyingNullPlayer(k)),
        );
        cases.push(case(
            Counterexample::Phi3,
            fourth,
            Axiom::KNullifyingNullPlayer(k),
        ));
    } else {
        let normalized = [
            Counterexample::Phi2,
            Counterexample::Psi2,
            Counterexample::Psi7,
        ];
        cases.retain(|c| !normalized.contains(&c.value));
    }
    cases
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceOutcome<T: Scalar> {
    pub case: IndependenceCase,
    pub k: usize,
    pub reports: Vec<AxiomReport<T>>,
}

impl<T: Scalar> IndependenceOutcome<T> {
    /// True when the designated axiom is violated and every other one holds.
    pub fn as_expected(&self) -> bool {
        self.reports.iter().all(|r| {
            if r.axiom == self.case.fails {
                r.violated()
            } else {
                r.holds()
            }
        })
    }
}

pub fn run_independence<T: Scalar>(
    k: usize,
    config: &BatteryConfig,
) -> Result<Vec<IndependenceOutcome<T>>> {
    independence_cases(config.n, k)
        .into_iter()
        .map(|case| {
            let phi = Functional::<T>::Counterexample(case.value, k);
            let reports = axiom_battery(&phi, &case.axioms, config)?;
            Ok(IndependenceOutcome { case, k, reports })
        })
        .collect()
}

/// JSON rows `{functional, k, axiom, verdict, witness?, seeds, ...}`.
pub fn battery_json<T: Scalar>(functional: &str, k: usize, reports: &[AxiomReport<T>]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                let mut row = r.to_json();
                row["functional"] = json!(functional);
                row["k"] = json!(k);
                row
            })
            .collect(),
    )
}

/// The k-SED value against [`ksed_axioms`].
pub fn ksed_battery<T: Scalar>(k: usize, config: &BatteryConfig) -> Result<Vec<AxiomReport<T>>> {
    axiom_battery(&Functional::<T>::KSed(k), &ksed_axioms(k), config)
}
