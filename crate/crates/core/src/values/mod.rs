//! Value functionals: Shapley, equal division, the k-SED family and its
//! mixtures, solidarity values, ESL values and the counterexample catalogue
//! used to show axioms are independent.

mod counterexamples;
mod ksed;
mod solidarity;
mod sums;

use std::fmt;
use std::ops::{Add, Index, Sub};

pub use counterexamples::{counterexample_value, Counterexample};
pub(crate) use ksed::check_shape;
pub use ksed::{
    alpha_sed, ksed, ksed_by_basis, ksed_by_permutations, ksed_by_split, ksed_by_truncation,
    ksed_literal_basis_formula, ksed_split_components, KSED_PERMUTATION_LIMIT,
};
pub use solidarity::{coefficients_to_beta, sol_beta, sol_p};
pub use sums::{equal_division, esl_value, shapley};

use crate::error::{Error, Result};
use crate::game::{EslCoefficients, TuGame};
use crate::scalar::Scalar;

/// A payoff vector, one entry per player.
#[derive(Clone, PartialEq)]
pub struct Allocation<T>(Vec<T>);

impl<T: Scalar> Allocation<T> {
    pub fn new(payoffs: Vec<T>) -> Self {
        Allocation(payoffs)
    }

    pub fn zeros(n: usize) -> Self {
        Allocation(vec![T::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn total(&self) -> T {
        crate::scalar::sum(&self.0)
    }

    pub fn scaled(&self, factor: &T) -> Self {
        Allocation(
            self.0
                .iter()
                .map(|x| {
                    let mut y = x.clone();
                    y *= factor;
                    y
                })
                .collect(),
        )
    }

    pub(crate) fn add_scaled(&mut self, other: &Allocation<T>, factor: &T) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            let mut x = b.clone();
            x *= factor;
            *a += &x;
        }
    }

    pub(crate) fn get_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T> Index<usize> for Allocation<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<'a, T: Scalar> Add for &'a Allocation<T> {
    type Output = Allocation<T>;

    fn add(self, rhs: &'a Allocation<T>) -> Allocation<T> {
        Allocation(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| {
                    let mut x = a.clone();
                    x += b;
                    x
                })
                .collect(),
        )
    }
}

impl<'a, T: Scalar> Sub for &'a Allocation<T> {
    type Output = Allocation<T>;

    fn sub(self, rhs: &'a Allocation<T>) -> Allocation<T> {
        Allocation(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| {
                    let mut x = a.clone();
                    x -= b;
                    x
                })
                .collect(),
        )
    }
}

impl<T: fmt::Display> fmt::Display for Allocation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Display> fmt::Debug for Allocation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Nonnegative weights summing to exactly one.
///
/// `offset` is the index of the first weight: 1 for distributions over the
/// threshold `k ∈ 1..=n`, 0 for distributions over `p ∈ 0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector<T> {
    weights: Vec<T>,
    offset: usize,
}

impl<T: Scalar> ProbabilityVector<T> {
    pub fn new(weights: Vec<T>, offset: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidWeights(format!(
                "weight at index {} is negative ({w})",
                i + offset
            )));
        }
        let total = crate::scalar::sum(&weights);
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(ProbabilityVector { weights, offset })
    }

    /// Distribution over `k ∈ 1..=n`.
    pub fn over_thresholds(weights: Vec<T>) -> Result<Self> {
        Self::new(weights, 1)
    }

    /// Distribution over `p ∈ 0..n`.
    pub fn over_positions(weights: Vec<T>) -> Result<Self> {
        Self::new(weights, 0)
    }

    pub fn point_mass(len: usize, offset: usize, at: usize) -> Result<Self> {
        crate::error::check_range("index", at, offset, offset + len - 1)?;
        let weights = (0..len)
            .map(|i| {
                if i + offset == at {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        Self::new(weights, offset)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Weight of outcome `index` (in the vector's own indexing).
    pub fn weight(&self, index: usize) -> &T {
        &self.weights[index - self.offset]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `(index, weight)` pairs with nonzero weight.
    pub fn support(&self) -> impl Iterator<Item = (usize, &T)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(move |(i, w)| (i + self.offset, w))
    }
}

/// A map from games to payoff vectors.
pub trait ValueFunctional<T: Scalar>: Sync {
    fn name(&self) -> String;

    fn evaluate(&self, game: &TuGame<T>) -> Result<Allocation<T>>;
}

/// The functionals this crate knows how to compute.
#[derive(Clone, Debug, PartialEq)]
pub enum Functional<T> {
    Shapley,
    EqualDivision,
    KSed(usize),
    AlphaSed(ProbabilityVector<T>),
    SolP(usize),
    SolBeta(ProbabilityVector<T>),
    Esl(EslCoefficients<T>),
    Counterexample(Counterexample, usize),
}

impl<T: Scalar> ValueFunctional<T> for Functional<T> {
    fn name(&self) -> String {
        match self {
            Functional::Shapley => "shapley".into(),
            Functional::EqualDivision => "equal-division".into(),
            Functional::KSed(k) => format!("ksed(k={k})"),
            Functional::AlphaSed(a) => format!("alpha-sed({})", join(a.weights())),
            Functional::SolP(p) => format!("sol(p={p})"),
            Functional::SolBeta(b) => format!("sol-beta({})", join(b.weights())),
            Functional::Esl(b) => format!("esl({})", join(b.as_slice())),
            Functional::Counterexample(c, k) => format!("{}(k={k})", c.name()),
        }
    }

    fn evaluate(&self, game: &TuGame<T>) -> Result<Allocation<T>> {
        match self {
            Functional::Shapley => Ok(shapley(game)),
            Functional::EqualDivision => Ok(equal_division(game)),
            Functional::KSed(k) => ksed(game, *k),
            Functional::AlphaSed(a) => alpha_sed(game, a),
            Functional::SolP(p) => sol_p(game, *p),
            Functional::SolBeta(b) => sol_beta(game, b),
            Functional::Esl(b) => esl_value(game, b),
            Functional::Counterexample(c, k) => counterexample_value(*c, game, *k),
        }
    }
}

/// Wraps a closure as a named functional.
pub struct FnValue<F> {
    name: String,
    f: F,
}

impl<F> FnValue<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnValue {
            name: name.into(),
            f,
        }
    }
}

impl<T, F> ValueFunctional<T> for FnValue<F>
where
    T: Scalar,
    F: Fn(&TuGame<T>) -> Result<Allocation<T>> + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn evaluate(&self, game: &TuGame<T>) -> Result<Allocation<T>> {
        (self.f)(game)
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    #[test]
    fn probability_vectors_validate() {
        let a = ProbabilityVector::over_thresholds(vec![rat(1, 2), rat(0, 1), rat(1, 2)]).unwrap();
        assert_eq!(a.weight(3), &rat(1, 2));
        assert_eq!(a.support().map(|(k, _)| k).collect::<Vec<_>>(), vec![1, 3]);
        assert!(ProbabilityVector::over_thresholds(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(ProbabilityVector::over_thresholds(vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(ProbabilityVector::<Rational>::over_thresholds(vec![]).is_err());
        let p = ProbabilityVector::<Rational>::point_mass(3, 0, 2).unwrap();
        assert_eq!(p.weights(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(ProbabilityVector::<Rational>::point_mass(3, 1, 0).is_err());
    }

    #[test]
    fn allocation_display() {
        let a = Allocation::new(vec![rat(17, 2), rat(11, 2), rat(4, 1)]);
        assert_eq!(a.to_string(), "(17/2, 11/2, 4)");
        assert_eq!(a.total(), rat(18, 1));
    }
}
