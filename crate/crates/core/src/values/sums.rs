//! Closed-form values driven by per-size worth totals.
//!
//! Every formula in this family only needs, for each player `i` and size `t`,
//! the total worth of the size-`t` coalitions containing `i` and of those
//! excluding it. One pass over the table collects both, after which each
//! payoff is an O(n) sum.

use crate::error::Result;
use crate::game::{EslCoefficients, TuGame};
use crate::scalar::{binomial, shapley_weight, Scalar};

use super::Allocation;

pub(crate) struct SizeSums<T> {
    n: usize,
    /// `total[t]`: sum of `v(S)` over `|S| = t`.
    total: Vec<T>,
    /// `containing[i * (n + 1) + t]`: sum of `v(S)` over `|S| = t`, `i ∈ S`.
    containing: Vec<T>,
}

impl<T: Scalar> SizeSums<T> {
    pub(crate) fn new(v: &TuGame<T>) -> Self {
        let n = v.n();
        let mut total = vec![T::zero(); n + 1];
        let mut containing = vec![T::zero(); n * (n + 1)];
        for (bits, w) in v.table().iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let t = bits.count_ones() as usize;
            total[t] += w;
            let mut rest = bits;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                containing[i * (n + 1) + t] += w;
            }
        }
        SizeSums {
            n,
            total,
            containing,
        }
    }

    pub(crate) fn containing(&self, i: usize, t: usize) -> &T {
        &self.containing[i * (self.n + 1) + t]
    }

    pub(crate) fn excluding(&self, i: usize, t: usize) -> T {
        let mut x = self.total[t].clone();
        x -= self.containing(i, t);
        x
    }

    /// `Σ_{S∌i, |S|=s} m_i(S)`.
    pub(crate) fn marginal_total(&self, i: usize, s: usize) -> T {
        let mut x = self.containing(i, s + 1).clone();
        x -= &self.excluding(i, s);
        x
    }

    pub(crate) fn grand(&self) -> &T {
        &self.total[self.n]
    }

    pub(crate) fn allocation(&self, f: impl Fn(usize) -> T) -> Allocation<T> {
        Allocation::new((0..self.n).map(f).collect())
    }
}

fn weighted<T: Scalar>(weight: T, mut x: T) -> T {
    x *= &weight;
    x
}

/// Shapley value by coalition enumeration.
pub fn shapley<T: Scalar>(v: &TuGame<T>) -> Allocation<T> {
    let n = v.n();
    let sums = SizeSums::new(v);
    sums.allocation(|i| {
        let mut acc = T::zero();
        for s in 0..n {
            acc += &weighted(shapley_weight(n, s), sums.marginal_total(i, s));
        }
        acc
    })
}

/// `v(N)/n` for everyone.
pub fn equal_division<T: Scalar>(v: &TuGame<T>) -> Allocation<T> {
    let share = weighted(T::from_ratio(1, v.n() as u64), v.grand_worth().clone());
    Allocation::new(vec![share; v.n()])
}

/// The ESL value with coefficients `B`:
/// `Σ_{S∌i} w_s (b_{s+1} v(S∪i) − b_s v(S))`.
pub fn esl_value<T: Scalar>(
    v: &TuGame<T>,
    coefficients: &EslCoefficients<T>,
) -> Result<Allocation<T>> {
    let n = v.n();
    if coefficients.n() != n {
        return Err(crate::Error::LengthMismatch {
            expected: n + 1,
            found: coefficients.n() + 1,
        });
    }
    let sums = SizeSums::new(v);
    Ok(sums.allocation(|i| {
        let mut acc = T::zero();
        for s in 0..n {
            let mut term = weighted(
                coefficients.get(s + 1).clone(),
                sums.containing(i, s + 1).clone(),
            );
            term -= &weighted(coefficients.get(s).clone(), sums.excluding(i, s));
            acc += &weighted(shapley_weight(n, s), term);
        }
        acc
    }))
}

/// Closed form of the k-SED value: the size-`(k−1)` term hands each player
/// its share of the size-`k` prefix worths, the rest are Shapley terms.
pub(crate) fn ksed_closed_form<T: Scalar>(v: &TuGame<T>, k: usize) -> Allocation<T> {
    let n = v.n();
    let sums = SizeSums::new(v);
    sums.allocation(|i| {
        let mut acc = weighted(shapley_weight(n, k - 1), sums.containing(i, k).clone());
        for s in k..n {
            acc += &weighted(shapley_weight(n, s), sums.marginal_total(i, s));
        }
        acc
    })
}

/// `2^{−(n−1)} Σ_{S∌i, s≥k} m_i(S)`.
pub(crate) fn scaled_upper_marginals<T: Scalar>(v: &TuGame<T>, k: usize) -> Allocation<T> {
    let n = v.n();
    let sums = SizeSums::new(v);
    let scale = T::from_ratio(1, 1u64 << (n - 1));
    sums.allocation(|i| {
        let mut acc = T::zero();
        for s in k..n {
            acc += &sums.marginal_total(i, s);
        }
        weighted(scale.clone(), acc)
    })
}

/// Solidarity value `Sol^p`: marginal terms for coalitions up to size `p`,
/// then an equal claim on `v(N) − v(S)` for the size-`p` coalitions without `i`.
pub(crate) fn sol_p_closed_form<T: Scalar>(v: &TuGame<T>, p: usize) -> Allocation<T> {
    let n = v.n();
    let sums = SizeSums::new(v);
    sums.allocation(|i| {
        let mut acc = T::zero();
        for s in 1..=p {
            let mut term = sums.containing(i, s).clone();
            term -= &sums.excluding(i, s - 1);
            acc += &weighted(shapley_weight(n, s - 1), term);
        }
        let mut tail = weighted(T::from_int(binomial(n - 1, p) as i64), sums.grand().clone());
        tail -= &sums.excluding(i, p);
        acc += &weighted(shapley_weight(n, p), tail);
        acc
    })
}
