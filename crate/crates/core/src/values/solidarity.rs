//! Solidarity values `Sol^p` and their mixtures.

use crate::error::{check_range, Error, Result};
use crate::game::{EslCoefficients, TuGame};
use crate::scalar::Scalar;

use super::ksed::check_shape;
use super::sums::sol_p_closed_form;
use super::{Allocation, ProbabilityVector};

/// `Sol^p`: players entering at position `≤ p` get their marginal
/// contribution, the rest split `v(N) − v(P^p)` equally; averaged over orders.
pub fn sol_p<T: Scalar>(v: &TuGame<T>, p: usize) -> Result<Allocation<T>> {
    check_range("p", p, 0, v.n() - 1)?;
    Ok(sol_p_closed_form(v, p))
}

/// `Σ_p β_p Sol^p`, with `β` indexed by `p ∈ 0..n`.
pub fn sol_beta<T: Scalar>(v: &TuGame<T>, beta: &ProbabilityVector<T>) -> Result<Allocation<T>> {
    check_shape(beta, 0, v.n(), "β over p = 0..n-1")?;
    let mut out = Allocation::zeros(v.n());
    for (p, b) in beta.support() {
        out.add_scaled(&sol_p_closed_form(v, p), b);
    }
    Ok(out)
}

/// The mixing distribution `β` of the solidarity value with ESL coefficients
/// `B`: `β_0 = 1 − b_1`, `β_s = b_s − b_{s+1}`, `β_{n−1} = b_{n−1}`.
///
/// Fails unless `1 ≥ b_1 ≥ … ≥ b_{n−1} ≥ 0`. In particular every interior
/// step vector `B^k` (`1 < k < n`) is rejected.
pub fn coefficients_to_beta<T: Scalar>(
    coefficients: &EslCoefficients<T>,
) -> Result<ProbabilityVector<T>> {
    let n = coefficients.n();
    let b = coefficients.as_slice();
    if n == 1 {
        return ProbabilityVector::over_positions(vec![T::one()]);
    }
    for s in 1..n {
        if b[s] < T::zero() || b[s] > T::one() {
            return Err(Error::NotMonotone(format!(
                "b_{s} = {} lies outside [0, 1]",
                b[s]
            )));
        }
        if s + 1 < n && b[s] < b[s + 1] {
            return Err(Error::NotMonotone(format!(
                "b_{s} = {} < b_{} = {}",
                b[s],
                s + 1,
                b[s + 1]
            )));
        }
    }
    let mut beta = Vec::with_capacity(n);
    let mut first = T::one();
    first -= &b[1];
    beta.push(first);
    for s in 1..n - 1 {
        let mut x = b[s].clone();
        x -= &b[s + 1];
        beta.push(x);
    }
    beta.push(b[n - 1].clone());
    ProbabilityVector::over_positions(beta)
}
