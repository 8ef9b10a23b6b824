//! Recovering ESL coefficients from a value and detecting its threshold.

use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{basis_game, BasisKind, EslCoefficients};
use crate::scalar::{binomial, Scalar};
use crate::values::ValueFunctional;

/// Reads `b_s` off `Φ_1(e_{1..s}) = b_s / (n·C(n−1, s−1))` for `s = 1..n−1`;
/// `b_0 = 0` and `b_n = 1` are fixed. Only meaningful when `Φ` is efficient,
/// symmetric and linear.
pub fn recover_esl_coefficients<T, F>(phi: &F, n: usize) -> Result<EslCoefficients<T>>
where
    T: Scalar,
    F: ValueFunctional<T> + ?Sized,
{
    let mut b = vec![T::zero(); n + 1];
    b[n] = T::one();
    for (s, slot) in b.iter_mut().enumerate().take(n).skip(1) {
        let probe = basis_game::<T>(n, BasisKind::Identity, Coalition::from_players(0..s))?;
        let mut x = phi.evaluate(&probe)?[0].clone();
        x *= &T::from_int((n as u64 * binomial(n - 1, s - 1)) as i64);
        *slot = x;
    }
    EslCoefficients::new(b)
}

/// The `k` for which `B` is the step vector `(0,…,0,1,…,1)` switching at `k`.
pub fn csic_detect<T: Scalar>(coefficients: &EslCoefficients<T>) -> Option<usize> {
    let b = coefficients.as_slice();
    let k = b.iter().position(|x| x.is_one())?;
    let step = b[..k].iter().all(|x| x.is_zero()) && b[k..].iter().all(|x| x.is_one());
    (step && k >= 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::values::Functional;
    use crate::Rational;

    fn b(xs: &[(i64, i64)]) -> EslCoefficients<Rational> {
        EslCoefficients::new(xs.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn recovers_known_coefficients() {
        let rec = |phi: Functional<Rational>| recover_esl_coefficients(&phi, 3).unwrap();
        assert_eq!(
            rec(Functional::KSed(2)),
            b(&[(0, 1), (0, 1), (1, 1), (1, 1)])
        );
        assert_eq!(
            rec(Functional::Shapley),
            b(&[(0, 1), (1, 1), (1, 1), (1, 1)])
        );
        assert_eq!(
            rec(Functional::EqualDivision),
            b(&[(0, 1), (0, 1), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn detects_step_vectors() {
        assert_eq!(csic_detect(&b(&[(0, 1), (0, 1), (1, 1), (1, 1)])), Some(2));
        assert_eq!(csic_detect(&b(&[(0, 1), (1, 1), (1, 1), (1, 1)])), Some(1));
        assert_eq!(csic_detect(&b(&[(0, 1), (1, 2), (1, 1), (1, 1)])), None);
        assert_eq!(csic_detect(&b(&[(0, 1), (1, 1), (0, 1), (1, 1)])), None);
    }
}
