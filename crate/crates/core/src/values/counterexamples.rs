//! Values that satisfy all but one axiom of a characterizing set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::TuGame;
use crate::scalar::Scalar;

use super::sums::{equal_division, ksed_closed_form, scaled_upper_marginals};
use super::Allocation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Counterexample {
    /// `2^{−(n−1)} Σ_{S∌i, s≥k} m_i(S)`; not efficient.
    Phi1,
    /// `Phi1` rescaled to distribute `v(N)`; not linear.
    Phi2,
    /// Equal division; ignores k-nullifying null players.
    Phi3,
    /// Hands `λ^k_S` to the smallest member of `S` for each `s ≥ k`; not symmetric.
    Phi4,
    /// Same formula as `Phi1`.
    Psi1,
    /// `Psi1` rescaled to distribute `v(N)`; not fair.
    Psi2,
    /// Same formula as `Phi1`.
    Psi5,
    /// k-SED shifted by `+2` for player 1 and `−2/(n−1)` for the others.
    Psi6,
    /// `Psi5` rescaled to distribute `v(N)`.
    Psi7,
}

impl Counterexample {
    pub const ALL: [Counterexample; 9] = [
        Counterexample::Phi1,
        Counterexample::Phi2,
        Counterexample::Phi3,
        Counterexample::Phi4,
        Counterexample::Psi1,
        Counterexample::Psi2,
        Counterexample::Psi5,
        Counterexample::Psi6,
        Counterexample::Psi7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Counterexample::Phi1 => "phi1",
            Counterexample::Phi2 => "phi2",
            Counterexample::Phi3 => "phi3",
            Counterexample::Phi4 => "phi4",
            Counterexample::Psi1 => "psi1",
            Counterexample::Psi2 => "psi2",
            Counterexample::Psi5 => "psi5",
            Counterexample::Psi6 => "psi6",
            Counterexample::Psi7 => "psi7",
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Counterexample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Counterexample::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFunctional(s.to_string()))
    }
}

pub fn counterexample_value<T: Scalar>(
    which: Counterexample,
    v: &TuGame<T>,
    k: usize,
) -> Result<Allocation<T>> {
    v.check_k(k)?;
    match which {
        Counterexample::Phi1 | Counterexample::Psi1 | Counterexample::Psi5 => {
            Ok(scaled_upper_marginals(v, k))
        }
        Counterexample::Phi2 | Counterexample::Psi2 | Counterexample::Psi7 => {
            normalized(scaled_upper_marginals(v, k), v.grand_worth())
        }
        Counterexample::Phi3 => Ok(equal_division(v)),
        Counterexample::Phi4 => smallest_member_takes_all(v, k),
        Counterexample::Psi6 => shifted_ksed(v, k),
    }
}

/// `x · v(N) / Σ_j x_j`.
fn normalized<T: Scalar>(x: Allocation<T>, grand: &T) -> Result<Allocation<T>> {
    let total = x.total();
    if total.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let mut factor = grand.clone();
    factor /= &total;
    Ok(x.scaled(&factor))
}

fn smallest_member_takes_all<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    let lambda = v.lambda_coefficients(k)?;
    let mut out = Allocation::zeros(v.n());
    for c in v.coalitions().filter(|c| c.size() >= k) {
        let first = c.first().expect("nonempty coalition");
        *out.get_mut(first) += &lambda[c.index()];
    }
    Ok(out)
}

fn shifted_ksed<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<Allocation<T>> {
    let n = v.n();
    if n < 2 {
        return Err(Error::PlayerCount(n));
    }
    let mut out = ksed_closed_form(v, k);
    let two = T::from_int(2);
    *out.get_mut(0) += &two;
    let cut = T::from_ratio(2, n as u64 - 1);
    for i in 1..n {
        *out.get_mut(i) -= &cut;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::v0;
    use crate::scalar::rat;
    use crate::Game;

    fn alloc(xs: &[(i64, i64)]) -> Allocation<crate::Rational> {
        Allocation::new(xs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn catalogue_examples() {
        let v = v0();
        assert_eq!(
            counterexample_value(Counterexample::Psi6, &v, 2).unwrap(),
            alloc(&[(11, 1), (5, 1), (2, 1)])
        );
        let phi1 = counterexample_value(Counterexample::Phi1, &v, 2).unwrap();
        assert_eq!(phi1[0], rat(9, 2));
        assert_eq!(
            counterexample_value(Counterexample::Phi3, &v, 2).unwrap(),
            alloc(&[(6, 1); 3])
        );
        let phi4 = counterexample_value(Counterexample::Phi4, &v, 2).unwrap();
        assert_eq!(phi4.total(), rat(18, 1));
    }

    #[test]
    fn normalized_values_need_nonzero_base() {
        let null = Game::null(3).unwrap();
        assert_eq!(
            counterexample_value(Counterexample::Phi2, &null, 1),
            Err(Error::ZeroDenominator)
        );
        let phi2 = counterexample_value(Counterexample::Phi2, &v0(), 2).unwrap();
        assert_eq!(&phi2.total(), v0().grand_worth());
    }

    #[test]
    fn renormalizing_the_shifted_value_changes_nothing() {
        // The shifted value is already efficient, so rescaling it to v(N)
        // reproduces it; the catalogue entry rescales the Phi1 formula instead.
        let v = v0();
        let shifted = counterexample_value(Counterexample::Psi6, &v, 2).unwrap();
        assert_eq!(
            normalized(shifted.clone(), v.grand_worth()).unwrap(),
            shifted
        );
        assert_ne!(
            counterexample_value(Counterexample::Psi7, &v, 2).unwrap(),
            shifted
        );
    }

    #[test]
    fn names_parse() {
        for c in Counterexample::ALL {
            assert_eq!(c.name().parse::<Counterexample>().unwrap(), c);
        }
        assert!("phi9".parse::<Counterexample>().is_err());
    }
}
