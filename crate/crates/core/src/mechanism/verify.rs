//! Checks of the mechanism's equilibrium payoffs against the values it is
//! meant to implement.

use std::fmt;

use serde_json::{json, Value};

use crate::coalition::Permutation;
use crate::error::{check_range, Result};
use crate::game::TuGame;
use crate::scalar::Scalar;
use crate::values::{alpha_sed, check_shape, equal_division, sol_p, Allocation, ProbabilityVector};

use super::bargaining::{expected_stage3, Interpretation};

/// Stage-3 payoffs written out directly, for games where every first offer
/// is accepted (zero-monotonic games with nonnegative worths).
///
/// Literal: positions before the proposer get 0, the proposer gets
/// `v(N) − v(T_{k+2})` and a later position `t` gets `v(T_t) − v(T_{t+1})`,
/// where `T_t` is the tail entering at position `t` or later. Dual: the
/// head-continuation payoffs with `p = n − k` on the dual game.
pub fn closed_form_stage3<T: Scalar>(
    v: &TuGame<T>,
    k: usize,
    order: &Permutation,
    interpretation: Interpretation,
) -> Result<Allocation<T>> {
    v.check_k(k)?;
    let n = v.n();
    let mut out = Allocation::zeros(n);
    match interpretation {
        Interpretation::Literal => {
            if k >= n - 1 {
                *out.get_mut(order.at(n - 1)) = v.grand_worth().clone();
                return Ok(out);
            }
            *out.get_mut(order.at(k)) =
                v.grand_worth().clone() - v.worth(order.suffix(k + 1)).clone();
            for r in k + 1..n {
                *out.get_mut(order.at(r)) =
                    v.worth(order.suffix(r)).clone() - v.worth(order.suffix(r + 1)).clone();
            }
        }
        Interpretation::DualBeal => {
            let w = v.dual();
            let p = n - k;
            for r in 0..p {
                *out.get_mut(order.at(r)) =
                    w.worth(order.prefix(r + 1)).clone() - w.worth(order.prefix(r)).clone();
            }
            *out.get_mut(order.at(p)) = w.grand_worth().clone() - w.worth(order.prefix(p)).clone();
        }
    }
    Ok(out)
}

/// What the literal protocol's expected payoff should equal:
/// `Σ_k α_k Sol^{n−k−1}`, with equal division standing in at `k = n`.
pub fn literal_target<T: Scalar>(
    v: &TuGame<T>,
    alpha: &ProbabilityVector<T>,
) -> Result<Allocation<T>> {
    check_shape(alpha, 1, v.n(), "α over k = 1..n")?;
    let n = v.n();
    let mut out = Allocation::zeros(n);
    for (k, a) in alpha.support() {
        let part = if k < n {
            sol_p(v, n - k - 1)?
        } else {
            equal_division(v)
        };
        out.add_scaled(&part, a);
    }
    Ok(out)
}

/// `Σ_k α_k E_π g_{k,π}`, the payoff the bidding stages hand back in
/// equilibrium.
pub fn expected_mechanism_payoff<T: Scalar>(
    v: &TuGame<T>,
    alpha: &ProbabilityVector<T>,
    interpretation: Interpretation,
) -> Result<Allocation<T>> {
    check_shape(alpha, 1, v.n(), "α over k = 1..n")?;
    let mut out = Allocation::zeros(v.n());
    for (k, a) in alpha.support() {
        out.add_scaled(&expected_stage3(v, k, interpretation)?, a);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    fn of<T: Scalar>(a: &Allocation<T>, b: &Allocation<T>) -> Self {
        if a == b {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Expected mechanism payoff compared with α-SED and with the value the
/// chosen interpretation is predicted to produce.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplementationReport<T: Scalar> {
    pub interpretation: Interpretation,
    pub alpha: ProbabilityVector<T>,
    pub zero_monotonic: bool,
    pub expected: Allocation<T>,
    pub alpha_sed: Allocation<T>,
    pub implements_alpha_sed: Verdict,
    /// `"H1"` for the literal reading, `"H2"` for the dual one.
    pub hypothesis: &'static str,
    pub hypothesis_target: Allocation<T>,
    pub hypothesis_verdict: Verdict,
}

impl<T: Scalar> ImplementationReport<T> {
    /// `expected − α-SED`, player by player.
    pub fn difference(&self) -> Allocation<T> {
        &self.expected - &self.alpha_sed
    }

    pub fn to_json(&self) -> Value {
        let strings = |a: &Allocation<T>| a.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({
            "interpretation": self.interpretation.as_str(),
            "alpha": self.alpha.weights().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "zero_monotonic": self.zero_monotonic,
            "expected": strings(&self.expected),
            "alpha_sed": strings(&self.alpha_sed),
            "difference": strings(&self.difference()),
            "implements_alpha_sed": self.implements_alpha_sed.as_str(),
            "hypothesis": self.hypothesis,
            "hypothesis_target": strings(&self.hypothesis_target),
            "hypothesis_verdict": self.hypothesis_verdict.as_str(),
        })
    }
}

impl<T: Scalar> fmt::Display for ImplementationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "interpretation: {}", self.interpretation)?;
        if !self.zero_monotonic {
            writeln!(f, "warning: game is not zero-monotonic")?;
        }
        writeln!(f, "expected payoff: {}", self.expected)?;
        writeln!(f, "alpha-SED:       {}", self.alpha_sed)?;
        writeln!(f, "difference:      {}", self.difference())?;
        writeln!(f, "implements alpha-SED: {}", self.implements_alpha_sed)?;
        write!(
            f,
            "{} target {}: {}",
            self.hypothesis, self.hypothesis_target, self.hypothesis_verdict
        )
    }
}

pub fn verify_implementation<T: Scalar>(
    v: &TuGame<T>,
    alpha: &ProbabilityVector<T>,
    interpretation: Interpretation,
) -> Result<ImplementationReport<T>> {
    let expected = expected_mechanism_payoff(v, alpha, interpretation)?;
    let target = alpha_sed(v, alpha)?;
    let (hypothesis, hypothesis_target) = match interpretation {
        Interpretation::Literal => ("H1", literal_target(v, alpha)?),
        Interpretation::DualBeal => ("H2", target.clone()),
    };
    Ok(ImplementationReport {
        interpretation,
        alpha: alpha.clone(),
        zero_monotonic: v.is_zero_monotonic(),
        implements_alpha_sed: Verdict::of(&expected, &target),
        hypothesis_verdict: Verdict::of(&expected, &hypothesis_target),
        expected,
        alpha_sed: target,
        hypothesis,
        hypothesis_target,
    })
}

/// Text comparing the literal reading with k-SED on the two-player game `v`
/// for a given `k`; on the standard two-player example it shows the equal
/// split `(1/2, 1/2)` against the Shapley value `(1, 0)`.
pub fn discrepancy_report<T: Scalar>(v: &TuGame<T>, k: usize) -> Result<String> {
    check_range("k", k, 1, v.n())?;
    let alpha = ProbabilityVector::point_mass(v.n(), 1, k)?;
    let literal = verify_implementation(v, &alpha, Interpretation::Literal)?;
    let dual = verify_implementation(v, &alpha, Interpretation::DualBeal)?;
    Ok(format!(
        "k = {k}\n\
         literal expected payoff:   {}\n\
         {k}-SED:                   {}\n\
         literal implements {k}-SED: {}\n\
         dual expected payoff:      {}\n\
         dual implements {k}-SED:    {}",
        literal.expected,
        literal.alpha_sed,
        literal.implements_alpha_sed,
        dual.expected,
        dual.implements_alpha_sed
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::GameGenerator;
    use crate::fixtures::{v0, v2};
    use crate::mechanism::stage3_spne;
    use crate::scalar::rat;
    use crate::Game;

    #[test]
    fn closed_form_agrees_with_backward_induction() {
        for seed in 0..40 {
            let n = 2 + (seed as usize % 3);
            let v: Game = GameGenerator::new(seed, n)
                .zero_monotonic()
                .generate()
                .unwrap();
            for k in 1..=n {
                for pi in Permutation::all(n) {
                    for interp in [Interpretation::Literal, Interpretation::DualBeal] {
                        let solved = stage3_spne(&v, k, &pi, interp).unwrap();
                        assert_eq!(
                            solved.payoffs,
                            closed_form_stage3(&v, k, &pi, interp).unwrap(),
                            "seed {seed} k {k} {pi} {interp}"
                        );
                        assert!(solved.rounds[0].accepted);
                    }
                }
            }
        }
    }

    #[test]
    fn reports_on_fixtures() {
        let delta2 = ProbabilityVector::point_mass(3, 1, 2).unwrap();
        let report = verify_implementation(&v0(), &delta2, Interpretation::DualBeal).unwrap();
        assert_eq!(
            report.expected,
            Allocation::new(vec![rat(9, 1), rat(6, 1), rat(3, 1)])
        );
        assert_eq!(report.hypothesis_verdict, Verdict::Match);
        assert_eq!(report.implements_alpha_sed, Verdict::Match);

        let delta1 = ProbabilityVector::point_mass(2, 1, 1).unwrap();
        let literal = verify_implementation(&v2(), &delta1, Interpretation::Literal).unwrap();
        assert_eq!(literal.implements_alpha_sed, Verdict::Mismatch);
        assert_eq!(literal.hypothesis_verdict, Verdict::Match);
        assert_eq!(
            literal.difference(),
            Allocation::new(vec![rat(-1, 2), rat(1, 2)])
        );

        let text = discrepancy_report(&v2(), 1).unwrap();
        assert!(text.contains("(1/2, 1/2)"));
        assert!(text.contains("(1, 0)"));
        assert!(text.contains("literal implements 1-SED: mismatch"));
        assert!(text.contains("dual implements 1-SED:    match"));
    }
}
