//! A four-stage bidding mechanism whose equilibrium payoffs are compared
//! with α-SED.
//!
//! Stage 1 bids choose the threshold `k` among the support of `α`, stage 2
//! bids choose the order of entry, stage 3 is the bargaining game for that
//! `(k, π)`, and stage 4 nets out the bids. Stage 3 has two readings, see
//! [`Interpretation`].

mod bargaining;
mod bidding;
mod verify;

pub use bargaining::{
    beal_stage3, expected_beal, expected_stage3, stage3_spne, BargainingTranscript, Interpretation,
    Round, EXPECTATION_LIMIT,
};
pub use bidding::{
    candidate_equilibrium_bids, deviation_check, run_mechanism, BidCoordinate, BidProfile,
    Deviation, DeviationReport, MechanismConfig, MechanismOutcome, Play, Stage3Table,
    DEVIATION_LIMIT,
};
pub use verify::{
    closed_form_stage3, discrepancy_report, expected_mechanism_payoff, literal_target,
    verify_implementation, ImplementationReport, Verdict,
};
