//! Executable axioms: checkers, seeded generators, batteries over the
//! characterizing axiom sets, and coefficient-based detection of `k`.
//!
//! Verdicts on universally quantified axioms are sample-based and labeled
//! `holds-on-sample`; a violation always carries a replayable witness.

pub mod battery;
pub mod checks;
pub mod csic;
pub mod generator;

pub use battery::{
    axiom_battery, battery_json, characterizations, check_seeded, independence_cases, ksed_axioms,
    ksed_battery, run_independence, BatteryConfig, IndependenceCase, IndependenceOutcome,
};
pub use checks::{
    check_classic_monotonicity, check_efficiency, check_fairness_dm, check_instances, check_kcse,
    check_linearity, check_partial_monotonicity, check_player_axiom, check_symmetry,
    partial_hypotheses, Axiom, AxiomReport, ClassicVariant, FairnessVariant, Instance,
    PartialHypotheses, PartialVariant, PlayerAxiom, Relation, Verdict, Witness,
};
pub use csic::{csic_detect, recover_esl_coefficients};
pub use generator::{generate_game, GameGenerator, GameMode};
