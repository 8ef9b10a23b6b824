//! Exact computation of k-SED values, their characterizing axioms and the
//! bargaining mechanism that implements them.
//!
//! Games are stored as full worth tables indexed by coalition bit pattern.
//! Everything is generic over [`Scalar`]; the aliases below fix the exact
//! rational instantiation used by the checks and the CLI.

pub mod axioms;
pub mod coalition;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod io;
pub mod mechanism;
pub mod scalar;
pub mod values;

pub use coalition::{Coalition, Permutation, MAX_PLAYERS};
pub use error::{Error, Result};
pub use game::{basis_game, BasisKind, EslCoefficients, PlayerType, TuGame};
pub use scalar::{parse_rational, rat, Scalar};
pub use values::{Allocation, Functional, ProbabilityVector, ValueFunctional};

pub type Rational = num::BigRational;
pub type Game = TuGame<Rational>;
pub type Payoff = Allocation<Rational>;
pub type GameF64 = TuGame<f64>;
pub type GameF32 = TuGame<f32>;
