use thiserror::Error;

/// Errors raised by game construction and value computations.
///
/// Player indices in messages are 1-based, matching the file format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} outside 1..=24")]
    PlayerCount(usize),
    #[error("player {player} out of range for n = {n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("coalition {0} listed more than once")]
    DuplicateCoalition(String),
    #[error("the empty coalition must have worth 0")]
    NonzeroEmptyWorth,
    #[error("player {player} is a member of {coalition}")]
    PlayerInCoalition { player: usize, coalition: String },
    #[error("coalition must be nonempty")]
    EmptyCoalition,
    #[error("{name} = {value} outside {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("games have different player counts ({0} vs {1})")]
    PlayerCountMismatch(usize, usize),
    #[error("invalid coefficient vector: {0}")]
    InvalidCoefficients(String),
    #[error("invalid probability vector: {0}")]
    InvalidWeights(String),
    #[error("coefficients are not nonincreasing within [0, 1]: {0}")]
    NotMonotone(String),
    #[error("normalizing denominator is zero")]
    ZeroDenominator,
    #[error("unknown value functional `{0}`")]
    UnknownFunctional(String),
    #[error("n = {n} exceeds the limit {limit} for {what}")]
    TooManyPlayers {
        n: usize,
        limit: usize,
        what: &'static str,
    },
    #[error("{0}")]
    Parse(String),
    #[error("bid profile violates a constraint: {0}")]
    BidConstraint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(name: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}
