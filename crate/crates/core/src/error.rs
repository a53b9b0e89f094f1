use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational literal {0:?} (expected \"p\" or \"p/q\")")]
    ParseRational(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A closed-form evaluation hit a vanishing Pochhammer denominator or a
    /// pole that does not cancel. The recurrence solver is the authoritative
    /// constructor at such points.
    #[error("singular parameter: {0}")]
    SingularParameter(String),

    /// The requested operation only makes sense on a specific parameter locus
    /// and the supplied parameters are not on it.
    #[error("locus mismatch: {0}")]
    LocusMismatch(String),

    /// Integral operator preconditions (convergence) fail.
    #[error("non-integrable parameters: {0}")]
    NonIntegrable(String),

    /// An exact linear system that must be consistent is not; indicates a bug
    /// in the polynomial algebra, never ordinary user input.
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
