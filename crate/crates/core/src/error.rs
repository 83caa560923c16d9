use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A speed outside the post-Newtonian range (`v > 0.01 c`).
    PostNewtonian { speed: f64, limit: f64 },
    /// Interferometer arms that do not recombine, or other malformed geometry.
    Geometry(String),
    /// A clock state that violates its invariants.
    InvalidState(String),
    /// A caller-side precondition that does not hold.
    Precondition(String),
    /// Moment order above the supported cap, or a non-finite moment.
    Range(String),
    /// An approximation evaluated outside the domain where it is defined.
    Domain(String),
    /// A characteristic function whose modulus exceeds one beyond roundoff.
    NumericFault(String),
    /// The operation is only defined for some clock models.
    UnsupportedState(&'static str),
    /// The brute-force oracle would need more terms than allowed.
    Resource { terms: u64, limit: u64 },
    /// Scenario validation failed; every offending field is listed.
    Scenario(alloc::vec::Vec<String>),
}

impl Error {
    /// True for errors that come from bad input rather than from numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::PostNewtonian { .. }
                | Error::Geometry(_)
                | Error::InvalidState(_)
                | Error::Precondition(_)
                | Error::UnsupportedState(_)
                | Error::Scenario(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PostNewtonian { speed, limit } => write!(
                f,
                "speed {speed} m/s exceeds the post-Newtonian guard of {limit} m/s (0.01 c)"
            ),
            Error::Geometry(msg) => write!(f, "geometry error: {msg}"),
            Error::InvalidState(msg) => write!(f, "invalid clock state: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NumericFault(msg) => write!(f, "numeric fault: {msg}"),
            Error::UnsupportedState(msg) => write!(f, "unsupported clock state: {msg}"),
            Error::Resource { terms, limit } => {
                write!(f, "brute-force sum needs {terms} terms, limit is {limit}")
            }
            Error::Scenario(errors) => {
                write!(f, "scenario validation failed:")?;
                for e in errors {
                    write!(f, "\n  - {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}
