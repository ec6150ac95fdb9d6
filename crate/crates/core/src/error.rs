use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A quantity left its mathematical domain by more than the round-off
    /// allowance (negative discriminant, entropy argument below one, ...).
    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    #[error("invalid grid {name}: {reason}")]
    InvalidGrid { name: &'static str, reason: String },

    #[error("unknown figure {0}; valid figures are 1, 2, 3, 4")]
    UnknownFigure(u8),

    #[error("linear system is singular: {0}")]
    Singular(String),

    #[error("sweep cell (t = {t}, T = {temperature}) failed: {source}")]
    SweepCell {
        t: f64,
        temperature: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for errors caused by floating-point domain violations rather than
    /// bad inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NumericalDomain(_) | Error::Singular(_) => true,
            Error::SweepCell { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
