use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by constructions and shape checks.
///
/// Mathematical violations found by validators are data (see
/// [`ValidationReport`]); they only become errors when a construction
/// requires a valid input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context} (slot {slot}): expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        slot: usize,
        expected: usize,
        found: usize,
    },
    #[error("arity mismatch in {context}: expected {expected}, found {found}")]
    ArityMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("slot {slot} out of range for a map of arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("{what} is not valid:\n{report}")]
    Invalid {
        what: String,
        report: ValidationReport,
    },
    #[error("input must be strict: {0}")]
    NotStrict(String),
    #[error("input must be skeletal: {0}")]
    NotSkeletal(String),
    #[error("r-matrix support violation: {0}")]
    Support(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("vector is not in the span of the given basis ({0})")]
    NotInSpan(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(what: impl Into<String>, report: ValidationReport) -> Self {
        Error::Invalid {
            what: what.into(),
            report,
        }
    }
}
