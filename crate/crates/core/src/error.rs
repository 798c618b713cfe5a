use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the formulas are evaluated.
    #[error("{what} = {value} is outside the admissible domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// The boundary-value system could not be solved.
    #[error("boundary-value system is numerically singular (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },
    /// An iterative solver exhausted its budget.
    #[error("{solver} did not converge after {iterations} iterations")]
    NotConverged {
        solver: &'static str,
        iterations: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }
}
