use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter falls outside the validity domain of the requested
    /// formula or density family. `what` names the violated condition.
    #[error("domain error: {what}")]
    Domain { what: String },

    /// A gamma-function argument turned out non-positive. The argument is
    /// named so table generation can report which validity condition broke.
    #[error("gamma argument {name} = {value} must be positive")]
    GammaDomain { name: &'static str, value: f64 },

    #[error("invalid bracket: lo = {lo} must be below hi = {hi}")]
    InvalidBracket { lo: f64, hi: f64 },

    /// Iteration budget exhausted. Carries the best partial value so the
    /// caller can still inspect what was reached.
    #[error("no convergence in {what} (partial value {partial}, error estimate {err_estimate})")]
    NonConvergence {
        what: String,
        partial: f64,
        err_estimate: f64,
    },

    /// Closed-form exponent test says the requested integral diverges.
    #[error("divergent moment: {what}")]
    DivergentMoment { what: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("schema error: {msg}")]
    Schema { msg: String },

    #[error("bound directions are mixed: {msg}")]
    MixedDirection { msg: String },
}

impl Error {
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
