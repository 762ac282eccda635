use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates the operation's stated domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A gamma-type factor was evaluated at a pole.
    #[error("pole: {0}")]
    Pole(String),
    #[error(
        "{what} did not converge (error estimate {estimate:e} after {evaluations} evaluations)"
    )]
    NonConvergence {
        what: String,
        estimate: f64,
        evaluations: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("series term {n} is not finite")]
    NonFiniteTerm { n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns a domain error naming `invariant` unless `ok` holds.
pub(crate) fn require(ok: bool, invariant: &str, got: impl std::fmt::Display) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("{invariant} violated (got {got})")))
    }
}
