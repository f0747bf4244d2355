//! Error type shared by all solver modules.

use thiserror::Error;

/// Errors raised by network construction, allocation, and the game solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("linear system is numerically singular")]
    SingularMatrix,

    #[error("power iteration did not converge within {max_iter} iterations (best estimate {best}, last change {gap:e})")]
    NoConvergence { max_iter: usize, best: f64, gap: f64 },

    #[error("root bracket endpoints indicate an increasing function (g(lo) = {g_lo}, g(hi) = {g_hi})")]
    NotDecreasing { g_lo: f64, g_hi: f64 },

    #[error("edge list parse error at line {line}: {reason}")]
    ParseError { line: u64, reason: String },

    #[error("self-loop at line {line}: node {label:?} references itself")]
    SelfLoop { line: u64, label: String },

    #[error("duplicate edge at line {line}: ({src:?}, {dst:?}) already defined")]
    DuplicateEdge { line: u64, src: String, dst: String },

    #[error("negative weight {weight} at line {line}")]
    NegativeWeight { line: u64, weight: f64 },

    #[error("decay {lambda} is too large: Katz-Bonacich centrality requires lambda < 1/r(w) = {limit}")]
    DecayTooLarge { lambda: f64, limit: f64 },

    #[error("beta = {beta} is below the validity bound {bound}")]
    BetaTooSmall { beta: f64, bound: f64 },

    #[error("node sets differ: {reason}")]
    NodeSetMismatch { reason: String },

    #[error("networks are not comparable under the integration partial order")]
    NotComparable,

    #[error("allocation requires at least one issuer to internationalize")]
    NoIssuerIn,

    #[error("projected evaluation count {projected} exceeds the solver budget {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },

    #[error("commitment effectiveness is undefined at e = 0 for exponent {alpha} < 1")]
    DerivativeAtZero { alpha: f64 },

    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid { what, reason: reason.into() }
    }
}
