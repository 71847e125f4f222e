use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by symbol validation, series arithmetic and the
/// verification checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The map w -> a*w + b is not a self-map of the right half-plane
    /// inducing a bounded composition operator (requires a > 0, Re(b) >= 0).
    #[error("unbounded symbol: a = {a}, Re(b) = {re_b} (need a > 0 and Re(b) >= 0)")]
    UnboundedSymbol { a: f64, re_b: f64 },

    /// A kernel or evaluation point must lie in the open right half-plane.
    #[error("point {0} is not in the open right half-plane")]
    PointNotInHalfPlane(Complex64),

    /// Reciprocal of a power series with vanishing constant term.
    #[error("division by a power series with zero constant term")]
    DivisionBySingularSeries,

    /// Taylor expansion of (alpha*z + beta)/(gamma*z + delta) requires the
    /// pole -delta/gamma to lie strictly outside the closed unit disk.
    #[error("linear fractional map has a pole of modulus {modulus} inside the closed unit disk")]
    PoleInsideDisk { modulus: f64 },

    /// Vector length does not match the truncation size.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A check was invoked on a symbol outside its applicable class.
    #[error("wrong symbol type for {check}: requires {requires}")]
    WrongSymbolType {
        check: &'static str,
        requires: &'static str,
    },

    /// A defect check was requested for a symbol the classifier rules out.
    #[error("{check} is not applicable: {reason}")]
    NotApplicable {
        check: &'static str,
        reason: &'static str,
    },

    /// f_lambda lies in the Hardy space only for Re(lambda) < -1/2.
    #[error("f_lambda with Re(lambda) = {re_lambda} is not in the Hardy space")]
    NotInHardySpace { re_lambda: f64 },

    /// Malformed matrix file or tolerance override.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
