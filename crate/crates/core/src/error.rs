use thiserror::Error;

/// Errors produced by instance validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("roots must increase by at least {gap:e}: roots[{index}] = {left:?}, roots[{}] = {right:?}", index + 1)]
    NonIncreasingRoots {
        index: usize,
        left: f64,
        right: f64,
        gap: f64,
    },

    #[error("multiplicity mults[{index}] = {value:?} is not a positive finite number")]
    NonPositiveMultiplicity { index: usize, value: f64 },

    #[error("{roots} roots but {mults} multiplicities")]
    LengthMismatch { roots: usize, mults: usize },

    #[error("at least two roots are required, got {0}")]
    TooFewRoots(usize),

    #[error("root {index} is not a finite number")]
    NonFiniteRoot { index: usize },

    #[error("normalization {scheme} needs exactly {expected} roots, got {got}")]
    SchemeArityMismatch {
        scheme: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("at least {min} multiplicities are required, got {got}")]
    ArityTooSmall { min: usize, got: usize },

    #[error("logarithmic derivative evaluated at root {root:?} (x = {x:?})")]
    EvalAtRoot { x: f64, root: f64 },

    #[error("no convergence in interval {interval} after {iterations} iterations")]
    ConvergenceFailure { interval: usize, iterations: usize },

    #[error("instances have different multiplicities")]
    MultiplicityMismatch,

    #[error("root-dragging hypothesis violated at index {index}")]
    HypothesisViolated { index: usize },

    #[error("sigma1 = {sigma1:?} outside the open interval ({lower:?}, {upper:?})")]
    Sigma1OutOfRange { sigma1: f64, lower: f64, upper: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("negative discriminant {0:e}")]
    NegativeDiscriminant(f64),

    #[error("degenerate denominator {0:e}")]
    DegenerateDenominator(f64),

    #[error("candidate is not a ratio vector")]
    NotAMember,

    #[error("no closed-form membership polynomial for {0} roots")]
    UnsupportedArity(usize),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
