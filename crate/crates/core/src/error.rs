use alloc::boxed::Box;
use alloc::string::String;

use crate::exactalg::Scalar;
use crate::hierarchy::SystemKind;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("antiderivative of {context} requires a logarithmic term")]
    NonElementaryAntiderivative { context: String },
    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("expected a {expected:?} system, found {found:?}")]
    WrongSystem {
        expected: SystemKind,
        found: SystemKind,
    },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("the constants C0 and C1 must be set for this system")]
    MissingConstants,
    #[error("parameter sum h is zero")]
    ZeroH,
    #[error("parameter sum h = {h} is not the square of a rational")]
    NonSquareScale { h: Box<Scalar> },
    #[error("row {k} does not exist for n = {n}")]
    RowOutOfRange { n: usize, k: usize },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("parity-{parity} parameter sum A is zero while some parity-{parity} alpha is not")]
    ZeroA { parity: usize },
    #[error("no constant solution: residual component {index} equals {residual}")]
    NoConstantSolution {
        index: usize,
        residual: Box<Scalar>,
        /// `Phi_index` of the rejected candidate (absent for the two
        /// constraint components).
        phi: Option<Box<Scalar>>,
    },
    #[error("reflection s{index} is undefined: f{index} = 0 while alpha{index} != 0 (after {prefix_len} letters)")]
    ZeroPivot { index: usize, prefix_len: usize },
    #[error("residual check failed after letter {letter_index}")]
    VerificationFailed { letter_index: usize },
    #[error("total degree {degree} exceeds the cap {cap} (after {prefix_len} letters)")]
    DegreeOverflow {
        degree: usize,
        cap: usize,
        prefix_len: usize,
    },
    #[error("invalid word letter: {0}")]
    InvalidLetter(String),
    #[error("no representative with 0 <= alpha_i <= 1 within depth (frontier size {frontier})")]
    DepthExhausted { frontier: usize },
    #[error("the variable map is not invertible (zero derivative)")]
    InvalidVariableMap,
    #[error("interpolation failed: {0}")]
    InterpolationDegenerate(String),
    #[error("cannot parse {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
