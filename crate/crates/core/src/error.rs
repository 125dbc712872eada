use alloc::string::String;

use crate::ncalg::Preset;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot evaluate a negative power of q at q = 0")]
    Domain,
    #[error("polynomial is not divisible by (1 - q)")]
    NotDivisible,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("operands belong to different algebras ({0} vs {1})")]
    PresetMismatch(Preset, Preset),
    #[error("generator `{0}` does not belong to {1}")]
    UnknownGenerator(String, Preset),
    #[error("rewriting exceeded its step budget of {budget} on a word of length {length}")]
    StepBudget { length: usize, budget: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation not supported for {0}")]
    Unsupported(Preset),
    #[error("variable `{0}` is not part of the {1} structure")]
    VariableMismatch(String, &'static str),
    #[error("index out of range: {0}")]
    IndexViolation(String),
    #[error("state leaves the truncated Fock space (needs {needed} levels, have {levels})")]
    TruncationOverflow { needed: usize, levels: usize },
    #[error("point is off the sphere (constraint residual {0:e})")]
    OffSphere(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
