use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different coefficient domains")]
    DomainMismatch,

    #[error("characteristic {characteristic} is too small: need at least {required}")]
    CharacteristicTooSmall { required: u64, characteristic: u64 },

    #[error("modulus polynomial must be monic of positive degree")]
    NotMonic,

    #[error("constant term is not invertible")]
    ConstantTermNotInvertible,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("factor {0} is not invertible")]
    NonInvertibleFactor(usize),

    #[error("scale polynomial vanishes at n = {0}")]
    ScaleVanishes(u64),

    #[error("operand recurrence is degenerate (zero leading coefficient)")]
    DegenerateOperand,

    #[error("columns are linearly independent; no dependency exists")]
    NoDependency,

    #[error("indices must be sorted ascending")]
    UnsortedIndices,

    #[error("malformed interval ({lo}, {hi})")]
    MalformedInterval { lo: u64, hi: u64 },

    #[error("|x| = {x} is not inside the radius {rho}")]
    RadiusViolated { x: String, rho: String },

    #[error("element {0} is not invertible")]
    NotInvertible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
