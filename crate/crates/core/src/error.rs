use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field of order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u64, max: u64 },
    #[error("encoding {value} is not an element of the field of order {order}")]
    InvalidElement { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields (orders {left} and {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("fields of orders {p} and {q} have the same characteristic")]
    SameCharacteristic { p: u32, q: u32 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("{what}: {actual} exceeds the desk-scale bound {limit} (use --force to override)")]
    TooLarge {
        what: &'static str,
        actual: u64,
        limit: u64,
    },
    #[error("subspace is not invariant under the shift operator")]
    NotInvariant,
    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("subspace is not closed under x -> f(ax)")]
    NotActionClosed,
    #[error("lattice input contains two elements with equal unary parts")]
    DuplicateElements,
    #[error("the order relation does not define a lattice: {0}")]
    NotALattice(String),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("function is not supported on the line through (1,0,...,0)")]
    NotLineSupported,
    #[error("function does not map 0 to 0")]
    NotZeroPreserving,
    #[error("invalid clonoid identifier: {0}")]
    InvalidClonoid(String),
    #[error("invalid function table: {0}")]
    InvalidTable(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAPrimePower(_) => "NotAPrimePower",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::InvalidElement { .. } => "InvalidElement",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SameCharacteristic { .. } => "SameCharacteristic",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotInvariant => "NotInvariant",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NotActionClosed => "NotActionClosed",
            Error::DuplicateElements => "DuplicateElements",
            Error::NotALattice(_) => "NotALattice",
            Error::ZeroDirection => "ZeroDirection",
            Error::NotLineSupported => "NotLineSupported",
            Error::NotZeroPreserving => "NotZeroPreserving",
            Error::InvalidClonoid(_) => "InvalidClonoid",
            Error::InvalidTable(_) => "InvalidTable",
            Error::Parse { .. } => "ParseError",
        }
    }

    /// Guard violations are reported separately from domain errors.
    pub fn is_guard_violation(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::FieldTooLarge { .. })
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

/// Desk-scale guard switch; `force` bypasses every enumeration bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Guard {
    pub force: bool,
}

impl Guard {
    pub const DESK: Guard = Guard { force: false };
    pub const FORCE: Guard = Guard { force: true };

    pub(crate) fn check(self, what: &'static str, actual: u64, limit: u64) -> Result<()> {
        if !self.force && actual > limit {
            return Err(Error::TooLarge {
                what,
                actual,
                limit,
            });
        }
        Ok(())
    }
}
