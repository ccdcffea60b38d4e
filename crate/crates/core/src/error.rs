use alloc::string::String;

/// Everything that can go wrong inside the core engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: strong negation `~` may only be applied to an atom")]
    StrongNegOnNonAtom { line: usize, column: usize },

    #[error("invalid truth value `{0}`: expected a rational in [0,1]")]
    InvalidTruth(String),

    #[error("operator {operator} takes {expected} argument(s), got {got}")]
    Arity {
        operator: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("atom `{0}` is not in the signature of the interpretation")]
    UnknownAtom(String),

    #[error("strong negation is not supported here; eliminate it with the nneg transform first")]
    StrongNegUnsupported,

    #[error("formula is not Boolean-shaped: {0}")]
    NotBooleanShaped(String),

    #[error("atom `{atom}` has value {value}, which is not a point of the lattice with denominator {denominator}")]
    OffLattice {
        atom: String,
        value: String,
        denominator: u32,
    },

    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    ResourceLimit { candidates: u128, cap: u64 },

    #[error("interpretations are over different signatures")]
    SignatureMismatch,

    #[error("name collision: `{0}` already occurs in the formula")]
    NameCollision(String),

    #[error("invalid interval [{lower}, {upper}]")]
    InvalidInterval { lower: String, upper: String },

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("N5 evaluation supports only the standard negator, found {0}")]
    UnsupportedNegator(&'static str),

    #[error("arithmetic overflow in exact rational computation")]
    Overflow,

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = core::result::Result<T, Error>;
