use thiserror::Error;

use crate::kind::MonoidKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient sizes differ: n={left} vs n={right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("point {point} is outside 1..={n}")]
    PointOutOfRange { point: usize, n: usize },

    #[error("ambient size must be at least {min}, got n={n}")]
    InvalidN { n: usize, min: usize },

    #[error("domain point {0} appears more than once")]
    DuplicateDomain(usize),

    #[error("image point {0} appears more than once (map is not injective)")]
    NotInjective(usize),

    #[error("distance sequence needs at least two points, got {0}")]
    UndefinedSequence(usize),

    #[error("sets have different sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("non-canonical {what}: {input:?} (canonical form is {canonical:?})")]
    NonCanonical {
        what: &'static str,
        input: String,
        canonical: String,
    },

    #[error("duplicate element {0:?}")]
    Duplicate(String),

    #[error("{element} is not a member of {kind}")]
    NotMember { kind: MonoidKind, element: String },

    #[error("element set is not closed under inversion: inverse of {0} is missing")]
    NotInverse(String),

    #[error("generators do not generate {kind}_{n}: closure has {got} elements, expected {expected}")]
    NotGenerating {
        kind: MonoidKind,
        n: usize,
        got: usize,
        expected: u128,
    },

    #[error("unknown generator {name:?} for {kind}_{n}")]
    UnknownGenerator { kind: MonoidKind, n: usize, name: String },

    #[error("no {what} for {kind}")]
    Unsupported { kind: MonoidKind, what: &'static str },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
