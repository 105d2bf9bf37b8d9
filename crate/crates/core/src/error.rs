use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building groups or evaluating maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),

    #[error("{what} of size {size} exceeds the corpus limit of {limit}")]
    CorpusLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("entry at (row {row}, col {col}) = {value} lies outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },

    #[error("table has no identity element")]
    NoIdentity,

    #[error("element {0} has no inverse")]
    MissingInverse(usize),

    #[error("associativity fails for ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("operands live in groups of different order ({0} vs {1})")]
    GroupMismatch(usize, usize),

    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("cannot parse subset literal {0:?}")]
    ParseSubset(String),

    #[error("{0} is not a subgroup")]
    NotSubgroup(String),

    #[error("transversality {left} ⊤ {right} fails")]
    NotTransversal { left: String, right: String },

    #[error("map error: {0}")]
    Map(String),

    #[error("torsor axioms fail: {0}")]
    TorsorViolation(String),

    #[error("map is not invertible in the deformed group")]
    NotInvertible,

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("cannot read group file: {0}")]
    GroupFile(String),
}
