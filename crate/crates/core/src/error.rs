use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("relation table has {got} entries, expected {expected}")]
    BadTableSize { expected: usize, got: usize },
    #[error("operation needs a nonempty carrier")]
    EmptyCarrier,
    #[error("set is not downward-closed")]
    NotDownwardClosed,
    #[error("set is empty")]
    EmptySet,
    #[error("multiplication table is missing the entry for ({0}, {1})")]
    MissingProduct(String, String),
    #[error("multiplication table defines ({0}, {1}) twice")]
    DuplicateProduct(String, String),
    #[error("no prime factorization found for `{0}`; the monoid axioms must be violated")]
    NoFactorization(String),
    #[error("idempotent letters must be upward-closed (non-idempotent letters downward-closed); `{0}` breaks this")]
    IdemNotUpwardClosed(String),
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("input too large for the brute-force search: {0}")]
    TooLarge(String),
    #[error("level {requested} exceeds the configured cap {cap}")]
    LevelCapExceeded { requested: usize, cap: usize },
    #[error("level construction exceeds the member bound {bound} ({what})")]
    CombinatorialBlowup { bound: usize, what: String },
    #[error("oracle sweep exceeds its scale limits: {0}")]
    ScaleExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
