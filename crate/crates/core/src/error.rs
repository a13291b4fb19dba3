use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration norm must be negative, got {0}")]
    NonNegativeNorm(i64),
    #[error("sublattice is not negative definite")]
    NotNegativeDefinite,
    #[error("basis vector {0} is not orthogonal to the canonical class")]
    NotInKPerp(String),
    #[error("class {0} is not a root (square must be -2)")]
    NotARoot(String),
    #[error("class {0} is not real for a model with {1} imaginary pair(s)")]
    NotReal(String, usize),
    #[error("class {0} is not in the lattice spanned by the basis")]
    NotInSpan(String),
    #[error("odd quadratic value {0} on a class that must carry an even one")]
    OddQhat(u8),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid Cremona indices: {0}")]
    BadIndices(String),
    #[error("embedding for {class} rejected: {reason}")]
    Embedding { class: String, reason: String },
    #[error("enumeration exceeded node limit of {0}")]
    NodeLimit(u64),
    #[error("unknown class id `{0}`")]
    UnknownClass(String),
    #[error("class and vanishing root come from different models ({0} vs {1})")]
    ProvenanceMismatch(String, String),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
