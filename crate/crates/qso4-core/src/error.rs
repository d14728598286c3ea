use crate::scalars::HalfInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("q0 is a root of unity: q0^{order} = 1")]
    RootOfUnity { order: u32 },
    #[error("denominator vanishes at the chosen q0")]
    DivisionByZero,
    #[error("invalid spin {0}")]
    InvalidSpin(HalfInt),
    #[error("Casimir matrix is not a multiple of the identity")]
    NotScalar,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the two forms of C'4 disagree")]
    FormMismatch,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("I21 and I43 do not commute")]
    NotCommuting,
    #[error("weight spectrum mixes classical and nonclassical eigenvalues")]
    MixedTypes,
    #[error("linear system is singular at weight ({k}, {l})")]
    SingularSystem { k: HalfInt, l: HalfInt },
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("cannot classify: {0}")]
    Unclassifiable(String),
    #[error("extension denominator is not invertible: {0}")]
    NonInvertibleDenominator(String),
    #[error("eigenvalue matches no admissible value: {0}")]
    UnrecognizedEigenvalue(String),
    #[error("decomposition {computed} differs from the closed form {expected}")]
    MismatchAgainstFormula { computed: String, expected: String },
    #[error("matrix is not diagonalizable over the field: {0}")]
    NotDiagonalizable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
