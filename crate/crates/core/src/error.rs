use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not invertible")]
    Singular,

    #[error("not a chain complex: d1 * d2 != 0")]
    NotAComplex,

    #[error("groupoid fails the Kan conditions: {0}")]
    KanViolation(String),

    #[error("horn index out of range: q = {q}, k = {k}")]
    HornIndexOutOfRange { q: usize, k: usize },

    #[error("incompatible horn: {0}")]
    IncompatibleHorn(String),

    #[error("matrix is not antisymmetric at entry ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("form is not normalized: {0}")]
    NotNormalized(String),

    #[error("form is not multiplicative: {0}")]
    NotMultiplicative(String),

    #[error("pairing is not symmetric")]
    NotSymmetric,

    #[error("pairing is degenerate")]
    DegeneratePairing,

    #[error("image of the adjoint boundary is not isotropic")]
    IsotropyViolation,

    #[error("compatibility equation C41(d w1, w2) = C32(d w2, w1) + C32(w1, d w2) fails at basis pair ({0}, {1})")]
    IncompatiblePair(usize, usize),

    #[error("not closed under the boundary: {0}")]
    NotASubcomplex(String),

    #[error("requires the symmetric representative (C32 symmetric)")]
    NotSymmetricRepresentative,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
