use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubset(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(u64, u64),

    #[error("invalid fermionic system: {0}")]
    InvalidFermionSystem(String),

    #[error("invalid orbital subset: {0}")]
    InvalidOrbitals(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("test spectrum lies on a cubicle wall: entries {0} and {1} of the sum sequence tie")]
    CubicleWall(usize, usize),

    #[error("zero coefficient; the inequality is not produced by this triple")]
    ZeroCoefficient,

    #[error("unknown system descriptor: {0}")]
    UnknownSystem(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("family {family} does not apply: {reason}")]
    NotApplicable { family: String, reason: String },

    #[error("unsupported size: {0}")]
    Unsupported(String),

    #[error("infeasible system: {0}")]
    Infeasible(String),

    #[error("arithmetic overflow in exact computation")]
    Overflow,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
