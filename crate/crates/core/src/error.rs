use thiserror::Error;

/// Errors raised by lattice, spectral and group operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not square")]
    NotSquare,

    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,

    #[error("zero vector")]
    ZeroVector,

    #[error("vector is not primitive")]
    NotPrimitive,

    #[error("vector is not isotropic (square {0})")]
    NotIsotropic(String),

    #[error("lattice is not hyperbolic (signature {0})")]
    NotHyperbolic(String),

    #[error("lattice is not negative definite (signature {0})")]
    NotNegativeDefinite(String),

    #[error("reference vector does not have positive square")]
    BadOrientation,

    #[error("orientation undefined: vector pairs to zero with the reference vector")]
    OrientationUndefined,

    #[error("gram not preserved: matrix is not an isometry")]
    NotIsometry,

    #[error("isometry does not preserve the positive cone")]
    NotInPositiveConeGroup,

    #[error("vectors do not span a primitive sublattice of rank {0}")]
    NotPrimitiveSublattice(usize),

    #[error("invalid root lattice {family}{rank}")]
    InvalidRootLattice { family: char, rank: usize },

    #[error("lattice is odd; transvections need an even lattice")]
    OddLattice,

    #[error("transvection precondition violated: {0}")]
    TransvectionPrecondition(&'static str),

    #[error("rescale factor must be nonzero")]
    ZeroScale,

    #[error("argument out of domain: {0}")]
    Domain(&'static str),

    #[error("generator index {index} out of range ({count} generators)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("generator g{0} is not of null entropy (its power is not unipotent)")]
    NotNullEntropy(usize),

    #[error("generator powers have no common fixed vector")]
    NonUnipotentPowerGroup,

    #[error("vector is not fixed by generator g{0}")]
    NotFixed(usize),

    #[error("element does not fix the isotropic vector")]
    ElementNotFixing,

    #[error("element is not in the kernel of the descent map")]
    NotInKernel,

    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
