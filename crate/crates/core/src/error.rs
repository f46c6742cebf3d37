use alloc::string::String;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element is not invertible (zero divisor)")]
    NotInvertible,
    #[error("generators {0} and {1} do not commute")]
    NotCommutative(usize, usize),
    #[error("torus operators are not simultaneously diagonalizable over F_p")]
    NotSimultaneouslyDiagonalizable,
    #[error("group is not p-elementary abelian of the declared rank")]
    NotElementaryAbelian,
    #[error("no Artin-Schreier generator: the linear system is inconsistent")]
    NoGenerator,
    #[error("algebra dimension over its centre is not an even power of p")]
    NotPPowerSquareDimension,
    #[error("family is linearly dependent over the coefficient field")]
    DependentInput,
    #[error("generated subalgebra is not a field")]
    NotAField,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("Lie algebra is not restricted: {0}")]
    NotRestricted(String),
    #[error("element {0} fails the centrality check")]
    CentralityFailure(usize),
    #[error("element has degree greater than one")]
    DegreeTooHigh,
    #[error("invalid torus: {0}")]
    InvalidTorus(String),
    #[error("structure tensor is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
