use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] symexpr::Error),
    #[error(transparent)]
    Calc(#[from] extcalc::Error),
    #[error("chart dimension {dim} is not even")]
    OddDimension { dim: usize },
    #[error("chart dimension {dim} is not odd")]
    EvenDimension { dim: usize },
    #[error("form is not contact: the defining top form vanishes identically")]
    NotContact,
    #[error("2-form is not symplectic")]
    NotSymplectic,
    #[error("linear system is singular or inconsistent")]
    SingularSolve,
    #[error("characteristic distribution is degenerate at a sample point")]
    DegenerateDistribution,
    #[error("conformal-symplectic certification failed: {0}")]
    LcsCertification(&'static str),
    #[error("jacobi pair fails its defining bracket identities")]
    NotJacobi,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected a degree-{expected} input, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
}
