use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] symexpr::Error),
    #[error("chart mismatch between graded operands")]
    ChartMismatch,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("expected a {expected} in this context")]
    KindMismatch { expected: &'static str },
    #[error("interior product needs a form of degree at least 1")]
    InteriorOfScalar,
    #[error("interior product contracts against a degree-1 multivector field")]
    NotAVectorField,
    #[error("pairing is defined for bivector fields")]
    NotABivector,
    #[error("map must have one component per target coordinate")]
    BadMapComponents,
    #[error("pullback denominator vanishes identically under the map")]
    PullbackPole,
}
