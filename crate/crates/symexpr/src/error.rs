use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: expected {expected}, got {got}")]
    ChartMismatch { expected: String, got: String },
    #[error("invalid chart: {0}")]
    BadChart(String),
    #[error("division by identically zero scalar field")]
    DivisionByZero,
    #[error("coordinate index {index} out of range for chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("denominator vanishes at the given point")]
    Pole,
    #[error("point has {got} values but chart has dimension {dim}")]
    PointLength { got: usize, dim: usize },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown coordinate `{name}` at byte {position}")]
    UnknownCoordinate { name: String, position: usize },
}

impl Error {
    pub fn chart_mismatch(expected: &crate::Chart, got: &crate::Chart) -> Self {
        Error::ChartMismatch {
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}
