use thiserror::Error;

/// Failures raised by grid construction, quadrature, the centrosymmetric
/// engine and the plate solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidGridSize: grid needs at least 3 nodes, got {0}")]
    InvalidGridSize(usize),
    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),
    #[error("DegenerateGrid: {0}")]
    DegenerateGrid(String),
    #[error("InvalidOrder: derivative order must be in 2..=4, got {0}")]
    InvalidOrder(usize),
    #[error("InsufficientInteriorPoints: need at least 3 interior points, got {0}")]
    InsufficientInteriorPoints(usize),
    #[error("InvalidSize: size must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("ShapeError: {0}")]
    ShapeError(String),
    #[error("NotCentrosymmetric: matrix fails the centrosymmetry check")]
    NotCentrosymmetric,
    #[error("SingularSystem: {0}")]
    SingularSystem(String),
    #[error("SingularGeometricOperator: geometric operator cannot be inverted")]
    SingularGeometricOperator,
    #[error("ComplexSpectrum: only {found} of {requested} eigenvalues are real and positive")]
    ComplexSpectrum { requested: usize, found: usize },
    #[error("EigenSolverFailed: Schur iteration did not converge")]
    EigenSolverFailed,
    #[error("ReducedPathUnavailable: operator is not centrosymmetric")]
    ReducedPathUnavailable,
    #[error("BasisMismatch: x and y weights use different bases")]
    BasisMismatch,
    #[error("InvalidStiffness: {0}")]
    InvalidStiffness(String),
    #[error("InvalidGeometry: {0}")]
    InvalidGeometry(String),
    #[error("InvalidAnalysis: {0}")]
    InvalidAnalysis(String),
}

impl Error {
    /// The bare variant name, used by the CLI for exit messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGridSize(_) => "InvalidGridSize",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::DegenerateGrid(_) => "DegenerateGrid",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::InsufficientInteriorPoints(_) => "InsufficientInteriorPoints",
            Error::InvalidSize(_) => "InvalidSize",
            Error::ShapeError(_) => "ShapeError",
            Error::NotCentrosymmetric => "NotCentrosymmetric",
            Error::SingularSystem(_) => "SingularSystem",
            Error::SingularGeometricOperator => "SingularGeometricOperator",
            Error::ComplexSpectrum { .. } => "ComplexSpectrum",
            Error::EigenSolverFailed => "EigenSolverFailed",
            Error::ReducedPathUnavailable => "ReducedPathUnavailable",
            Error::BasisMismatch => "BasisMismatch",
            Error::InvalidStiffness(_) => "InvalidStiffness",
            Error::InvalidGeometry(_) => "InvalidGeometry",
            Error::InvalidAnalysis(_) => "InvalidAnalysis",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
