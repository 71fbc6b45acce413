use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not an eigenvalue")]
    NotEigenvalue(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("parameters are not okubo-constrained: gamma1 = gamma2 = (alpha1+alpha2+beta1+beta2)/2 + 1 required")]
    NotOkuboConstrained,
    #[error("admissibility violated: {0}")]
    Admissibility(String),
    #[error("degenerate chart: {0}")]
    DegenerateChart(String),
    #[error("d-condition fails: expression evaluates to {value}, expected d^2 = {expected}")]
    DConditionFails { value: String, expected: String },
    #[error("eigenvector degeneracy: {0}")]
    EigenvectorDegeneracy(String),
    #[error("block structure violated: {0}")]
    BlockStructure(String),
    #[error("vanishing factor {0}")]
    VanishingFactor(String),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("gamma = {0} is a nonpositive integer")]
    InvalidGamma(f64),
    #[error("outside disc: {0}")]
    OutsideDisc(String),
    #[error("exponent index {index} out of range (0..{count})")]
    ExponentIndex { index: usize, count: usize },
    #[error("inconsistent initial constraint: {0}")]
    InconsistentConstraint(String),
    #[error("integrability conditions violated: {0}")]
    IntegrabilityConditions(String),
    #[error("quadrature did not converge: successive refinements differ by {estimate:e}")]
    QuadratureNonConvergence { estimate: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Singular => "singular",
            Error::NotEigenvalue(_) => "not_an_eigenvalue",
            Error::Parse(_) => "parse",
            Error::DegenerateParameters(_) => "degenerate_parameters",
            Error::NotOkuboConstrained => "not_okubo_constrained",
            Error::Admissibility(_) => "admissibility_violated",
            Error::DegenerateChart(_) => "degenerate_chart",
            Error::DConditionFails { .. } => "d_condition_fails",
            Error::EigenvectorDegeneracy(_) => "eigenvector_degeneracy",
            Error::BlockStructure(_) => "block_structure",
            Error::VanishingFactor(_) => "vanishing_factor",
            Error::InternalDisagreement(_) => "internal_disagreement",
            Error::InvalidGamma(_) => "invalid_gamma",
            Error::OutsideDisc(_) => "outside_disc",
            Error::ExponentIndex { .. } => "exponent_index",
            Error::InconsistentConstraint(_) => "inconsistent_constraint",
            Error::IntegrabilityConditions(_) => "integrability_conditions",
            Error::QuadratureNonConvergence { .. } => "quadrature_non_convergence",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
