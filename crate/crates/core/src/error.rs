use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid leg positions: {0}")]
    InvalidLegs(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("ring is not nilpotent")]
    NotNilpotent,
    #[error("invalid brace: {0}")]
    InvalidBrace(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("subset is not closed under the solution map: pair ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("induced retraction is ill-defined: {0}")]
    IllDefinedRetraction(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("memory budget exceeded: {needed} basis states > {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("cocycle condition fails at pair ({x}, {y})")]
    CocycleViolation { x: usize, y: usize },
    #[error("grid bound {bound} is below the structural degree {degree} of parameter {var}")]
    GridBoundTooSmall { var: usize, degree: u32, bound: u32 },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
