use thiserror::Error;

/// Errors produced by the geometry, evaluation and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation was called without its precondition holding.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Validation(String),
    /// A mesh facet matches more than one lateral facet of the cone.
    #[error("facet {facet} is ambiguous: {message}")]
    Classification { facet: usize, message: String },
    /// A search family does not fit the cone it is applied to.
    #[error("configuration error: {0}")]
    Configuration(String),
    /// The feasible region is empty or has no interior.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// An optimization problem has no finite optimum.
    #[error("unbounded: {0}")]
    Unbounded(String),
    /// A cutting plane fails to bound the cone.
    #[error("unbounded cut: {0}")]
    UnboundedCut(String),
    /// A set has zero volume or zero relative perimeter.
    #[error("degenerate set: {0}")]
    Degenerate(String),
    /// The linear programming backend failed.
    #[error("linear program failed: {0}")]
    Solver(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the
    /// numerics of a well-formed problem.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Precondition(_)
                | Error::Validation(_)
                | Error::Classification { .. }
                | Error::Configuration(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
