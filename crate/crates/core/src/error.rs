use thiserror::Error;

/// Errors raised by instance construction, the solvers and the pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("{groups} group labels given for {n} points")]
    LengthMismatch { groups: usize, n: usize },

    #[error("group labels are 1-based; point {point} has label 0")]
    ZeroGroupLabel { point: usize },

    #[error("group {group} has no points")]
    EmptyGroup { group: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("balance parameter must be a positive integer, got {0}")]
    NonIntegralBalance(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("group sizes differ: {sizes:?}")]
    GroupSizesUnequal { sizes: Vec<usize> },

    #[error("instance too large for exhaustive search: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("bipartite sides differ in size: {left} vs {right}")]
    SideMismatch { left: usize, right: usize },

    #[error("component containing point {point} is not a star")]
    ComponentNotAStar { point: usize },

    #[error("point {point} is not covered by any star")]
    UncoveredPoint { point: usize },

    #[error("no path from cluster vertex {from} to {to}")]
    Unreachable { from: usize, to: usize },

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that mean the instance admits no valid clustering.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible(_) | Error::GroupSizesUnequal { .. })
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "not_square",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::ZeroGroupLabel { .. } => "zero_group_label",
            Error::EmptyGroup { .. } => "empty_group",
            Error::InvalidInput(_) => "invalid_input",
            Error::NonIntegralBalance(_) => "non_integral_balance",
            Error::Infeasible(_) => "infeasible",
            Error::GroupSizesUnequal { .. } => "group_sizes_unequal",
            Error::TooLarge { .. } => "too_large",
            Error::SideMismatch { .. } => "side_mismatch",
            Error::ComponentNotAStar { .. } => "component_not_a_star",
            Error::UncoveredPoint { .. } => "uncovered_point",
            Error::Unreachable { .. } => "unreachable",
            Error::BoundViolated(_) => "bound_violated",
            Error::Io(_) => "io",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
