use thiserror::Error;

/// Every failure the toolkit reports. Validation errors name the offending
/// edge or parameter; `code()` gives a stable machine-readable tag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("uniformity must be at least 1, got {0}")]
    InvalidUniformity(usize),

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("edge {edge:?} has {found} distinct vertices, expected {expected}")]
    WrongArity {
        edge: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("edge {edge:?} contains vertex {vertex} outside 0..{n}")]
    VertexOutOfRange {
        edge: Vec<usize>,
        vertex: usize,
        n: usize,
    },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("vertex set of size {size} exceeds the allowed {max}")]
    SetTooLarge { size: usize, max: usize },

    #[error("degree order {d} outside 0..={max}")]
    DegreeOrder { d: usize, max: usize },

    #[error("{0}")]
    Domain(String),

    #[error("target {target} exceeds per-vertex capacity {capacity}: no such edge set exists")]
    CapacityExceeded { target: u64, capacity: u64 },

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("no sign change of the defining function on the bracket: {0}")]
    NoSignChange(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidUniformity(_) => "invalid_uniformity",
            Error::TooManyVertices { .. } => "too_many_vertices",
            Error::WrongArity { .. } => "wrong_arity",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::DuplicateEdge { .. } => "duplicate_edge",
            Error::Parse { .. } => "parse",
            Error::SetTooLarge { .. } => "set_too_large",
            Error::DegreeOrder { .. } => "degree_order",
            Error::Domain(_) => "domain",
            Error::CapacityExceeded { .. } => "capacity_exceeded",
            Error::Infeasible(_) => "infeasible",
            Error::NoSignChange(_) => "no_sign_change",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
