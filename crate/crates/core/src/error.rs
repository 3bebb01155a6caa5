use thiserror::Error;

/// Errors produced by graph construction, form arithmetic and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("orientation is not acyclic: directed cycle {}", format_cycle(.cycle))]
    Orientation { cycle: Vec<usize> },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0:?} is not a clique of the graph")]
    NotAClique(Vec<usize>),

    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),

    #[error("cliques of size {needed} are required but enumeration was capped at {cap}")]
    Truncated { needed: usize, cap: usize },

    #[error("vertices {0} and {1} are not adjacent")]
    NonAdjacent(usize, usize),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not a group element: {0}")]
    NotUnitary(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("{count} free edges outside the spanning forest; the grid scan supports at most {max}")]
    TooManyFreeEdges { count: usize, max: usize },

    #[error("unknown solution family set {0:?} (expected K3 or K4)")]
    UnknownFamily(String),

    #[error("potential {0:?} is not supported here; only \"zero\" is implemented")]
    UnsupportedPotential(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_cycle(cycle: &[usize]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
    if let Some(first) = cycle.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}

impl Error {
    /// True for failures caused by malformed or inconsistent user input, as
    /// opposed to an internal identity failing.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Contract(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
