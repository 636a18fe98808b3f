use std::fmt;

/// Errors for graph construction, enumeration and the survey pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An edge list contained a loop `(v, v)`.
    SelfLoop { vertex: usize },
    /// An edge endpoint was `>= n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// More vertices than a `VertexSet` (one machine word) can hold.
    CapacityExceeded { n: usize, limit: usize },
    /// `path_branch_of` was asked for the branch of a non-leaf.
    NotALeaf { vertex: usize },
    NotATree,
    NotAForest,
    /// The brute-force oracle refuses graphs beyond its subset-scan budget.
    TooLargeForOracle { n: usize, limit: usize },
    MalformedGraph6 { reason: String },
    InvalidParameters { reason: String },
    Parse { line: usize, reason: String },
    /// A table or check needed survey results that were not computed.
    MissingSurveyData { n: usize },
    /// A sampled tree disagreed between the enumerator and the oracle.
    OracleMismatch { n: usize, tree_index: u64 },
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            Error::CapacityExceeded { n, limit } => {
                write!(f, "{n} vertices exceeds the supported maximum of {limit}")
            }
            Error::NotALeaf { vertex } => write!(f, "vertex {vertex} is not a leaf"),
            Error::NotATree => write!(f, "graph is not a tree"),
            Error::NotAForest => write!(f, "graph is not a forest"),
            Error::TooLargeForOracle { n, limit } => {
                write!(f, "{n} vertices exceeds the oracle limit of {limit}")
            }
            Error::MalformedGraph6 { reason } => write!(f, "malformed graph6: {reason}"),
            Error::InvalidParameters { reason } => write!(f, "invalid parameters: {reason}"),
            Error::Parse { line, reason } => write!(f, "parse error on line {line}: {reason}"),
            Error::MissingSurveyData { n } => write!(f, "no survey data for n = {n}"),
            Error::OracleMismatch { n, tree_index } => write!(
                f,
                "enumerator disagrees with oracle on tree #{tree_index} (n = {n})"
            ),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
