use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {0} is not in this group")]
    InvalidElement(String),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("{what} exceeds the size limit of {limit}")]
    SizeLimit { what: &'static str, limit: usize },

    #[error("inconsistent action table: {0}")]
    InconsistentAction(String),

    #[error("vertex map is not total: {0}")]
    NotTotal(String),

    #[error("generating set does not cover the graph support (missing {0})")]
    SupportNotCovered(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("identity is not in the configuration domain")]
    MissingIdentity,

    #[error("action is not free: {0} and {1} give the same point")]
    NonFree(String, String),

    #[error("no allowed pattern matches at {0}")]
    Unmatched(String),

    #[error("coloring is not separated as required: {0}")]
    NotSeparated(String),

    /// A check that a proven statement guarantees came out false. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status for this error: 2 for bad input, 3 for exceeded
    /// limits, 4 for invariant violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 4,
            Error::SizeLimit { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
