use route_skyline::graph::GraphError;
use route_skyline::oracle::OracleError;
use route_skyline::SearchError;
use std::path::PathBuf;
use thiserror::Error;

/// Process exit codes. `2` is also what clap uses for usage errors.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const INVALID_NODE: i32 = 4;
    pub const UNREACHABLE: i32 = 5;
    pub const MISMATCH: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("tasks file line {line}: {reason}")]
    TaskFormat { line: usize, reason: String },
    #[error("node {0} does not exist in the graph")]
    InvalidNode(u64),
    #[error("{0}")]
    Usage(String),
    #[error("could not find {wanted} reachable task pairs after {retries} attempts")]
    TooFewTasks { wanted: usize, retries: usize },
    #[error("result mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("failed to write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graph { .. } | CliError::Io(_) | CliError::TaskFormat { .. } => exit::INPUT,
            CliError::InvalidNode(_) | CliError::Search(SearchError::InvalidNode(_)) => {
                exit::INVALID_NODE
            }
            CliError::Usage(_) | CliError::TooFewTasks { .. } => exit::USAGE,
            CliError::Oracle(OracleError::TooLarge { .. }) => exit::USAGE,
            CliError::Oracle(OracleError::InvalidNode(_)) => exit::INVALID_NODE,
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::Search(_) | CliError::Output(_) => exit::INTERNAL,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
