use thiserror::Error;

/// Errors produced by graph construction, walks, metrics and classification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("singular covariance even with ridge {lambda:e}: {detail}")]
    SingularCovariance { lambda: f64, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name: name.into(),
        reason: reason.into(),
    }
}
