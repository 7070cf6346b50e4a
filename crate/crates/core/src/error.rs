use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("topic {topic} out of range (graph has {topic_count} topics)")]
    TopicOutOfRange { topic: usize, topic_count: usize },

    #[error("stance value {0} is not one of -1, 0, 0.5, 1")]
    OffGridStance(f64),

    #[error("{0}")]
    InvalidParameter(String),

    #[error("stance vectors have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("stance vectors must have at least one topic")]
    NoTopics,

    #[error("an unknown stance cannot influence another node")]
    UnknownInfluencer,

    #[error("perseverance update needs at least one influence event")]
    NoEvents,

    #[error("node universes differ: {0}")]
    UniverseMismatch(String),

    #[error("trace is empty")]
    EmptyTrace,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Format(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}
