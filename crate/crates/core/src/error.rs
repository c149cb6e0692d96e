use crate::exactnum::NumError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("rank must be at least 1")]
    Rank,
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("fact rejected: {0}")]
    Fact(String),
    #[error("malformed {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
