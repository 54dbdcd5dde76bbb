use thiserror::Error;

use crate::espgroup::GroupError;
use crate::fgeom::GeometryError;
use crate::triples::TripleError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("inconsistent labeling: {0}")]
    InconsistentLabeling(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
