use thiserror::Error;

use crate::multigraph::{EdgeId, VertexId};

/// Crate-wide error type. Every fallible operation returns one of these;
/// the CLI maps them to exit code 1 with a one-line diagnostic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex: {0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge: {0}")]
    UnknownEdge(EdgeId),

    #[error("duplicate id: {0}")]
    DuplicateId(String),

    #[error("graph has no root vertex")]
    MissingRoot,

    #[error("radius mismatch: {left} half-steps vs {right} half-steps")]
    RadiusMismatch { left: u32, right: u32 },

    #[error("invalid closed set: {reason}")]
    InvalidClosedSet { reason: String },

    #[error("closed set has a dead end at word \"{word}\"")]
    ClosedSetDeadEnd { word: String },

    #[error("need {needed} edges fully outside the radius-{radius} ball, found {available}")]
    NotEnoughEdgesOutside {
        needed: usize,
        available: usize,
        radius: u32,
    },

    #[error("surgery not applicable: {0}")]
    InvalidSurgery(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("descriptor not realizable in {space}: {reason}")]
    Unrealizable { space: String, reason: String },

    #[error("invalid pants complex: {0}")]
    InvalidPants(String),

    #[error("unknown builtin graph: {0}")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Short machine-readable category tag, used as the CLI diagnostic prefix.
    pub fn category(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::DuplicateId(_) => "id",
            Error::MissingRoot => "root",
            Error::RadiusMismatch { .. } => "radius",
            Error::InvalidClosedSet { .. } | Error::ClosedSetDeadEnd { .. } => "closed-set",
            Error::NotEnoughEdgesOutside { .. } | Error::InvalidSurgery(_) => "surgery",
            Error::InvalidDescriptor(_) => "descriptor",
            Error::Unrealizable { .. } => "realize",
            Error::InvalidPants(_) => "pants",
            Error::UnknownBuiltin(_) | Error::InvalidParameter(_) => "argument",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
