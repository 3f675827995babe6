use thiserror::Error;

use crate::zeros::RootSet;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Precision,
    NonConvergence,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("branch error: {0}")]
    Branch(String),

    #[error("contour collision: {0}")]
    ContourCollision(String),

    #[error("routing error: {0}")]
    Routing(String),

    #[error("degenerate recurrence state at n = {n}: {what}")]
    Degenerate { n: usize, what: String },

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("tracing failed: {0}")]
    Tracing(String),

    #[error("root iteration stopped after {iterations} sweeps with {unconverged} unconverged roots")]
    RootsNotConverged {
        iterations: usize,
        unconverged: usize,
        partial: Box<RootSet>,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_)
            | Error::Singularity(_)
            | Error::Branch(_)
            | Error::ContourCollision(_)
            | Error::Routing(_)
            | Error::Degenerate { .. }
            | Error::Protocol(_)
            | Error::OutOfScope(_) => ErrorKind::Domain,
            Error::Precision(_) => ErrorKind::Precision,
            Error::NonConvergence(_) | Error::Tracing(_) | Error::RootsNotConverged { .. } => ErrorKind::NonConvergence,
            Error::Io(_) | Error::Json(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
