use std::fmt;

use thiserror::Error;

use crate::graph::ShapeClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Structural reasons a graph is rejected by the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    NoVertices,
    VertexOutOfRange { vertex: usize, order: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    Disconnected,
    /// No cycle carries an imaginary weight; the characterization results do not apply.
    NotInModel,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NoVertices => write!(f, "graph has no vertices"),
            ModelError::VertexOutOfRange { vertex, order } => {
                write!(f, "vertex {vertex} is outside 1..={order}")
            }
            ModelError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            ModelError::DuplicateEdge(u, v) => write!(f, "more than one edge between {u} and {v}"),
            ModelError::Disconnected => write!(f, "underlying graph is not connected"),
            ModelError::NotInModel => write!(f, "no cycle has weight +i or -i"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Model(ModelError),

    #[error("expected a {expected} graph, found {found}")]
    Shape { expected: &'static str, found: ShapeClass },

    #[error("matrix is singular")]
    Singular,

    #[error("size limit exceeded: {0}")]
    Limit(String),

    #[error("precondition not met: {0}")]
    Precondition(String),
}

impl From<ModelError> for Error {
    fn from(e: ModelError) -> Self {
        Error::Model(e)
    }
}
