use thiserror::Error;

use crate::planar::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not 2-connected (cut vertex {0})")]
    NotBiconnected(VertexId),

    #[error("graph is not 3-connected")]
    NotTriconnected,

    #[error("face bounded by fewer than 3 edges")]
    ShortFace,

    #[error("graph is not multi-triangulated")]
    NotMultiTriangulated,

    #[error("no edge between {0} and {1}")]
    NoSuchEdge(VertexId, VertexId),

    #[error("loop at vertex {0}")]
    Loop(VertexId),

    #[error("graph is not planar")]
    NonPlanar,

    #[error("graph is not outer-planar in the given embedding")]
    NotOuterPlanar,

    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("rotation system is malformed: {0}")]
    MalformedRotation(String),

    #[error("graph has {n} vertices, above the exact-solver cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
