use thiserror::Error;

use crate::lattice::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertices {0:?} and {1:?} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("path traverses edge {0:?} more than once")]
    RepeatedEdge(EdgeId),
    #[error("path needs at least one edge")]
    EmptyPath,
    #[error("closed path does not return to its start")]
    NotClosed,
    #[error("operation requires an open path")]
    ClosedPath,
    #[error("edge {0:?} lies outside the working patch")]
    OutsidePatch(EdgeId),
    #[error("patch has {0} edges, at most 128 are supported")]
    PatchTooLarge(usize),
    #[error("region size must be at least 1, got {0}")]
    InvalidSize(u32),
    #[error("vertex {0:?} has odd degree in the configuration")]
    OddDegree(VertexId),
    #[error("cone does not intersect the working region")]
    ConeOutsideRegion,
    #[error("cone is too narrow to contain the truncated path at depth {0}")]
    ConeTooNarrow(f64),
    #[error("truncation depth must exceed 2, got {0}")]
    InvalidDepth(f64),
    #[error("path does not start on the patch boundary")]
    NotBoundaryAnchored,
    #[error("no sign convention produces a ground state")]
    NoConvention,
    #[error("state norm scales have incompatible parity")]
    ScaleParity,
    #[error("label index {0} out of range")]
    BadLabel(usize),
    #[error("invalid anyon data: {0}")]
    InvalidData(String),
    #[error("{0}")]
    Geometry(String),
    #[error("operator is not a scalar multiple of the identity")]
    NotScalar,
    #[error("operators are not proportional")]
    NotProportional,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
