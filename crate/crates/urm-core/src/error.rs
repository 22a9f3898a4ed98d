use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T> = std::result::Result<T, Error>;

/// Which transitive-ordering condition a witness triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveViolation {
    /// `uv, vw` are edges but `uw` is not.
    Closure,
    /// `uw` is an edge but neither `uv` nor `vw` is.
    Betweenness,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Witness triple `u < v < w` (in ordering positions) with `uw` an edge
    /// but `uv` or `vw` missing.
    #[error("not a proper vertex ordering: {u} < {v} < {w} with edge {u}-{w}, but {v} is not adjacent to both")]
    NotProperOrdering {
        u: VertexId,
        v: VertexId,
        w: VertexId,
    },

    #[error("not a transitive vertex ordering: witness triple {u} < {v} < {w} violates {kind:?}")]
    NotTransitiveOrdering {
        u: VertexId,
        v: VertexId,
        w: VertexId,
        kind: TransitiveViolation,
    },

    #[error("not a proper interval representation: interval of vertex {outer} strictly contains interval of vertex {inner}")]
    NotProperRep { outer: VertexId, inner: VertexId },

    #[error(
        "not a bipartite permutation instance: vertex {vertex} has neighbors on both sides of it"
    )]
    MixedSides { vertex: VertexId },

    #[error("{what} exceeds the supported bound ({actual} > {limit}): {hint}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
        hint: &'static str,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
