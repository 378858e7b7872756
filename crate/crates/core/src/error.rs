use thiserror::Error;

/// Errors raised by graph ingestion, the coloring pipeline and its tripwires.
///
/// The tripwire variants (`DiagonalContradiction`, `SchemeExhausted`,
/// `CompletenessBreach`, `SumMismatch`) indicate an internal invariant was
/// broken; they are never expected on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} lists itself as a neighbor")]
    LoopEdge { vertex: usize },

    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: usize, neighbor: usize },

    #[error("vertex {vertex} lists {neighbor} but {neighbor} does not list {vertex}")]
    AsymmetricAdjacency { vertex: usize, neighbor: usize },

    #[error("vertex {vertex} lists neighbor {neighbor}, outside 0..{bound}")]
    VertexOutOfRange { vertex: usize, neighbor: usize, bound: usize },

    #[error(
        "rotation system is not a planar embedding: component of vertex {root} has \
         n - m + f = {vertices} - {edges} + {faces} != 2"
    )]
    NotPlanarEmbedding { root: usize, vertices: usize, edges: usize, faces: usize },

    #[error("face through vertex {vertex} of length {length} admits no simple diagonal")]
    UntriangulatableFace { vertex: usize, length: usize },

    #[error("graph is not a triangulation: {reason}")]
    NotTriangulation { reason: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown named graph `{0}`")]
    UnknownName(String),

    #[error("Kempe chains never use the fifth color (requested pair {0}/{1})")]
    BadColorPair(u8, u8),

    #[error("vertex {vertex} has more than four neighbors in colors 1..4 using all four")]
    TooManyColoredNeighbors { vertex: usize },

    #[error("both diagonal Kempe swaps failed around vertex {vertex}")]
    DiagonalContradiction { vertex: usize },

    #[error("no fifth-color candidate of `{entry}` yields a valid peel")]
    SchemeExhausted { entry: String },

    #[error("minimum degree >= 5 but no catalog configuration matches ({vertices} vertices)")]
    CompletenessBreach { vertices: usize },

    #[error("final charges sum to {found}, expected 12")]
    SumMismatch { found: String },

    #[error("catalog entry `{entry}` fails scenario `{scenario}`: {detail}")]
    ValidationFailure { entry: String, scenario: String, detail: String },
}

impl Error {
    /// True for the internal tripwires that signal a broken invariant rather
    /// than bad input.
    pub fn is_tripwire(&self) -> bool {
        matches!(
            self,
            Error::DiagonalContradiction { .. }
                | Error::SchemeExhausted { .. }
                | Error::CompletenessBreach { .. }
                | Error::SumMismatch { .. }
                | Error::TooManyColoredNeighbors { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
