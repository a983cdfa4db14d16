use alloc::string::String;
use core::fmt;

use crate::graph::{EdgeId, VertexId};

/// Everything that can go wrong in this crate.
///
/// Most variants signal a caller bug (unknown ids, violated preconditions);
/// `TooLarge` is the only one a well-formed request can produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    UnknownVertex(VertexId),
    UnknownEdge(EdgeId),
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    Loop(EdgeId),
    EmptyEdgeSet,
    NotIncident {
        vertex: VertexId,
        edge: EdgeId,
    },
    /// Lifting two edges that end at the same vertex would create a loop.
    DegenerateLift,
    NotAPath,
    IdCollision(String),
    InvalidBoundary(&'static str),
    InvalidOrientation(&'static str),
    InvalidTriTree(&'static str),
    AdjacentElements,
    NotACrystal(&'static str),
    InvalidBullPair(&'static str),
    Disconnected,
    CutEdge(EdgeId),
    InvalidPartition(&'static str),
    InvalidParameter(&'static str),
    /// The exhaustive oracles refuse inputs beyond their configured size.
    TooLarge {
        edges: usize,
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Error::Loop(e) => write!(f, "edge {e} would be a loop"),
            Error::EmptyEdgeSet => f.write_str("edge set is empty"),
            Error::NotIncident { vertex, edge } => {
                write!(f, "edge {edge} is not incident to vertex {vertex}")
            }
            Error::DegenerateLift => f.write_str("lifted edges share their far endpoint"),
            Error::NotAPath => f.write_str("edge sequence is not a path with distinct ends"),
            Error::IdCollision(id) => write!(f, "id {id} used by both operands"),
            Error::InvalidBoundary(why) => write!(f, "invalid Z3-boundary: {why}"),
            Error::InvalidOrientation(why) => write!(f, "invalid orientation: {why}"),
            Error::InvalidTriTree(why) => write!(f, "invalid triangle-tree: {why}"),
            Error::AdjacentElements => f.write_str("triangle-path ends are identical or adjacent"),
            Error::NotACrystal(why) => write!(f, "not a crystal: {why}"),
            Error::InvalidBullPair(why) => write!(f, "invalid bull pair: {why}"),
            Error::Disconnected => f.write_str("graph is disconnected"),
            Error::CutEdge(e) => write!(f, "edge {e} is a cut edge"),
            Error::InvalidPartition(why) => write!(f, "invalid spanning partition: {why}"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::TooLarge { edges, limit } => {
                write!(f, "too large for oracle: {edges} edges, limit {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
