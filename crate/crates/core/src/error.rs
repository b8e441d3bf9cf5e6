use alloc::string::String;
use core::fmt;

use crate::network::Edge;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Edge endpoint outside `1..=x_count` or `1..=y_count`.
    EdgeOutOfRange {
        index: usize,
        edge: Edge,
    },
    DuplicateEdge {
        first: usize,
        second: usize,
        edge: Edge,
    },
    /// The order is not a permutation of the network's free layer.
    InvalidOrder(String),
    UnknownVertex(u32),
    /// Brute force refused: the free layer is larger than the cap.
    EnumerationCapExceeded {
        y_count: usize,
        cap: usize,
    },
    InvalidInstance(String),
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EdgeOutOfRange { index, edge } => write!(
                f,
                "edge #{} ({}, {}) has an endpoint out of range",
                index + 1,
                edge.x,
                edge.y
            ),
            Error::DuplicateEdge {
                first,
                second,
                edge,
            } => write!(
                f,
                "edge #{} ({}, {}) duplicates edge #{}",
                second + 1,
                edge.x,
                edge.y,
                first + 1
            ),
            Error::InvalidOrder(msg) => write!(f, "invalid order: {msg}"),
            Error::UnknownVertex(y) => write!(f, "unknown free-layer vertex {y}"),
            Error::EnumerationCapExceeded { y_count, cap } => write!(
                f,
                "refusing to enumerate {y_count}! orders (cap is {cap} free vertices)"
            ),
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
