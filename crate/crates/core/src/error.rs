use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which resource ceiling was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    PerfectMatchings,
    SearchNodes,
    AlternatingCycles,
    IsomorphismOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} outside 1..=32")]
    OrderOutOfRange(usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("endpoint {endpoint} out of range for order {order}")]
    EndpointOutOfRange { endpoint: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("edge set is not a perfect matching of the graph")]
    NotPerfectMatching,
    #[error("edge set is not contained in the matching")]
    NotSubsetOfMatching,
    #[error("edge set intersects the matching")]
    IntersectsMatching,
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("{what:?} ceiling of {limit} exceeded")]
    Resource { what: Resource, limit: u64 },
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("cannot parse family spec {0:?}")]
    FamilyParse(String),
    #[error("cross edge {0} is allowed, so the graph is not a G2 member")]
    AllowedCrossEdge(Edge),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
