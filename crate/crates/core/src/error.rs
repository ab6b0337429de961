use alloc::string::String;
use alloc::vec::Vec;

use crate::model::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("node `{node}` has non-finite value {value}")]
    NonFiniteValue { node: String, value: f64 },
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node `{0}` has no incident edges and cannot be conditioned")]
    IsolatedNode(String),
    #[error("graph is not conditioned ({} violation(s))", .0.len())]
    Unconditioned(Vec<Violation>),
    #[error("malformed merge tree: {0}")]
    MalformedTree(String),
    #[error("no pairing candidate for node `{0}`")]
    NoCandidate(String),
    #[error("superlevel sweep from up-fork `{0}` never merged its two legs")]
    SweepExhausted(String),
    #[error("cycle enumeration exceeded its budget of {0} extensions")]
    CycleBudgetExceeded(u64),
    #[error("graph has {nodes} nodes, above the limit of {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("cannot cut {requested} cycles from a graph with cycle rank {available}")]
    TooManyCuts { requested: usize, available: usize },
}
