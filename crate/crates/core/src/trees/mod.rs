//! Trees: the feasibility table, vertex classes, the recursive constructions
//! of bad trees, and free-tree enumeration.

mod construct;
mod decompose;
mod dp;
mod enumerate;

pub use construct::{
    bad_path_graph, construct, construct_unchecked, glue, glue_leaf, remove_pendant_path, with_pendant_path,
    Construction, ConstructionSpec, SpecGenerator,
};
pub use decompose::{bad_splits, decompose_at_degree1, BadSplit};
pub use dp::{classify_tree, profile, vertex_status, RootedProfile, StatusLabel, TreeVerdict, VertexStatus};
pub use enumerate::{enumerate_trees, free_tree_code, FreeTrees, MAX_ENUMERATED_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("graph is not a simple tree")]
    NotATree,
    #[error("no vertex {0}")]
    NoSuchVertex(usize),
    #[error("expected {expected} increments, found {found}")]
    IncrementsLength { expected: usize, found: usize },
    #[error("tree order {0} is outside 1..={max}", max = MAX_ENUMERATED_ORDER)]
    OrderOutOfRange(usize),
    #[error("vertex {0} does not have degree 1")]
    DegreeNotOne(usize),
    #[error("an edge at vertex {0} is not a bridge")]
    NonBridgeAtNeighbour(usize),
    #[error("invalid construction: {0}")]
    InvalidSpec(String),
    #[error("`{node}` claims {claimed:?} but the result is {found:?}")]
    ClaimFailed {
        node: String,
        claimed: StatusLabel,
        found: StatusLabel,
    },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
