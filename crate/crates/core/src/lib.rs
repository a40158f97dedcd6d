//! Exact cut sparsifiers ("mimicking networks") for capacitated undirected
//! graphs with terminals.
//!
//! Given a graph `G` and an ordered terminal list `K`, a mimicking network is
//! a smaller graph `H` that preserves, exactly, the minimum cut value
//! separating `U` from `K - U` for every terminal bipartition. This crate
//! builds such networks by clustering vertices on their minimum-terminal-cut
//! signatures and contracting, verifies the result against independent
//! brute-force oracles, and ships the supporting machinery: an exact
//! max-flow/min-cut engine, laminar-structure checks, tree-specific
//! reductions down to a cactus, lower-bound gadget constructions, and
//! antichain counting for the cluster-count bounds.
//!
//! All core algorithms are generic over a [`Scalar`] capacity type; the
//! canonical instantiation is the exact [`Rational`], which is what the JSON
//! interfaces and the CLI use. Nothing in the exact pipeline touches
//! floating point.

pub mod bounds;
pub mod builder;
pub mod cuts;
pub mod graph;
pub mod json;
pub mod mincut;
pub mod rational;
pub mod scalar;
#[cfg(test)]
pub(crate) mod testutil;
pub mod tree;

pub use bounds::{
    bounds_row, convex_combine, count_antichains, count_common_element_antichains, cut_matrix,
    gadget_graph, matrix_rank, mtcv_rank_evidence, BoundsRow, CutMatrix,
};
pub use builder::{
    build_mimicking_network, min_contraction_size_bruteforce, signatures, verify_mimicking,
    verify_sparsifier, CutSignature, IndexComparison, MimickingNetwork, VerificationReport,
};
pub use cuts::{
    canonical_subsets, check_laminar, cut_family, terminal_cut_vector, FamilyEntry, LaminarReport,
    LaminarViolation, TerminalCutFamily, TerminalCutVector,
};
pub use graph::{CapGraph, Cluster, VertexPartition};
pub use mincut::{
    brute_force_min_terminal_cut, is_unique_min_terminal_cut, min_terminal_cut, MinCutResult,
};
pub use rational::{format_rational, parse_rational};
pub use scalar::Scalar;
pub use tree::{
    cactus_size_bound, is_cactus, reduce_tree, ternarize, tree_min_terminal_cut, y_delta_reduce,
    CactusNetwork, TreeGraph,
};

/// Exact capacity type used by the JSON interfaces and the CLI.
pub type Rational = num::BigRational;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid capacity literal {literal:?}: {reason}")]
    BadRational {
        literal: String,
        reason: &'static str,
    },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("duplicate terminal {0:?}")]
    DuplicateTerminal(String),

    #[error("terminal {0:?} is not a vertex of the graph")]
    UnknownTerminal(String),

    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),

    #[error("negative capacity {cap} on edge {u:?}-{v:?}")]
    NegativeCapacity { u: String, v: String, cap: String },

    #[error("need at least 2 terminals, got {0}")]
    TooFewTerminals(usize),

    #[error("terminal subset must be a nonempty proper subset of the terminal set")]
    InvalidTerminalSubset,

    #[error("{0:?} is not a terminal")]
    NotATerminal(String),

    #[error("subset must not contain the designated last terminal {0:?}")]
    ContainsLastTerminal(String),

    #[error("terminals {0:?} and {1:?} may not share a cluster")]
    TerminalMerge(String, String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} guard exceeded: limit {limit}, got {actual}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("graphs do not share the same ordered terminal list")]
    TerminalMismatch,

    #[error("graph is not a tree: {0}")]
    NotATree(&'static str),

    #[error("tree is not ternarized: {0}")]
    NotTernary(&'static str),

    #[error("epsilon {0} outside the valid open interval")]
    EpsilonOutOfRange(String),

    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(String),
}
