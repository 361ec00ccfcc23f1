//! Connected treewidth of graphs of treewidth at most two.
//!
//! The solver decomposes each block into a series-parallel tree, folds
//! width tables bottom-up and combines blocks along the block-cut tree.
//! [`oracle`] holds an exhaustive search used to cross-check it.

pub mod blocks;
pub mod dp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod oracle;
pub mod scaling;
pub mod solve;
pub mod sptree;
pub mod witness;

pub use blocks::BlockCutTree;
pub use dp::{cap_for, DpTable, Entry, SeriesRule, Side, Width, SATURATED};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use layout::{
    is_connected_rooted_layout, layout_cost, supporting_set, ExtendedRootedGraph, Layout,
};
pub use oracle::{
    apex_construction, brute_ctw, brute_ectvs, brute_tw, OracleOptions, OracleResult,
};
pub use solve::{
    ctvs_block_rooted, ctw, ctw_biconnected, ectvs_rooted_edge, SolveOptions, SolveResult,
};
pub use sptree::{recognize_sp, sp_tree_for_edge, SpTree, SpTreeBuilder};
