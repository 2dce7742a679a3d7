//! Convexity measurement and convex-skeleton extraction for undirected
//! networks.
//!
//! A network is convex when every connected induced subgraph contains all
//! shortest paths between its nodes; fully convex networks are trees of
//! cliques. This crate measures how close a network is to that structure
//! (via randomly grown convex subgraphs), extracts high-convexity skeletons by
//! targeted edge removal, and provides the comparison backbones, null models,
//! generators and evaluation metrics needed to study them.

pub mod backbones;
pub mod convexity;
pub mod ensembles;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod seed;
pub mod skeleton;

pub use error::{Error, Result};
pub use graph::Graph;
