//! Canonical pattern mining over labeled graphs.
//!
//! A pattern is a connected induced subgraph of a template graph that maps
//! injectively (labels and edges preserved) into at least `N+` positive
//! examples and at most `N-` negative ones. [`miner::mine`] enumerates one
//! representative per isomorphism class, smallest patterns first.

pub mod bench;
pub mod cli;
pub mod dataio;
pub mod dataset;
pub mod encoder;
pub mod fixtures;
pub mod graph;
pub mod miner;
pub mod morphism;
