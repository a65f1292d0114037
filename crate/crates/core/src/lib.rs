//! Node embeddings for temporal graphs via time-respecting biased random
//! walks and skip-gram training.
//!
//! The pipeline: parse an edge list into an [`InputTemporalGraph`], widen it
//! into a [`TemporalGraph`] with [`transform_graph`], sample a walk corpus,
//! then train embeddings on that corpus.

pub mod alias;
pub mod datagen;
pub mod embedding;
pub mod graph;
pub mod lambda;
pub mod pipeline;
pub mod plot;
pub mod walker;

pub use graph::{
    parse_input, transform_graph, write_edge_list, InputTemporalGraph, NodeId, TemporalGraph, TimeInterval,
};
