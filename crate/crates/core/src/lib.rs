//! Single-cell clustering with a fused dual-graph autoencoder.
//!
//! The pipeline: load and preprocess an expression matrix ([`ingest`]),
//! build a cell-to-cell KNN graph from Pearson similarity ([`cellgraph`]),
//! embed a protein-protein interaction network with biased random walks and
//! skip-gram training ([`genegraph`]), then train a dual autoencoder — a
//! graph-attention branch over cells fused with a dense branch over
//! expression-weighted gene vectors — under reconstruction and KL
//! self-training losses ([`model`]). Cluster assignments are scored with
//! ARI/NMI/silhouette ([`metrics`]). [`synthbench`] generates deterministic
//! synthetic datasets with known clusters and a block-structured PPI for
//! end-to-end evaluation, and [`cli`] wires everything into a batch command
//! line.

pub mod cellgraph;
pub mod cli;
pub mod error;
pub mod genegraph;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod synthbench;
pub mod tensorcore;

pub use error::{Error, Result};
