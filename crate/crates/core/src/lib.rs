//! Graph positional encodings, Weisfeiler-Lehman refinement engines, and
//! a harness that measures which encodings distinguish which graph pairs.
//!
//! The pieces fit together as a pipeline: `graph` builds and generates
//! graphs, `spectral` supplies the dense eigendecomposition machinery,
//! `encode` turns graphs into absolute (per-node) and relative (per-pair)
//! positional encodings, `refine` runs color refinement with those
//! encodings and decides pairwise distinguishability, `pe_map` converts
//! between the two encoding families without losing distinguishing
//! power, `gt` runs forward-pass transformers for the equivalence
//! property checks, and `harness` orchestrates corpora, dominance grids,
//! and the named verifiers behind the CLI.

pub mod encode;
pub mod error;
pub mod graph;
pub mod gt;
pub mod harness;
pub mod pe_map;
pub mod refine;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{FeaturedGraph, Graph, Permutation};
pub use refine::{compare, PairTest, Verdict};
