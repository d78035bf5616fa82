//! Host-side companion to `sciworld-core`: transcript files, dataset export,
//! batch evaluation, gold-corpus generation and the knowledge-graph triple
//! extractor. The `sciworld` binary wraps these behind subcommands.

pub mod dataset;
pub mod eval;
pub mod transcript;
pub mod triples;

pub use sciworld_core as core;
