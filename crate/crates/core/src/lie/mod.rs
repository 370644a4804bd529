//! Compact Lie groups, their classifying rings and maps of maximal tori.

mod classifying;
mod embedding;
mod group;
mod inclusion;

pub use classifying::{ClassifyingRing, InvariantGenerator, InvariantKind};
pub use embedding::{SpecialEmbedding, TorusEmbedding};
pub use group::{GroupSpec, MAX_SIZE};
pub use inclusion::Inclusion;
