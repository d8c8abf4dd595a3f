//! The diagram basis: recollements, their enumeration, composition patterns
//! and group-labelled variants.

pub mod combinat;
pub mod diagram;
pub mod group;
pub mod matching;

pub use diagram::{Diagram, Word};
pub use group::FiniteGroup;
pub use matching::{compose_patterns, enumerate, GluePattern, Recollement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecError {
    #[error("size mismatch: left target {left} != right source {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid recollement: {0}")]
    Invalid(String),
    #[error("invalid group: {0}")]
    BadGroup(String),
}
