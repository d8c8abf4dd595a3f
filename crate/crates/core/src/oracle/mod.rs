//! Brute-force integral models over honest permutation modules, used to
//! derive and validate every interpolated structure constant.

pub mod daha;
pub mod inj;
pub mod interp;
pub mod knop;
pub mod qmat;
pub mod wreath;

pub use inj::{realize_diagram, realize_lincomb, realize_morphism, verify_composition, WordBasis};
pub use interp::{interpolate_family, interpolate_table};
pub use qmat::{simplicity_burnside, QMatrix};

use crate::exactalg::ExactError;
use crate::recollement::RecError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("rank {n} too small for an independent diagram basis (need {needed})")]
    BasisNotIndependent { n: usize, needed: usize },
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Rec(#[from] RecError),
}
