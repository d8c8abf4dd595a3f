//! The interpolation category as a Karoubi envelope of formal sums of flat
//! words, with exact coefficients in `ℚ(T)`.

pub mod forms;
pub mod morphism;
pub mod object;
pub mod realize;
pub mod structure;
pub mod table;

pub use forms::{block_structure, gram_det, gram_matrix, hom_basis, hom_dim, negligible_radical, split_idempotent, BlockStructure};
pub use morphism::{LinComb, Morphism};
pub use object::Object;
pub use realize::realize;
pub use structure::{braiding, cat_dimension, duality_data, flatten, induct_st, jm_endo, trace, Decomposition};
pub use table::{cache_version, CACHE_ENV};

use crate::exactalg::ExactError;
use crate::oracle::OracleError;
use crate::recollement::RecError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatError {
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("pole at specialization: {0}")]
    PoleAtSpecialization(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("beyond supported size: {0}")]
    Truncation(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Rec(#[from] RecError),
}
