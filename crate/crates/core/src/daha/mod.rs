//! Etingof's `Rep(H_t)`: objects of `Rep(S_t)` with a `y`-morphism
//! `h ⊗ M -> M` satisfying the interpolated degenerate affine Hecke relation.

pub mod evidence;
pub mod induce;
pub mod yobject;

pub use evidence::{
    end_space, generic_params, generic_simplicity_evidence, grid_scan, on_listed_hyperplane, oracle_standard_module,
    random_off_hyperplane, Evidence, GridPoint,
};
pub use induce::{induce, is_in_dk, rho, standard_module, StandardParams};
pub use yobject::{ev, ev_constants, RelationCheck, YObject};

use crate::delcat::CatError;
use crate::exactalg::ExactError;
use crate::oracle::OracleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DahaError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
