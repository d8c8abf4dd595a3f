//! Wreath-product categories `Rep(A_t)` and Knop's `Rep(S_t ⋉ G^t)`.

pub mod algebra;
pub mod knop;
pub mod wobject;

pub use algebra::{FinAlgebra, HopfData};
pub use knop::{compare_knop_etingof, functor_f, functor_f_object, knop_compose, knop_tensor, HomComparison, KnopMorphism};
pub use wobject::{
    gamma, gamma_prime, hopf_dual, hopf_duality_maps, hopf_tensor, induce_wreath, phi, q1_pair, q1_product, q1_unit,
    q2_pair, q2_product, tau, theta, unit_wobject, v_chi, WCheck, WCondition, WObject,
};

use crate::delcat::CatError;
use crate::exactalg::ExactError;
use crate::oracle::OracleError;
use crate::recollement::RecError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WreathError {
    #[error("bad algebra: {0}")]
    BadAlgebra(String),
    #[error("algebra has no Hopf structure")]
    NotHopf,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Rec(#[from] RecError),
}
