//! Empty-set modifications, supports, degree, and the exhaustive checkers.

pub mod checks;
pub mod modification;
pub mod support;

use thiserror::Error;

use crate::finset::FiniteFunction;
use crate::instance::QueryError;

pub use checks::{
    check_epimorphic, check_intersections, check_laws, check_monomorphic, check_support_family,
    removal_orders,
};
pub use modification::{
    check_modification_maximality, empty_equalizer, empty_mod_max, empty_mod_min, empty_morphism,
    modify, Modification, ModificationKind,
};
pub use support::{
    degree, epi_witness, image_of_inclusion, skeleton, support, Degree, EpiWitness, SupportEngine,
    SupportResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("monomorphicity violation: {detail}")]
    NotMonomorphic {
        injection: FiniteFunction,
        detail: String,
    },
    #[error("{0} is not surjective")]
    NotSurjective(FiniteFunction),
    #[error("not an ∅-modification: {detail}")]
    NotAModification { detail: String },
    #[error("monomorphicity was only verified up to size {bound}, but size {size} was queried")]
    Unverified { size: usize, bound: usize },
}

impl TheoryError {
    /// Whether the error reports a failed property of the functor rather
    /// than a malformed request.
    pub fn is_property_violation(&self) -> bool {
        matches!(
            self,
            TheoryError::NotMonomorphic { .. } | TheoryError::NotAModification { .. }
        )
    }
}
