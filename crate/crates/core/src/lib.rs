//! Finitary functors on finite sets, their ∅-modifications, and supports of
//! their elements.
//!
//! Functors are fed in as flat equational presentations ([`presentation`])
//! or as explicit tables ([`tabulated`]) and evaluated through the uniform
//! [`FunctorInstance`] interface. The [`theory`] module builds the minimal and
//! maximal ∅-modifications, computes supports, and exhaustively checks
//! functor laws, monomorphicity, epimorphicity and intersection preservation
//! on all sets up to a size bound.

pub mod finset;
pub mod instance;
pub mod presentation;
pub mod report;
pub mod tabulated;
pub mod theory;
pub mod zoo;

pub use finset::{compose, inclusion, FiniteFunction, FiniteSet, SubsetMask};
pub use instance::{FunctorInstance, QueryError};
pub use presentation::{parse_presentation, Presentation};
pub use report::{CheckReport, Counterexample, Verdict};
pub use tabulated::TabulatedFunctor;
pub use theory::{ModificationKind, TheoryError};
