//! A uniform, evaluable view of a functor on finite sets.
//!
//! Elements of `F(X)` are addressed by index `0..|F(X)|`, and `F(f)` is a
//! [`FiniteFunction`] between those index sets.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::finset::{all_functions_up_to, FiniteFunction};
use crate::presentation::{Evaluator, Presentation};
use crate::tabulated::{TabulatedFunctor, TabulationError};
use crate::theory::modification::Modification;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("size {size} exceeds the tabulation bound {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("no element `{text}` in F({size}): {reason}")]
    UnknownElement {
        size: usize,
        text: String,
        reason: String,
    },
    #[error("element {index} is out of range: F({size}) has {len} element(s)")]
    ElementOutOfRange {
        size: usize,
        index: usize,
        len: usize,
    },
}

pub enum Source {
    Presentation(Evaluator),
    Tabulation(TabulatedFunctor),
    Modification(Modification),
}

struct Inner {
    name: String,
    source: Source,
}

/// A functor on finite sets, shared cheaply by cloning.
#[derive(Clone)]
pub struct FunctorInstance {
    inner: Arc<Inner>,
}

impl fmt::Debug for FunctorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctorInstance({})", self.name())
    }
}

impl FunctorInstance {
    pub(crate) fn new(name: String, source: Source) -> Self {
        FunctorInstance {
            inner: Arc::new(Inner { name, source }),
        }
    }

    pub fn from_presentation(presentation: Presentation) -> Self {
        let name = presentation.name.clone();
        Self::new(name, Source::Presentation(Evaluator::new(presentation)))
    }

    pub fn from_tabulation(name: impl Into<String>, tabulation: TabulatedFunctor) -> Self {
        Self::new(name.into(), Source::Tabulation(tabulation))
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn source(&self) -> &Source {
        &self.inner.source
    }

    /// Largest set size the instance can be queried at, if bounded.
    pub fn size_bound(&self) -> Option<usize> {
        match self.source() {
            Source::Presentation(_) => None,
            Source::Tabulation(t) => Some(t.max_size()),
            Source::Modification(m) => m.base().size_bound(),
        }
    }

    /// Largest shape arity when the instance is backed by a presentation.
    pub fn max_arity(&self) -> Option<usize> {
        match self.source() {
            Source::Presentation(ev) => Some(ev.presentation().max_arity()),
            Source::Tabulation(_) => None,
            Source::Modification(m) => m.base().max_arity(),
        }
    }

    pub fn as_modification(&self) -> Option<&Modification> {
        match self.source() {
            Source::Modification(m) => Some(m),
            _ => None,
        }
    }

    fn check_bound(&self, size: usize) -> Result<(), QueryError> {
        match self.size_bound() {
            Some(bound) if size > bound => Err(QueryError::SizeBound { size, bound }),
            _ => Ok(()),
        }
    }

    /// `|F(size)|`.
    pub fn cardinality(&self, size: usize) -> Result<usize, QueryError> {
        self.check_bound(size)?;
        Ok(match self.source() {
            Source::Presentation(ev) => ev.object(size).len(),
            Source::Tabulation(t) => t.object(size).map_or(0, <[String]>::len),
            Source::Modification(m) => m.cardinality(size)?,
        })
    }

    pub fn element_names(&self, size: usize) -> Result<Vec<String>, QueryError> {
        self.check_bound(size)?;
        Ok(match self.source() {
            Source::Presentation(ev) => ev
                .object(size)
                .classes()
                .iter()
                .map(|c| ev.format_element(c))
                .collect(),
            Source::Tabulation(t) => t.object(size).unwrap_or_default().to_vec(),
            Source::Modification(m) => m.element_names(size)?,
        })
    }

    pub fn element_name(&self, size: usize, index: usize) -> Result<String, QueryError> {
        let names = self.element_names(size)?;
        let len = names.len();
        names
            .into_iter()
            .nth(index)
            .ok_or(QueryError::ElementOutOfRange { size, index, len })
    }

    /// Looks an element of `F(size)` up by its printed form. Presentation
    /// terms such as `p(2,0)` resolve to their class even when not canonical.
    pub fn find_element(&self, size: usize, text: &str) -> Result<usize, QueryError> {
        self.check_bound(size)?;
        let unknown = |reason: String| QueryError::UnknownElement {
            size,
            text: text.to_string(),
            reason,
        };
        match self.source() {
            Source::Presentation(ev) => ev.parse_element(size, text).map_err(unknown),
            Source::Modification(m) => m.find_element(size, text),
            Source::Tabulation(_) => self
                .element_names(size)?
                .iter()
                .position(|n| n == text.trim())
                .ok_or_else(|| unknown("no element with that name".into())),
        }
    }

    /// `F(f)` on element indices.
    pub fn morphism(&self, f: &FiniteFunction) -> Result<FiniteFunction, QueryError> {
        self.check_bound(f.dom().size().max(f.cod().size()))?;
        match self.source() {
            Source::Presentation(ev) => Ok((*ev.morphism(f)).clone()),
            Source::Tabulation(t) => Ok(t
                .morphism(f)
                .expect("validated tabulation is total")
                .clone()),
            Source::Modification(m) => m.morphism(f),
        }
    }

    /// Tabulates the instance on all sets of size `≤ max_size`.
    pub fn tabulate(&self, max_size: usize) -> Result<TabulatedFunctor, TabulateError> {
        let objects = (0..=max_size)
            .map(|k| self.element_names(k))
            .collect::<Result<Vec<_>, _>>()?;
        let mut morphisms = HashMap::new();
        for f in all_functions_up_to(max_size) {
            let mapped = self.morphism(&f)?;
            morphisms.insert(f, mapped);
        }
        Ok(TabulatedFunctor::new(objects, morphisms)?)
    }
}

#[derive(Debug, Error)]
pub enum TabulateError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Invalid(#[from] TabulationError),
}
