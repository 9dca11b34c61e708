//! Supports, surjection witnesses, skeleta, and degree.
//!
//! For a monomorphic functor `G` and `a ∈ G(X)`, the sets `A ⊆ X` with
//! `a ∈ Im G(i_A)` are closed under intersection, so the smallest one exists
//! and can be found greedily: start from `X` and drop each point whose removal
//! keeps `a` in the image.

use serde::Serialize;

use super::checks::check_monomorphic;
use super::TheoryError;
use crate::finset::{enumerate_functions, inclusion, FiniteFunction, FiniteSet, SubsetMask};
use crate::instance::{FunctorInstance, QueryError};

/// The image of `G(i_A): G(A) → G(X)`, sorted.
pub fn image_of_inclusion(
    functor: &FunctorInstance,
    subset: &SubsetMask,
) -> Result<Vec<usize>, QueryError> {
    Ok(functor
        .morphism(&inclusion(subset))?
        .image()
        .members()
        .to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportResult {
    pub size: usize,
    pub element: usize,
    pub element_name: String,
    pub support: SubsetMask,
    /// Index in `G(support)` of the unique preimage of the element.
    pub witness: usize,
    pub witness_name: String,
}

/// Computes supports for a functor whose monomorphicity has been verified
/// on all sets of size `≤ bound`.
pub struct SupportEngine<'a> {
    functor: &'a FunctorInstance,
    bound: usize,
}

impl<'a> SupportEngine<'a> {
    /// Fails with the first injection `G` does not preserve.
    pub fn new(functor: &'a FunctorInstance, bound: usize) -> Result<Self, TheoryError> {
        let report = check_monomorphic(functor, bound)?;
        if let Some(cx) = report.counterexamples.into_iter().next() {
            return Err(TheoryError::NotMonomorphic {
                injection: cx.functions[0].clone(),
                detail: cx.detail,
            });
        }
        Ok(SupportEngine { functor, bound })
    }

    pub fn functor(&self) -> &FunctorInstance {
        self.functor
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check_element(&self, size: usize, element: usize) -> Result<(), TheoryError> {
        if size > self.bound {
            return Err(TheoryError::Unverified {
                size,
                bound: self.bound,
            });
        }
        let len = self.functor.cardinality(size)?;
        if element >= len {
            return Err(QueryError::ElementOutOfRange {
                size,
                index: element,
                len,
            }
            .into());
        }
        Ok(())
    }

    /// Support by greedy removal in ascending order.
    pub fn support(&self, size: usize, element: usize) -> Result<SupportResult, TheoryError> {
        let order: Vec<usize> = (0..size).collect();
        self.support_with_order(size, element, &order)
    }

    /// Support by greedy removal, trying points in the given order. `order`
    /// must be a permutation of `0..size`.
    pub fn support_with_order(
        &self,
        size: usize,
        element: usize,
        order: &[usize],
    ) -> Result<SupportResult, TheoryError> {
        self.check_element(size, element)?;
        let mut current = SubsetMask::full(size);
        for &x in order {
            let candidate = current.without(x);
            if image_of_inclusion(self.functor, &candidate)?
                .binary_search(&element)
                .is_ok()
            {
                current = candidate;
            }
        }
        let include = self.functor.morphism(&inclusion(&current))?;
        let witness = include
            .preimage(element)
            .next()
            .expect("element lies in the image of its support");
        Ok(SupportResult {
            size,
            element,
            element_name: self.functor.element_name(size, element)?,
            witness_name: self.functor.element_name(current.len(), witness)?,
            support: current,
            witness,
        })
    }
}

/// `supp_X(a)`, after verifying monomorphicity on sets of size `≤ max(|X|, 1)`.
pub fn support(
    functor: &FunctorInstance,
    size: usize,
    element: usize,
) -> Result<SupportResult, TheoryError> {
    SupportEngine::new(functor, size.max(1))?.support(size, element)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiWitness {
    /// The preimage `a ∈ G(dom)` with `G(f)(a) = b`.
    pub element: usize,
    pub support: SubsetMask,
    /// Section `s: supp(b) → dom` with `f ∘ s` the inclusion of `supp(b)`.
    pub section: FiniteFunction,
}

/// A preimage of `b` under `G(f)` for surjective `f`, built from the
/// support of `b` and the least-preimage section over it.
pub fn epi_witness(
    functor: &FunctorInstance,
    f: &FiniteFunction,
    b: usize,
) -> Result<EpiWitness, TheoryError> {
    if !f.is_surjective() {
        return Err(TheoryError::NotSurjective(f.clone()));
    }
    let (dom, cod) = (f.dom().size(), f.cod().size());
    let engine = SupportEngine::new(functor, dom.max(cod).max(1))?;
    let supp = engine.support(cod, b)?;
    let table = supp
        .support
        .members()
        .iter()
        .map(|&y| f.preimage(y).next().expect("f is surjective"))
        .collect();
    let section =
        FiniteFunction::new(supp.support.len(), dom, table).expect("preimages are in range");
    let element = functor.morphism(&section)?.apply(supp.witness);
    Ok(EpiWitness {
        element,
        support: supp.support,
        section,
    })
}

/// `G_n(X)`: the union of the images of `G(f)` over all `f: n → X`, sorted.
pub fn skeleton(
    functor: &FunctorInstance,
    n: usize,
    size: usize,
) -> Result<Vec<usize>, QueryError> {
    let mut hit = vec![false; functor.cardinality(size)?];
    for f in enumerate_functions(&FiniteSet::new(n), &FiniteSet::new(size)) {
        for &y in functor.morphism(&f)?.table() {
            hit[y] = true;
        }
    }
    Ok(hit
        .iter()
        .enumerate()
        .filter_map(|(i, &h)| h.then_some(i))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Degree {
    pub value: usize,
    /// `false` when `value` is only a lower bound.
    pub exact: bool,
}

/// The largest support size over `G(X)` for `|X| ≤ probe`. Exact for
/// presentation-backed functors once `probe` reaches the largest arity:
/// every element is then the image of one over a set of at most that size,
/// and supports shrink along images.
pub fn degree(functor: &FunctorInstance, probe: usize) -> Result<Degree, TheoryError> {
    let engine = SupportEngine::new(functor, probe.max(1))?;
    let mut value = 0;
    for size in 0..=probe {
        for element in 0..functor.cardinality(size)? {
            value = value.max(engine.support(size, element)?.support.len());
        }
    }
    let exact = functor.max_arity().is_some_and(|m| probe >= m);
    Ok(Degree { value, exact })
}
