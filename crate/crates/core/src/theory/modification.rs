//! Minimal and maximal ∅-modifications.
//!
//! Both agree with the base functor on every non-empty set. The minimal one
//! sends ∅ to ∅. The maximal one sends ∅ to the equalizer
//! `{a ∈ F(1) : F(f₀)(a) = F(f₁)(a)}` of the two constant maps `f₀, f₁: 1 → 2`,
//! and sends `∅ → Y` to the restriction of `F(g)` for any `g: 1 → Y`.

use std::time::Instant;

use serde::Serialize;

use super::checks::check_laws;
use super::TheoryError;
use crate::finset::{all_functions_up_to, FiniteFunction};
use crate::instance::{FunctorInstance, QueryError, Source};
use crate::report::{CheckReport, Counterexample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModificationKind {
    Minimal,
    Maximal,
}

impl ModificationKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ModificationKind::Minimal => "∘",
            ModificationKind::Maximal => "°",
        }
    }
}

/// An ∅-modification of `base`. Elements of the value at ∅ are stored as
/// indices into `base(1)`.
pub struct Modification {
    base: FunctorInstance,
    kind: ModificationKind,
    empty_elements: Vec<usize>,
}

impl Modification {
    pub fn base(&self) -> &FunctorInstance {
        &self.base
    }

    pub fn kind(&self) -> ModificationKind {
        self.kind
    }

    /// The value at ∅ as a subset of `base(1)`.
    pub fn empty_elements(&self) -> &[usize] {
        &self.empty_elements
    }

    pub(crate) fn cardinality(&self, size: usize) -> Result<usize, QueryError> {
        if size == 0 {
            Ok(self.empty_elements.len())
        } else {
            self.base.cardinality(size)
        }
    }

    pub(crate) fn element_names(&self, size: usize) -> Result<Vec<String>, QueryError> {
        if size > 0 {
            return self.base.element_names(size);
        }
        let names = self.base.element_names(1)?;
        Ok(self
            .empty_elements
            .iter()
            .map(|&e| names[e].clone())
            .collect())
    }

    pub(crate) fn find_element(&self, size: usize, text: &str) -> Result<usize, QueryError> {
        if size > 0 {
            return self.base.find_element(size, text);
        }
        let in_one = self
            .base
            .find_element(1, text)
            .map_err(|_| QueryError::UnknownElement {
                size,
                text: text.to_string(),
                reason: "no such element".into(),
            })?;
        self.empty_elements
            .iter()
            .position(|&e| e == in_one)
            .ok_or_else(|| QueryError::UnknownElement {
                size,
                text: text.to_string(),
                reason: format!("not in the value at ∅ of the {:?} modification", self.kind),
            })
    }

    pub(crate) fn morphism(&self, f: &FiniteFunction) -> Result<FiniteFunction, QueryError> {
        match (f.dom().size(), f.cod().size()) {
            (0, 0) => Ok(FiniteFunction::identity(self.empty_elements.len())),
            (0, cod) => match self.kind {
                ModificationKind::Minimal => {
                    Ok(FiniteFunction::from_empty(self.base.cardinality(cod)?))
                }
                ModificationKind::Maximal => self.empty_morphism_with_choice(cod, 0),
            },
            _ => self.base.morphism(f),
        }
    }

    /// The map from the value at ∅ into the value at a non-empty `cod`,
    /// computed as `F(g)` restricted to the equalizer, where `g: 1 → cod`
    /// picks `point`. For the minimal modification this is the empty map.
    pub fn empty_morphism_with_choice(
        &self,
        cod: usize,
        point: usize,
    ) -> Result<FiniteFunction, QueryError> {
        let g =
            FiniteFunction::constant(1, cod, point).map_err(|e| QueryError::UnknownElement {
                size: cod,
                text: point.to_string(),
                reason: e.to_string(),
            })?;
        let fg = self.base.morphism(&g)?;
        Ok(fg.restrict(&self.empty_elements))
    }
}

/// The equalizer of `F(f₀)` and `F(f₁)` as indices into `F(1)`.
pub fn empty_equalizer(functor: &FunctorInstance) -> Result<Vec<usize>, QueryError> {
    let f0 = FiniteFunction::constant(1, 2, 0).expect("valid constant");
    let f1 = FiniteFunction::constant(1, 2, 1).expect("valid constant");
    let (ff0, ff1) = (functor.morphism(&f0)?, functor.morphism(&f1)?);
    Ok((0..ff0.dom().size())
        .filter(|&a| ff0.apply(a) == ff1.apply(a))
        .collect())
}

/// The maximal ∅-modification `F°`. Needs `F` on sets of size 1 and 2.
pub fn empty_mod_max(functor: &FunctorInstance) -> Result<FunctorInstance, QueryError> {
    let empty_elements = empty_equalizer(functor)?;
    Ok(modified(functor, ModificationKind::Maximal, empty_elements))
}

/// The minimal ∅-modification `F∘`.
pub fn empty_mod_min(functor: &FunctorInstance) -> FunctorInstance {
    modified(functor, ModificationKind::Minimal, Vec::new())
}

pub fn modify(
    functor: &FunctorInstance,
    kind: ModificationKind,
) -> Result<FunctorInstance, QueryError> {
    match kind {
        ModificationKind::Minimal => Ok(empty_mod_min(functor)),
        ModificationKind::Maximal => empty_mod_max(functor),
    }
}

fn modified(
    functor: &FunctorInstance,
    kind: ModificationKind,
    empty_elements: Vec<usize>,
) -> FunctorInstance {
    let name = format!("{}{}", functor.name(), kind.symbol());
    FunctorInstance::new(
        name,
        Source::Modification(Modification {
            base: functor.clone(),
            kind,
            empty_elements,
        }),
    )
}

/// `G(∅ → Y)`. For a maximal modification and non-empty `Y` this is the
/// restriction of `F(g)` for the map `g: 1 → Y` picking `0`.
pub fn empty_morphism(functor: &FunctorInstance, cod: usize) -> Result<FiniteFunction, QueryError> {
    functor.morphism(&FiniteFunction::from_empty(cod))
}

/// Checks that `probe` is an ∅-modification of `functor` on sets of size
/// `≤ bound`, then that the image of `probe(∅)` in `F(1)` lies inside the
/// value at ∅ of the maximal modification.
pub fn check_modification_maximality(
    functor: &FunctorInstance,
    probe: &FunctorInstance,
    bound: usize,
) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let bound = bound.max(2);
    for size in 1..=bound {
        let (ours, theirs) = (functor.element_names(size)?, probe.element_names(size)?);
        if ours != theirs {
            return Err(TheoryError::NotAModification {
                detail: format!("values at size {size} differ: {ours:?} vs {theirs:?}"),
            });
        }
    }
    for f in all_functions_up_to(bound).filter(|f| !f.dom().is_empty()) {
        if functor.morphism(&f)? != probe.morphism(&f)? {
            return Err(TheoryError::NotAModification {
                detail: format!("actions on {f} differ"),
            });
        }
    }
    let laws = check_laws(probe, bound)?;
    if let Some(cx) = laws.counterexamples.first() {
        return Err(TheoryError::NotAModification {
            detail: format!("{} is not a functor: {cx}", probe.name()),
        });
    }

    let maximal = empty_equalizer(functor)?;
    let image = probe.morphism(&FiniteFunction::from_empty(1))?.image();
    let names = functor.element_names(1)?;
    let counterexamples: Vec<Counterexample> = image
        .members()
        .iter()
        .filter(|a| !maximal.contains(a))
        .map(|&a| Counterexample {
            sizes: vec![0, 1],
            functions: vec![FiniteFunction::from_empty(1)],
            elements: vec![names[a].clone()],
            detail: format!(
                "`{}` is in the image of {}(∅) but not in F°∅",
                names[a],
                probe.name()
            ),
            ..Counterexample::default()
        })
        .collect();
    let show = |idx: &[usize]| -> String {
        let items: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
        format!("{{{}}}", items.join(", "))
    };
    let relation = if !counterexamples.is_empty() {
        "⊄"
    } else if image.members() == maximal.as_slice() {
        "="
    } else {
        "⊊"
    };
    let note = format!(
        "image of {}(∅) in F(1) = {} {} F°∅ = {}",
        probe.name(),
        show(image.members()),
        relation,
        show(&maximal)
    );
    Ok(
        CheckReport::new("maximality", bound, image.len(), counterexamples, started)
            .with_note(note),
    )
}
