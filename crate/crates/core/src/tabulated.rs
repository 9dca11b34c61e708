//! Functors given by explicit tables on all finite sets up to a size bound.
//!
//! The data file is JSON:
//!
//! ```json
//! {
//!   "max_size": 2,
//!   "objects": { "0": [], "1": ["x0"], "2": ["x0", "x1"] },
//!   "morphisms": [
//!     { "dom": 1, "cod": 2, "table": [1], "action": { "x0": "x1" } }
//!   ]
//! }
//! ```
//!
//! Every function between sets of size `≤ max_size` must have an entry.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::{all_functions_up_to, compose, enumerate_functions, FiniteFunction, FiniteSet};

#[derive(Debug, Error)]
pub enum TabulationError {
    #[error("format error: {0}")]
    Format(String),
    #[error("missing morphism table for {0}")]
    MissingMorphism(FiniteFunction),
    #[error("functor-law violation: F(id{size}) is not the identity")]
    Identity {
        size: usize,
        function: FiniteFunction,
    },
    #[error("functor-law violation: F(g∘f) ≠ F(g)∘F(f) for f = {f}, g = {g}")]
    Composition {
        f: Box<FiniteFunction>,
        g: Box<FiniteFunction>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TabulationFile {
    max_size: usize,
    objects: BTreeMap<String, Vec<String>>,
    morphisms: Vec<MorphismRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismRecord {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
    action: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedFunctor {
    max_size: usize,
    objects: Vec<Vec<String>>,
    morphisms: HashMap<FiniteFunction, FiniteFunction>,
}

fn format_err(message: impl Into<String>) -> TabulationError {
    TabulationError::Format(message.into())
}

impl TabulatedFunctor {
    /// Builds and validates a tabulation. `objects[k]` lists the element
    /// names of `F(k)`; `morphisms` maps each function to its action on
    /// element indices.
    pub fn new(
        objects: Vec<Vec<String>>,
        morphisms: HashMap<FiniteFunction, FiniteFunction>,
    ) -> Result<Self, TabulationError> {
        let max_size = objects
            .len()
            .checked_sub(1)
            .ok_or_else(|| format_err("a tabulation needs at least the empty set"))?;
        for (size, names) in objects.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(format_err(format!(
                    "duplicate element `{dup}` in F({size})"
                )));
            }
        }
        for (f, action) in &morphisms {
            let (d, c) = (f.dom().size(), f.cod().size());
            if d > max_size || c > max_size {
                return Err(format_err(format!(
                    "morphism {f} exceeds max_size {max_size}"
                )));
            }
            if action.dom().size() != objects[d].len() || action.cod().size() != objects[c].len() {
                return Err(format_err(format!("action of {f} has the wrong shape")));
            }
        }
        let tabulated = TabulatedFunctor {
            max_size,
            objects,
            morphisms,
        };
        tabulated.validate()?;
        Ok(tabulated)
    }

    fn validate(&self) -> Result<(), TabulationError> {
        for f in all_functions_up_to(self.max_size) {
            if !self.morphisms.contains_key(&f) {
                return Err(TabulationError::MissingMorphism(f));
            }
        }
        for size in 0..=self.max_size {
            let id = FiniteFunction::identity(size);
            if !self.morphisms[&id].is_identity() {
                return Err(TabulationError::Identity { size, function: id });
            }
        }
        for f in all_functions_up_to(self.max_size) {
            let ff = &self.morphisms[&f];
            for c in 0..=self.max_size {
                for g in enumerate_functions(f.cod(), &FiniteSet::new(c)) {
                    let gf = compose(&g, &f).expect("endpoints match");
                    let composed = compose(&self.morphisms[&g], ff).expect("endpoints match");
                    if self.morphisms[&gf] != composed {
                        return Err(TabulationError::Composition {
                            f: Box::new(f.clone()),
                            g: Box::new(g),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, TabulationError> {
        let file: TabulationFile =
            serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
        let mut objects = Vec::with_capacity(file.max_size + 1);
        for size in 0..=file.max_size {
            let names = file
                .objects
                .get(&size.to_string())
                .ok_or_else(|| format_err(format!("objects has no entry for size {size}")))?;
            objects.push(names.clone());
        }
        if let Some(extra) = file.objects.keys().find(|k| {
            k.parse::<usize>()
                .map_or(true, |n| n > file.max_size || n.to_string() != **k)
        }) {
            return Err(format_err(format!("unexpected objects key `{extra}`")));
        }

        let mut morphisms = HashMap::new();
        for record in file.morphisms {
            if record.dom > file.max_size || record.cod > file.max_size {
                return Err(format_err(format!(
                    "morphism {}→{} exceeds max_size {}",
                    record.dom, record.cod, file.max_size
                )));
            }
            let f = FiniteFunction::new(record.dom, record.cod, record.table)
                .map_err(|e| format_err(e.to_string()))?;
            let (source, target) = (&objects[record.dom], &objects[record.cod]);
            let mut table = Vec::with_capacity(source.len());
            for name in source {
                let image = record
                    .action
                    .get(name)
                    .ok_or_else(|| format_err(format!("action of {f} omits `{name}`")))?;
                let index = target.iter().position(|t| t == image).ok_or_else(|| {
                    format_err(format!("action of {f} sends `{name}` to unknown `{image}`"))
                })?;
                table.push(index);
            }
            if let Some(stray) = record.action.keys().find(|k| !source.contains(k)) {
                return Err(format_err(format!(
                    "action of {f} names unknown element `{stray}`"
                )));
            }
            let action = FiniteFunction::new(source.len(), target.len(), table)
                .expect("indices are in range");
            if morphisms.insert(f.clone(), action).is_some() {
                return Err(format_err(format!("duplicate morphism table for {f}")));
            }
        }
        Self::new(objects, morphisms)
    }

    /// Serializes to the JSON data format, morphisms in enumeration order.
    pub fn to_json(&self) -> String {
        let objects = self
            .objects
            .iter()
            .enumerate()
            .map(|(k, names)| (k.to_string(), names.clone()))
            .collect();
        let morphisms = all_functions_up_to(self.max_size)
            .map(|f| {
                let action = &self.morphisms[&f];
                let (source, target) =
                    (&self.objects[f.dom().size()], &self.objects[f.cod().size()]);
                MorphismRecord {
                    dom: f.dom().size(),
                    cod: f.cod().size(),
                    table: f.table().to_vec(),
                    action: source
                        .iter()
                        .enumerate()
                        .map(|(i, name)| (name.clone(), target[action.apply(i)].clone()))
                        .collect(),
                }
            })
            .collect();
        let file = TabulationFile {
            max_size: self.max_size,
            objects,
            morphisms,
        };
        let mut text = serde_json::to_string_pretty(&file).expect("tabulation serializes");
        text.push('\n');
        text
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Element names of `F(size)`, or `None` beyond the bound.
    pub fn object(&self, size: usize) -> Option<&[String]> {
        self.objects.get(size).map(Vec::as_slice)
    }

    pub fn morphism(&self, f: &FiniteFunction) -> Option<&FiniteFunction> {
        self.morphisms.get(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_functor(max_size: usize) -> TabulatedFunctor {
        let objects = (0..=max_size)
            .map(|k| (0..k).map(|i| format!("x{i}")).collect())
            .collect();
        let morphisms = all_functions_up_to(max_size)
            .map(|f| (f.clone(), f))
            .collect();
        TabulatedFunctor::new(objects, morphisms).unwrap()
    }

    #[test]
    fn identity_functor_loads() {
        let t = identity_functor(2);
        let text = t.to_json();
        let loaded = TabulatedFunctor::from_json(&text).unwrap();
        assert_eq!(loaded.max_size(), 2);
        let square: Vec<_> = enumerate_functions(&2.into(), &2.into()).collect();
        assert_eq!(square.len(), 4);
        for f in square {
            assert_eq!(loaded.morphism(&f), Some(&f));
        }
        assert_eq!(loaded.to_json(), text);
    }

    #[test]
    fn broken_identity_is_named() {
        let mut t = identity_functor(2);
        let id2 = FiniteFunction::identity(2);
        t.morphisms
            .insert(id2.clone(), FiniteFunction::new(2, 2, vec![1, 0]).unwrap());
        let err = TabulatedFunctor::new(t.objects, t.morphisms).unwrap_err();
        match err {
            TabulationError::Identity { size, function } => {
                assert_eq!(size, 2);
                assert_eq!(function, id2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn composition_violation_names_pair() {
        let mut t = identity_functor(2);
        let swap = FiniteFunction::new(2, 2, vec![1, 0]).unwrap();
        t.morphisms
            .insert(swap.clone(), FiniteFunction::identity(2));
        let err = TabulatedFunctor::new(t.objects, t.morphisms).unwrap_err();
        assert!(matches!(err, TabulationError::Composition { .. }), "{err}");
    }

    #[test]
    fn missing_morphism() {
        let mut t = identity_functor(1);
        let f = FiniteFunction::from_empty(1);
        t.morphisms.remove(&f);
        let err = TabulatedFunctor::new(t.objects, t.morphisms).unwrap_err();
        assert!(matches!(err, TabulationError::MissingMorphism(g) if g == f));
    }

    #[test]
    fn format_errors() {
        assert!(matches!(
            TabulatedFunctor::from_json("{"),
            Err(TabulationError::Format(_))
        ));
        let missing_object = r#"{"max_size": 1, "objects": {"0": []}, "morphisms": []}"#;
        assert!(matches!(
            TabulatedFunctor::from_json(missing_object),
            Err(TabulationError::Format(m)) if m.contains("size 1")
        ));
        let bad_action = r#"{"max_size": 0, "objects": {"0": ["a"]},
            "morphisms": [{"dom": 0, "cod": 0, "table": [], "action": {"a": "b"}}]}"#;
        assert!(matches!(
            TabulatedFunctor::from_json(bad_action),
            Err(TabulationError::Format(m)) if m.contains("unknown `b`")
        ));
        let missing_table = r#"{"max_size": 0, "objects": {"0": ["a"]}, "morphisms": []}"#;
        assert!(matches!(
            TabulatedFunctor::from_json(missing_table),
            Err(TabulationError::MissingMorphism(_))
        ));
    }
}
