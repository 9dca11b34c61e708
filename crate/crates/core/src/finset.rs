//! Finite discrete sets and all functions between them.
//!
//! A finite set of size `n` is always the initial segment `{0, …, n-1}`.
//! Labels may be attached for display, but two sets of the same size are
//! equal regardless of their labels.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinsetError {
    #[error("cannot compose: codomain of f has size {f_cod} but domain of g has size {g_dom}")]
    Composition { f_cod: usize, g_dom: usize },
    #[error(
        "table entry {value} at position {position} is out of range for a codomain of size {cod}"
    )]
    EntryOutOfRange {
        position: usize,
        value: usize,
        cod: usize,
    },
    #[error("table has length {len} but the domain has size {dom}")]
    TableLength { len: usize, dom: usize },
    #[error("labels: expected {expected} distinct labels, got {found}")]
    Labels { expected: usize, found: usize },
    #[error("subset member {member} is out of range for a set of size {size}")]
    MemberOutOfRange { member: usize, size: usize },
}

/// The canonical finite set `{0, …, size-1}`.
#[derive(Clone, Default)]
pub struct FiniteSet {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl FiniteSet {
    pub fn new(size: usize) -> Self {
        FiniteSet { size, labels: None }
    }

    pub fn empty() -> Self {
        Self::new(0)
    }

    /// A set whose elements carry the given display labels. Labels must be
    /// pairwise distinct.
    pub fn with_labels<S: Into<String>>(labels: Vec<S>) -> Result<Self, FinsetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let distinct = labels.iter().unique().count();
        if distinct != labels.len() {
            return Err(FinsetError::Labels {
                expected: labels.len(),
                found: distinct,
            });
        }
        Ok(FiniteSet {
            size: labels.len(),
            labels: Some(labels.into()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(labels) => labels[index].clone(),
            None => index.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FiniteSet {}

impl Hash for FiniteSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSet({})", self.size)
    }
}

impl From<usize> for FiniteSet {
    fn from(size: usize) -> Self {
        FiniteSet::new(size)
    }
}

/// A function between finite sets, stored as its table of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    dom: FiniteSet,
    cod: FiniteSet,
    table: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(
        dom: impl Into<FiniteSet>,
        cod: impl Into<FiniteSet>,
        table: Vec<usize>,
    ) -> Result<Self, FinsetError> {
        let (dom, cod) = (dom.into(), cod.into());
        if table.len() != dom.size() {
            return Err(FinsetError::TableLength {
                len: table.len(),
                dom: dom.size(),
            });
        }
        if let Some((position, &value)) = table.iter().find_position(|&&v| v >= cod.size()) {
            return Err(FinsetError::EntryOutOfRange {
                position,
                value,
                cod: cod.size(),
            });
        }
        Ok(FiniteFunction { dom, cod, table })
    }

    pub(crate) fn from_parts_unchecked(dom: usize, cod: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom);
        debug_assert!(table.iter().all(|&v| v < cod));
        FiniteFunction {
            dom: FiniteSet::new(dom),
            cod: FiniteSet::new(cod),
            table,
        }
    }

    pub fn identity(set: impl Into<FiniteSet>) -> Self {
        let set = set.into();
        let table = set.elements().collect();
        FiniteFunction {
            dom: set.clone(),
            cod: set,
            table,
        }
    }

    /// The unique function out of the empty set.
    pub fn from_empty(cod: impl Into<FiniteSet>) -> Self {
        FiniteFunction {
            dom: FiniteSet::empty(),
            cod: cod.into(),
            table: Vec::new(),
        }
    }

    /// The constant function `dom → cod` with value `value`.
    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self, FinsetError> {
        Self::new(dom, cod, vec![value; dom])
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().all(|hit| hit)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// The image of the function as a subset of its codomain.
    pub fn image(&self) -> SubsetMask {
        let members = self
            .table
            .iter()
            .copied()
            .sorted_unstable()
            .dedup()
            .collect();
        SubsetMask {
            ambient: self.cod.clone(),
            members,
        }
    }

    /// Elements of the domain mapped to `y`.
    pub fn preimage(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().positions(move |&v| v == y)
    }

    /// Restricts the function to the given subset of its domain. The
    /// result's domain is the canonical set of size `|subset|`.
    pub fn restrict(&self, subset: &[usize]) -> FiniteFunction {
        let table = subset.iter().map(|&i| self.table[i]).collect();
        FiniteFunction {
            dom: FiniteSet::new(subset.len()),
            cod: self.cod.clone(),
            table,
        }
    }
}

impl fmt::Debug for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}):{}→{}",
            self.table.iter().join(","),
            self.dom.size(),
            self.cod.size()
        )
    }
}

/// Serialized as `{dom, cod, table}` with plain sizes.
#[derive(Serialize, Deserialize)]
struct FunctionRecord {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl Serialize for FiniteFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FunctionRecord {
            dom: self.dom.size(),
            cod: self.cod.size(),
            table: self.table.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = FunctionRecord::deserialize(deserializer)?;
        FiniteFunction::new(record.dom, record.cod, record.table).map_err(serde::de::Error::custom)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FiniteFunction, f: &FiniteFunction) -> Result<FiniteFunction, FinsetError> {
    if f.cod != g.dom {
        return Err(FinsetError::Composition {
            f_cod: f.cod.size(),
            g_dom: g.dom.size(),
        });
    }
    let table = f.table.iter().map(|&x| g.table[x]).collect();
    Ok(FiniteFunction {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table,
    })
}

/// A subset of a finite set, kept as a sorted list of distinct members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    ambient: FiniteSet,
    members: Vec<usize>,
}

impl SubsetMask {
    pub fn new(ambient: impl Into<FiniteSet>, members: Vec<usize>) -> Result<Self, FinsetError> {
        let ambient = ambient.into();
        if let Some(&member) = members.iter().find(|&&m| m >= ambient.size()) {
            return Err(FinsetError::MemberOutOfRange {
                member,
                size: ambient.size(),
            });
        }
        let members = members.into_iter().sorted_unstable().dedup().collect();
        Ok(SubsetMask { ambient, members })
    }

    pub fn empty(ambient: impl Into<FiniteSet>) -> Self {
        SubsetMask {
            ambient: ambient.into(),
            members: Vec::new(),
        }
    }

    pub fn full(ambient: impl Into<FiniteSet>) -> Self {
        let ambient = ambient.into();
        let members = ambient.elements().collect();
        SubsetMask { ambient, members }
    }

    /// Subset of `{0, …, size-1}` whose members are the set bits of `bits`.
    pub fn from_bits(size: usize, bits: u64) -> Self {
        let members = (0..size).filter(|&i| bits >> i & 1 == 1).collect();
        SubsetMask {
            ambient: FiniteSet::new(size),
            members,
        }
    }

    pub fn bits(&self) -> u64 {
        self.members.iter().fold(0, |acc, &m| acc | 1 << m)
    }

    pub fn ambient(&self) -> &FiniteSet {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        SubsetMask {
            ambient: self.ambient.clone(),
            members,
        }
    }

    pub fn without(&self, x: usize) -> SubsetMask {
        let members = self.members.iter().copied().filter(|&m| m != x).collect();
        SubsetMask {
            ambient: self.ambient.clone(),
            members,
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊆{}", self, self.ambient.size())
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

/// The identity map from the subset `A` to its ambient set. The domain is
/// labelled with the members it names.
pub fn inclusion(subset: &SubsetMask) -> FiniteFunction {
    let labels: Vec<String> = subset
        .members
        .iter()
        .map(|m| subset.ambient.label(*m))
        .collect();
    let dom = FiniteSet {
        size: subset.len(),
        labels: Some(Arc::from(labels)),
    };
    FiniteFunction {
        dom,
        cod: subset.ambient.clone(),
        table: subset.members.clone(),
    }
}

/// Iterator over all functions `dom → cod` in lexicographic table order.
pub struct Functions {
    dom: usize,
    cod: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Functions {
    type Item = FiniteFunction;

    fn next(&mut self) -> Option<FiniteFunction> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        // odometer with the last position fastest
        let mut advanced = false;
        for slot in successor.iter_mut().rev() {
            *slot += 1;
            if *slot < self.cod {
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if advanced {
            self.next = Some(successor);
        }
        Some(FiniteFunction::from_parts_unchecked(
            self.dom, self.cod, current,
        ))
    }
}

pub fn enumerate_functions(dom: &FiniteSet, cod: &FiniteSet) -> Functions {
    let next = if dom.size() > 0 && cod.size() == 0 {
        None
    } else {
        Some(vec![0; dom.size()])
    };
    Functions {
        dom: dom.size(),
        cod: cod.size(),
        next,
    }
}

/// All subsets, by increasing cardinality and then lexicographically.
pub fn enumerate_subsets(set: &FiniteSet) -> impl Iterator<Item = SubsetMask> + '_ {
    (0..=set.size()).flat_map(move |k| {
        set.elements()
            .combinations(k)
            .map(move |members| SubsetMask {
                ambient: set.clone(),
                members,
            })
    })
}

/// All functions between sets of size at most `max_size`, ordered by
/// domain size, then codomain size, then table.
pub fn all_functions_up_to(max_size: usize) -> impl Iterator<Item = FiniteFunction> {
    (0..=max_size)
        .cartesian_product(0..=max_size)
        .flat_map(|(d, c)| {
            enumerate_functions(&FiniteSet::new(d), &FiniteSet::new(c)).collect::<Vec<_>>()
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn func(dom: usize, cod: usize, table: &[usize]) -> FiniteFunction {
        FiniteFunction::new(dom, cod, table.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = func(3, 3, &[0, 2, 1]);
        assert_eq!(compose(&FiniteFunction::identity(3), &f).unwrap(), f);

        let constant = func(2, 1, &[0, 0]);
        let pick = func(1, 3, &[2]);
        assert_eq!(compose(&pick, &constant).unwrap().table(), &[2, 2]);

        let swap = func(2, 2, &[1, 0]);
        assert!(compose(&swap, &swap).unwrap().is_identity());
    }

    #[test]
    fn compose_mismatch() {
        let f = func(2, 2, &[0, 1]);
        let g = func(3, 1, &[0, 0, 0]);
        assert_eq!(
            compose(&g, &f),
            Err(FinsetError::Composition { f_cod: 2, g_dom: 3 })
        );
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            FiniteFunction::new(2, 1, vec![0, 1]),
            Err(FinsetError::EntryOutOfRange {
                position: 1,
                value: 1,
                cod: 1
            })
        ));
        assert!(matches!(
            FiniteFunction::new(2, 2, vec![0]),
            Err(FinsetError::TableLength { .. })
        ));
    }

    #[test]
    fn inclusion_examples() {
        let a = SubsetMask::new(3, vec![2, 0]).unwrap();
        let i = inclusion(&a);
        assert_eq!(i.table(), &[0, 2]);
        assert_eq!(
            i.dom().labels().unwrap(),
            &["0".to_string(), "2".to_string()]
        );

        let empty = inclusion(&SubsetMask::empty(3));
        assert_eq!(empty.dom().size(), 0);
        assert_eq!(empty.cod().size(), 3);

        assert!(inclusion(&SubsetMask::full(3)).is_identity());
    }

    #[test]
    fn enumerate_function_counts() {
        let count = |d: usize, c: usize| {
            enumerate_functions(&FiniteSet::new(d), &FiniteSet::new(c)).count()
        };
        assert_eq!(count(2, 2), 4);
        assert_eq!(count(0, 5), 1);
        assert_eq!(count(1, 0), 0);
        assert_eq!(count(0, 0), 1);
        for d in 0..=4u32 {
            for c in 0..=4usize {
                assert_eq!(count(d as usize, c), c.pow(d), "{d} -> {c}");
            }
        }
    }

    #[test]
    fn enumerate_functions_lexicographic() {
        let tables: Vec<Vec<usize>> = enumerate_functions(&2.into(), &2.into())
            .map(|f| f.table().to_vec())
            .collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn enumerate_subsets_order() {
        let subsets: Vec<Vec<usize>> = enumerate_subsets(&2.into())
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(subsets, vec![vec![], vec![0], vec![1], vec![0, 1]]);

        assert_eq!(enumerate_subsets(&0.into()).count(), 1);

        let three: Vec<SubsetMask> = enumerate_subsets(&3.into()).collect();
        assert_eq!(three.len(), 8);
        assert!(three[0].is_empty());
        assert_eq!(three[7].members(), &[0, 1, 2]);
    }

    #[test]
    fn injectivity_and_surjectivity() {
        let perm = func(3, 3, &[0, 2, 1]);
        assert!(perm.is_injective() && perm.is_surjective());
        let collapse = func(2, 2, &[0, 0]);
        assert!(!collapse.is_injective() && !collapse.is_surjective());
        let empty = FiniteFunction::from_empty(2);
        assert!(empty.is_injective() && !empty.is_surjective());
    }

    #[test]
    fn associativity_exhaustive() {
        for f in all_functions_up_to(2) {
            for g in enumerate_functions(f.cod(), &3.into()) {
                for h in enumerate_functions(g.cod(), &2.into()) {
                    let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
                    let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn labels_are_cosmetic() {
        let labelled = FiniteSet::with_labels(vec!["a", "b"]).unwrap();
        assert_eq!(labelled, FiniteSet::new(2));
        assert!(FiniteSet::with_labels(vec!["a", "a"]).is_err());
    }

    #[test]
    fn subset_bits_roundtrip() {
        for bits in 0..16u64 {
            assert_eq!(SubsetMask::from_bits(4, bits).bits(), bits);
        }
    }
}
