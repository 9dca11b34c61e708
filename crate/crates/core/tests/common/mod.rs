//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use finsupp::finset::{enumerate_subsets, inclusion, FiniteSet, SubsetMask};
use finsupp::{FiniteFunction, FunctorInstance, Presentation};

pub type RawTerm = (usize, Vec<usize>);

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Equivalence classes of raw terms over `{0..size}`, each a sorted set,
/// computed by relabelling to a fixpoint instead of union–find.
pub fn naive_classes(p: &Presentation, size: usize) -> Vec<BTreeSet<RawTerm>> {
    let mut label: BTreeMap<RawTerm, usize> = BTreeMap::new();
    for (s, shape) in p.shapes.iter().enumerate() {
        for t in tuples(size, shape.arity) {
            let next = label.len();
            label.insert((s, t), next);
        }
    }
    let mut pairs = Vec::new();
    for eq in &p.equations {
        let vars = eq.variables();
        for theta in tuples(size, vars.len()) {
            let inst = |vs: &Vec<String>| -> Vec<usize> {
                vs.iter()
                    .map(|v| theta[vars.iter().position(|w| w == v).unwrap()])
                    .collect()
            };
            pairs.push((
                (eq.lhs.shape, inst(&eq.lhs.vars)),
                (eq.rhs.shape, inst(&eq.rhs.vars)),
            ));
        }
    }
    loop {
        let mut changed = false;
        for (l, r) in &pairs {
            let (a, b) = (label[l], label[r]);
            if a != b {
                let (keep, drop) = (a.min(b), a.max(b));
                for v in label.values_mut() {
                    if *v == drop {
                        *v = keep;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<usize, BTreeSet<RawTerm>> = BTreeMap::new();
    for (term, l) in label {
        classes.entry(l).or_default().insert(term);
    }
    let mut out: Vec<BTreeSet<RawTerm>> = classes.into_values().collect();
    out.sort_by(|a, b| a.first().cmp(&b.first()));
    out
}

pub fn format_term(p: &Presentation, term: &RawTerm) -> String {
    let name = &p.shapes[term.0].name;
    if term.1.is_empty() {
        name.clone()
    } else {
        let args: Vec<String> = term.1.iter().map(ToString::to_string).collect();
        format!("{}({})", name, args.join(","))
    }
}

/// Image of `G(f)` for `f` given as a table, computed elementwise.
pub fn image(g: &FunctorInstance, f: &FiniteFunction) -> BTreeSet<usize> {
    g.morphism(f).unwrap().table().iter().copied().collect()
}

/// All `A ⊆ X` with `a ∈ Im G(i_A)`.
pub fn support_family(g: &FunctorInstance, size: usize, a: usize) -> Vec<SubsetMask> {
    enumerate_subsets(&FiniteSet::new(size))
        .filter(|s| image(g, &inclusion(s)).contains(&a))
        .collect()
}

/// The smallest member of the family by brute force: a member contained in
/// every other member.
pub fn brute_force_support(g: &FunctorInstance, size: usize, a: usize) -> Option<SubsetMask> {
    let family = support_family(g, size, a);
    family
        .iter()
        .find(|s| family.iter().all(|t| s.is_subset_of(t)))
        .cloned()
}
