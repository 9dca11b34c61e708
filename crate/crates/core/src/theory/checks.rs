//! Exhaustive property checks over all sets of size `≤ max_size`.
//!
//! Work items are evaluated in parallel and their results collected in
//! enumeration order, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::support::SupportEngine;
use super::TheoryError;
use crate::finset::{
    all_functions_up_to, compose, enumerate_functions, inclusion, FiniteFunction, FiniteSet,
    SubsetMask,
};
use crate::instance::{FunctorInstance, QueryError};
use crate::report::{CheckReport, Counterexample};

type ItemResult = Result<(usize, Vec<Counterexample>), QueryError>;
type SizeResult<'a> = Result<(usize, Vec<Counterexample>, BTreeMap<&'a str, usize>), QueryError>;

fn gather(results: Vec<ItemResult>) -> Result<(usize, Vec<Counterexample>), QueryError> {
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for result in results {
        let (n, mut cx) = result?;
        cases += n;
        counterexamples.append(&mut cx);
    }
    Ok((cases, counterexamples))
}

fn names(functor: &FunctorInstance, size: usize) -> Result<Vec<String>, QueryError> {
    functor.element_names(size)
}

/// `G(id) = id` and `G(g∘f) = G(g)∘G(f)` for all composable `f, g`.
pub fn check_laws(functor: &FunctorInstance, max_size: usize) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let functions: Vec<FiniteFunction> = all_functions_up_to(max_size).collect();
    let results: Vec<ItemResult> = functions
        .par_iter()
        .map(|f| {
            let mut cases = 0;
            let mut found = Vec::new();
            let ff = functor.morphism(f)?;
            if f.is_identity() {
                cases += 1;
                if !ff.is_identity() {
                    found.push(Counterexample {
                        sizes: vec![f.dom().size()],
                        functions: vec![f.clone()],
                        detail: format!("F(id{}) = {ff} is not the identity", f.dom().size()),
                        ..Counterexample::default()
                    });
                }
            }
            for c in 0..=max_size {
                for g in enumerate_functions(f.cod(), &FiniteSet::new(c)) {
                    cases += 1;
                    let gf = compose(&g, f).expect("endpoints match");
                    let left = functor.morphism(&gf)?;
                    let right = compose(&functor.morphism(&g)?, &ff).expect("endpoints match");
                    if left != right {
                        let x = (0..left.dom().size())
                            .find(|&x| left.apply(x) != right.apply(x))
                            .expect("tables differ");
                        let (dom_names, cod_names) =
                            (names(functor, f.dom().size())?, names(functor, c)?);
                        found.push(Counterexample {
                            sizes: vec![f.dom().size(), f.cod().size(), c],
                            functions: vec![f.clone(), g],
                            elements: vec![dom_names[x].clone()],
                            detail: format!(
                                "F(g∘f) sends `{}` to `{}` but F(g)∘F(f) sends it to `{}`",
                                dom_names[x],
                                cod_names[left.apply(x)],
                                cod_names[right.apply(x)]
                            ),
                            ..Counterexample::default()
                        });
                    }
                }
            }
            Ok((cases, found))
        })
        .collect();
    let (cases, counterexamples) = gather(results)?;
    Ok(CheckReport::new(
        "laws",
        max_size,
        cases,
        counterexamples,
        started,
    ))
}

/// `G(f)` injective for every injective `f`, including maps out of ∅.
pub fn check_monomorphic(
    functor: &FunctorInstance,
    max_size: usize,
) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let injections: Vec<FiniteFunction> = all_functions_up_to(max_size)
        .filter(FiniteFunction::is_injective)
        .collect();
    let results: Vec<ItemResult> = injections
        .par_iter()
        .map(|f| {
            let ff = functor.morphism(f)?;
            let mut first_with_image: Vec<Option<usize>> = vec![None; ff.cod().size()];
            for (x, &y) in ff.table().iter().enumerate() {
                if let Some(earlier) = first_with_image[y] {
                    let n = names(functor, f.dom().size())?;
                    return Ok((
                        1,
                        vec![Counterexample {
                            sizes: vec![f.dom().size(), f.cod().size()],
                            functions: vec![f.clone()],
                            elements: vec![n[earlier].clone(), n[x].clone()],
                            detail: format!(
                                "F({f}) identifies `{}` and `{}` although {f} is injective",
                                n[earlier], n[x]
                            ),
                            ..Counterexample::default()
                        }],
                    ));
                }
                first_with_image[y] = Some(x);
            }
            Ok((1, Vec::new()))
        })
        .collect();
    let (cases, counterexamples) = gather(results)?;
    Ok(CheckReport::new(
        "mono",
        max_size,
        cases,
        counterexamples,
        started,
    ))
}

/// `G(f)` surjective for every surjective `f`.
pub fn check_epimorphic(
    functor: &FunctorInstance,
    max_size: usize,
) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let surjections: Vec<FiniteFunction> = all_functions_up_to(max_size)
        .filter(FiniteFunction::is_surjective)
        .collect();
    let results: Vec<ItemResult> = surjections
        .par_iter()
        .map(|f| {
            let ff = functor.morphism(f)?;
            let image = ff.image();
            match (0..ff.cod().size()).find(|y| !image.contains(*y)) {
                None => Ok((1, Vec::new())),
                Some(missed) => {
                    let name = functor.element_name(f.cod().size(), missed)?;
                    Ok((
                        1,
                        vec![Counterexample {
                            sizes: vec![f.dom().size(), f.cod().size()],
                            functions: vec![f.clone()],
                            elements: vec![name.clone()],
                            detail: format!("`{name}` is not in the image of F({f})"),
                            ..Counterexample::default()
                        }],
                    ))
                }
            }
        })
        .collect();
    let (cases, counterexamples) = gather(results)?;
    Ok(CheckReport::new(
        "epi",
        max_size,
        cases,
        counterexamples,
        started,
    ))
}

/// Images of `G(i_A)` for every `A ⊆ X`, indexed by the bitmask of `A`.
fn subset_images(functor: &FunctorInstance, size: usize) -> Result<Vec<Vec<bool>>, QueryError> {
    let len = functor.cardinality(size)?;
    (0..1u64 << size)
        .map(|bits| {
            let mut hit = vec![false; len];
            for &y in functor
                .morphism(&inclusion(&SubsetMask::from_bits(size, bits)))?
                .table()
            {
                hit[y] = true;
            }
            Ok(hit)
        })
        .collect()
}

const CASE_NESTED: &str = "case nested (A⊆B or B⊆A)";
const CASE_DISJOINT: &str = "case disjoint (A,B non-empty, A∩B=∅)";
const CASE_DISJOINT_NONEMPTY: &str = "case disjoint with non-empty right side";
const CASE_OVERLAP: &str = "case overlapping (A∩B≠∅, incomparable)";

/// `Im G(i_{A∩B}) = Im G(i_A) ∩ Im G(i_B)` for every `X` and every pair of
/// subsets `A, B ⊆ X`.
pub fn check_intersections(
    functor: &FunctorInstance,
    max_size: usize,
) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let per_size: Vec<SizeResult> = (0..=max_size)
        .into_par_iter()
        .map(|size| {
            let images = subset_images(functor, size)?;
            let element_names = names(functor, size)?;
            let mut stats: BTreeMap<&str, usize> = BTreeMap::new();
            let mut found = Vec::new();
            let mut cases = 0;
            let masks = 1u64 << size;
            for a in 0..masks {
                for b in 0..masks {
                    cases += 1;
                    let meet = a & b;
                    let right: Vec<bool> = images[a as usize]
                        .iter()
                        .zip(&images[b as usize])
                        .map(|(x, y)| *x && *y)
                        .collect();
                    let left = &images[meet as usize];
                    if a & !b == 0 || b & !a == 0 {
                        *stats.entry(CASE_NESTED).or_default() += 1;
                    } else if meet == 0 {
                        *stats.entry(CASE_DISJOINT).or_default() += 1;
                        if right.iter().any(|&r| r) {
                            *stats.entry(CASE_DISJOINT_NONEMPTY).or_default() += 1;
                        }
                    } else {
                        *stats.entry(CASE_OVERLAP).or_default() += 1;
                    }
                    if let Some(e) = (0..right.len()).find(|&e| left[e] != right[e]) {
                        let (sa, sb) = (
                            SubsetMask::from_bits(size, a),
                            SubsetMask::from_bits(size, b),
                        );
                        let side = if right[e] {
                            "Im(A)∩Im(B) but not Im(A∩B)"
                        } else {
                            "Im(A∩B) but not Im(A)∩Im(B)"
                        };
                        found.push(Counterexample {
                            sizes: vec![size],
                            subsets: vec![sa.clone(), sb.clone()],
                            elements: vec![element_names[e].clone()],
                            detail: format!(
                                "A={sa}, B={sb} in X={size}: `{}` is in {side}",
                                element_names[e]
                            ),
                            ..Counterexample::default()
                        });
                    }
                }
            }
            Ok((cases, found, stats))
        })
        .collect();
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    let mut stats: BTreeMap<String, usize> = BTreeMap::new();
    for result in per_size {
        let (n, mut cx, s) = result?;
        cases += n;
        counterexamples.append(&mut cx);
        for (k, v) in s {
            *stats.entry(k.to_string()).or_default() += v;
        }
    }
    let mut report = CheckReport::new("intersections", max_size, cases, counterexamples, started)
        .with_note(
            "arbitrary families of subsets of a finite set reduce to pairwise intersections",
        );
    report.stats = stats;
    Ok(report)
}

/// The removal orders used for greedy supports: ascending, descending, and
/// one shuffle per seed.
pub fn removal_orders(size: usize, seeds: &[u64]) -> Vec<(String, Vec<usize>)> {
    let ascending: Vec<usize> = (0..size).collect();
    let mut orders = vec![
        ("ascending".to_string(), ascending.clone()),
        (
            "descending".to_string(),
            ascending.iter().rev().copied().collect(),
        ),
    ];
    for &seed in seeds {
        let mut shuffled = ascending.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        orders.push((format!("shuffled(seed {seed})"), shuffled));
    }
    orders
}

/// For every `a ∈ G(X)`: the family `{A ⊆ X : a ∈ Im G(i_A)}` is upward
/// closed and closed under intersection, its meet belongs to it, and greedy
/// removal in every tested order returns that meet with a valid witness.
pub fn check_support_family(
    functor: &FunctorInstance,
    max_size: usize,
    seeds: &[u64],
) -> Result<CheckReport, TheoryError> {
    let started = Instant::now();
    let engine = match SupportEngine::new(functor, max_size.max(1)) {
        Ok(engine) => engine,
        Err(TheoryError::NotMonomorphic { injection, detail }) => {
            let cx = Counterexample {
                sizes: vec![injection.dom().size(), injection.cod().size()],
                functions: vec![injection],
                detail: format!("supports are undefined: {detail}"),
                ..Counterexample::default()
            };
            return Ok(CheckReport::new("support", max_size, 0, vec![cx], started));
        }
        Err(other) => return Err(other),
    };

    let mut items = Vec::new();
    for size in 0..=max_size {
        for element in 0..functor.cardinality(size)? {
            items.push((size, element));
        }
    }
    let images: Vec<Vec<Vec<bool>>> = (0..=max_size)
        .map(|size| subset_images(functor, size))
        .collect::<Result<_, _>>()?;

    let results: Vec<Result<(usize, Vec<Counterexample>), TheoryError>> = items
        .par_iter()
        .map(|&(size, element)| {
            let images = &images[size];
            let name = functor.element_name(size, element)?;
            let family: Vec<u64> = (0..1u64 << size)
                .filter(|&bits| images[bits as usize][element])
                .collect();
            let member = |bits: u64| images[bits as usize][element];
            let fail = |detail: String, subsets: Vec<SubsetMask>| Counterexample {
                sizes: vec![size],
                subsets,
                elements: vec![name.clone()],
                detail,
                ..Counterexample::default()
            };
            let mut found = Vec::new();
            let full = (1u64 << size) - 1;
            if !member(full) {
                found.push(fail(
                    format!("`{name}` is not in the image of the identity"),
                    vec![],
                ));
            }
            for &a in &family {
                for sup in 0..1u64 << size {
                    if a & !sup == 0 && !member(sup) {
                        found.push(fail(
                            format!("family of `{name}` is not upward closed"),
                            vec![
                                SubsetMask::from_bits(size, a),
                                SubsetMask::from_bits(size, sup),
                            ],
                        ));
                    }
                }
                for &b in &family {
                    if !member(a & b) {
                        found.push(fail(
                            format!("family of `{name}` is not closed under intersection"),
                            vec![
                                SubsetMask::from_bits(size, a),
                                SubsetMask::from_bits(size, b),
                            ],
                        ));
                    }
                }
            }
            let meet = family.iter().fold(full, |acc, &b| acc & b);
            if !member(meet) {
                found.push(fail(
                    format!("the meet of the family of `{name}` is not in it"),
                    vec![SubsetMask::from_bits(size, meet)],
                ));
            }
            let expected = SubsetMask::from_bits(size, meet);
            for (label, order) in removal_orders(size, seeds) {
                let result = engine.support_with_order(size, element, &order)?;
                if result.support != expected {
                    found.push(fail(
                        format!(
                            "greedy support of `{name}` ({label}) is {} but the meet is {expected}",
                            result.support
                        ),
                        vec![result.support.clone(), expected.clone()],
                    ));
                }
                let mapped = functor
                    .morphism(&inclusion(&result.support))?
                    .apply(result.witness);
                if mapped != element {
                    found.push(fail(
                        format!("witness of `{name}` ({label}) does not map to it"),
                        vec![result.support.clone()],
                    ));
                }
            }
            Ok((1, found))
        })
        .collect();

    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for result in results {
        let (n, mut cx) = result?;
        cases += n;
        counterexamples.append(&mut cx);
    }
    let orders = 2 + seeds.len();
    Ok(
        CheckReport::new("support", max_size, cases, counterexamples, started).with_note(format!(
            "greedy removal compared in {orders} orders against the family meet"
        )),
    )
}
