//! Built-in example functors, addressable as `zoo:<name>`.

use crate::instance::FunctorInstance;
use crate::presentation::{parse_presentation, Presentation};

/// `(name, .ffn source)` for every zoo functor.
pub const ZOO: &[(&str, &str)] = &[
    ("identity", "functor identity\nshape x/1\n"),
    ("const2", "functor const2\nshape a/0\nshape b/0\n"),
    ("power2", "functor power2\nshape p/2\n"),
    ("power3", "functor power3\nshape t/3\n"),
    ("upair", "functor upair\nshape p/2\neq p(a,b) = p(b,a)\n"),
    // non-empty subsets of size at most two: e(a) = {a}, s(a,b) = {a,b}
    (
        "exp2",
        "functor exp2\nshape e/1\nshape s/2\neq s(a,b) = s(b,a)\neq s(a,a) = e(a)\n",
    ),
    ("pointed", "functor pointed\nshape pt/0\nshape x/1\n"),
    (
        "twins",
        "functor twins\nshape c/0\nshape d/0\nshape u/1\neq c = u(a)\neq d = u(a)\n",
    ),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ZOO.iter().map(|(name, _)| *name)
}

pub fn presentation(name: &str) -> Option<Presentation> {
    ZOO.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_presentation(text).expect("zoo presentations parse"))
}

pub fn instance(name: &str) -> Option<FunctorInstance> {
    presentation(name).map(FunctorInstance::from_presentation)
}

pub fn all() -> Vec<FunctorInstance> {
    names().map(|n| instance(n).unwrap()).collect()
}
