//! Functors presented as a polynomial functor (shapes with arities) modulo
//! flat equations.
//!
//! The value of a presented functor at a finite set `X` is the set of raw
//! terms `s(x₁, …, xₖ)` with `xᵢ ∈ X`, quotiented by the equivalence relation
//! generated by every instance of every equation under every assignment of
//! its variables to elements of `X`.

mod eval;
mod parser;

use std::fmt;

use itertools::Itertools;

pub use eval::{ElementRef, EvaluatedObject, Evaluator};
pub use parser::{parse_presentation, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub name: String,
    pub arity: usize,
}

/// A depth-one term `shape(v₁, …, vₖ)` over variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTerm {
    /// Index into the owning presentation's shape list.
    pub shape: usize,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: FlatTerm,
    pub rhs: FlatTerm,
}

impl Equation {
    /// Distinct variables of both sides, in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        self.lhs
            .vars
            .iter()
            .chain(&self.rhs.vars)
            .map(String::as_str)
            .unique()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub shapes: Vec<Shape>,
    pub equations: Vec<Equation>,
}

impl Presentation {
    pub fn max_arity(&self) -> usize {
        self.shapes.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn shape_index(&self, name: &str) -> Option<usize> {
        self.shapes.iter().position(|s| s.name == name)
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>, term: &FlatTerm) -> fmt::Result {
        let shape = &self.shapes[term.shape];
        if term.vars.is_empty() {
            write!(f, "{}", shape.name)
        } else {
            write!(f, "{}({})", shape.name, term.vars.iter().join(","))
        }
    }
}

/// Renders the presentation in the `.ffn` syntax accepted by
/// [`parse_presentation`].
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "functor {}", self.name)?;
        for shape in &self.shapes {
            writeln!(f, "shape {}/{}", shape.name, shape.arity)?;
        }
        for eq in &self.equations {
            write!(f, "eq ")?;
            self.write_term(f, &eq.lhs)?;
            write!(f, " = ")?;
            self.write_term(f, &eq.rhs)?;
            writeln!(f)?;
        }
        Ok(())
    }
}
