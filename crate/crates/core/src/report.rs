use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::finset::{FiniteFunction, SubsetMask};

/// Counterexamples kept per report; `failures` still counts all of them.
pub const MAX_COUNTEREXAMPLES: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Counterexample {
    /// Sizes of the finite sets involved.
    pub sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FiniteFunction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<SubsetMask>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.detail)?;
        if !self.functions.is_empty() {
            let fns: Vec<String> = self.functions.iter().map(ToString::to_string).collect();
            write!(f, " [functions: {}]", fns.join(", "))?;
        }
        if !self.subsets.is_empty() {
            let subsets: Vec<String> = self
                .subsets
                .iter()
                .map(|s| format!("{}⊆{}", s, s.ambient().size()))
                .collect();
            write!(f, " [subsets: {}]", subsets.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of one exhaustive property check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub max_size: usize,
    pub verdict: Verdict,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    /// `counterexamples` must be in enumeration order; the verdict is
    /// `Fail` exactly when it is non-empty.
    pub fn new(
        name: impl Into<String>,
        max_size: usize,
        cases: usize,
        mut counterexamples: Vec<Counterexample>,
        started: Instant,
    ) -> Self {
        let failures = counterexamples.len();
        counterexamples.truncate(MAX_COUNTEREXAMPLES);
        CheckReport {
            name: name.into(),
            max_size,
            verdict: if failures == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            cases,
            failures,
            counterexamples,
            notes: Vec::new(),
            stats: BTreeMap::new(),
            elapsed: started.elapsed(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} (max size {}, {} cases",
            self.verdict, self.name, self.max_size, self.cases
        )?;
        if self.failures > 0 {
            write!(f, ", {} failure(s)", self.failures)?;
        }
        writeln!(f, ")")?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for (key, value) in &self.stats {
            writeln!(f, "  {key}: {value}")?;
        }
        for cx in &self.counterexamples {
            writeln!(f, "  - {cx}")?;
        }
        if self.failures > self.counterexamples.len() {
            writeln!(f, "  … {} more", self.failures - self.counterexamples.len())?;
        }
        Ok(())
    }
}
