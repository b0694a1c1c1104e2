//! Validation reports: violations are data, not errors.

use std::fmt;

use crate::scalar::{format_rational, Rational, Vector};

/// One failed identity: the condition tag, the basis indices it was
/// evaluated on, and the nonzero difference `lhs − rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub indices: Vec<usize>,
    pub difference: Vector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records a violation when `difference` is nonzero.
    pub fn check(&mut self, condition: &str, indices: &[usize], difference: Vector) {
        if difference.iter().any(|x| *x != Rational::default()) {
            self.violations.push(Violation {
                condition: condition.to_string(),
                indices: indices.to_vec(),
                difference,
            });
        }
    }

    /// Records an unconditional violation with no difference vector.
    pub fn fail(&mut self, condition: &str, indices: &[usize]) {
        self.violations.push(Violation {
            condition: condition.to_string(),
            indices: indices.to_vec(),
            difference: Vec::new(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Prefixes every condition tag, e.g. `"rep"` turns `(ii)` into `rep (ii)`.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for v in &mut self.violations {
            v.condition = format!("{prefix} {}", v.condition);
        }
        self
    }

    /// Sorts violations lexicographically by `(condition, indices)`.
    pub fn sorted(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (&a.condition, &a.indices).cmp(&(&b.condition, &b.indices)));
        self
    }

    /// Distinct condition tags, in order of first appearance.
    pub fn conditions(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.condition.as_str()) {
                out.push(&v.condition);
            }
        }
        out
    }

    pub fn mentions(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diff: Vec<String> = self.difference.iter().map(format_rational).collect();
        write!(f, "{} at {:?}: lhs-rhs = [{}]", self.condition, self.indices, diff.join(", "))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
