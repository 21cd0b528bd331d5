//! Violation reports shared by every validator.

use std::fmt;

/// A machine-readable name for one checked law.
pub trait LawCode: Copy + Eq + fmt::Debug {
    /// Stable kebab-case identifier used in record output.
    fn code(&self) -> &'static str;
    fn describe(&self) -> &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation<C> {
    pub law: C,
    /// Carrier indices witnessing the failure, in the order the law names them.
    pub witness: Vec<usize>,
}

/// Violations found by a validator. At most one entry per law: the first
/// witness in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report<C> {
    violations: Vec<Violation<C>>,
}

impl<C> Default for Report<C> {
    fn default() -> Self {
        Report {
            violations: Vec::new(),
        }
    }
}

impl<C: LawCode> Report<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `witness` for `law` unless that law already has one.
    pub fn push(&mut self, law: C, witness: Vec<usize>) {
        if !self.violates(law) {
            self.violations.push(Violation { law, witness });
        }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation<C>] {
        &self.violations
    }

    pub fn violates(&self, law: C) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn witness(&self, law: C) -> Option<&[usize]> {
        self.violations
            .iter()
            .find(|v| v.law == law)
            .map(|v| v.witness.as_slice())
    }

    /// Line-oriented `code\twitness` records.
    pub fn records(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(v.law.code());
            out.push('\t');
            let w: Vec<String> = v.witness.iter().map(|x| x.to_string()).collect();
            out.push_str(&w.join(" "));
            out.push('\n');
        }
        out
    }
}

impl<C: LawCode> fmt::Display for Report<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "no violations");
        }
        for v in &self.violations {
            writeln!(
                f,
                "{}: {} (witness {:?})",
                v.law.code(),
                v.law.describe(),
                v.witness
            )?;
        }
        Ok(())
    }
}
