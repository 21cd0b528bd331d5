//! Hilbert-style derivations and their checker.
//!
//! Steps are numbered from 1, both in memory and in proof files, and rules
//! refer to earlier steps by number.

use std::fmt;

use super::axioms::{match_axiom, match_schema, AxiomSchema};
use super::formula::Formula;
use super::parser::parse;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// An instance of the given schema, or of any schema when `None`.
    Axiom(Option<AxiomSchema>),
    /// From step `i` = φ and step `j` = φ -> ψ, conclude ψ.
    ModusPonens(usize, usize),
    /// From step `i` = φ -> ψ, conclude ~ψ -> ~φ.
    Contraposition(usize),
    /// From step `i` = φ, conclude G φ.
    GNecessitation(usize),
    /// From step `i` = φ, conclude H φ.
    HNecessitation(usize),
}

impl Justification {
    fn premises(&self) -> Vec<usize> {
        match *self {
            Justification::Axiom(_) => vec![],
            Justification::ModusPonens(i, j) => vec![i, j],
            Justification::Contraposition(i)
            | Justification::GNecessitation(i)
            | Justification::HNecessitation(i) => vec![i],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(None) => write!(f, "axiom"),
            Justification::Axiom(Some(s)) => write!(f, "axiom {s}"),
            Justification::ModusPonens(i, j) => write!(f, "mp {i} {j}"),
            Justification::Contraposition(i) => write!(f, "contra {i}"),
            Justification::GNecessitation(i) => write!(f, "nec-g {i}"),
            Justification::HNecessitation(i) => write!(f, "nec-h {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofStep {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        ProofStep {
            formula,
            justification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// 1-based number of the first incorrect step.
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Rejected(r) => write!(f, "rejected at step {}: {}", r.step, r.reason),
        }
    }
}

fn check_step(steps: &[ProofStep], n: usize) -> std::result::Result<(), String> {
    let step = &steps[n - 1];
    for i in step.justification.premises() {
        if i == 0 || i >= n {
            return Err(format!(
                "reference to step {i}, which is not an earlier step"
            ));
        }
    }
    let at = |i: usize| &steps[i - 1].formula;
    let this = &step.formula;
    match step.justification {
        Justification::Axiom(Some(schema)) => match_schema(schema, this)
            .map(|_| ())
            .ok_or_else(|| format!("not an instance of {schema}")),
        Justification::Axiom(None) => match_axiom(this)
            .map(|_| ())
            .ok_or_else(|| "not an instance of any axiom schema".to_string()),
        Justification::ModusPonens(i, j) => match at(j) {
            Formula::Imp(a, b) if **a == *at(i) && **b == *this => Ok(()),
            Formula::Imp(a, _) if **a != *at(i) => {
                Err(format!("antecedent of step {j} is not step {i}"))
            }
            Formula::Imp(..) => Err(format!("consequent of step {j} is not this formula")),
            _ => Err(format!("step {j} is not an implication")),
        },
        Justification::Contraposition(i) => match (at(i), this) {
            (Formula::Imp(a, b), Formula::Imp(nb, na))
                if **nb == Formula::neg((**b).clone()) && **na == Formula::neg((**a).clone()) =>
            {
                Ok(())
            }
            (Formula::Imp(..), _) => Err(format!("not the contrapositive of step {i}")),
            _ => Err(format!("step {i} is not an implication")),
        },
        Justification::GNecessitation(i) => match this {
            Formula::G(a) if **a == *at(i) => Ok(()),
            _ => Err(format!("not G applied to step {i}")),
        },
        Justification::HNecessitation(i) => match this {
            Formula::H(a) if **a == *at(i) => Ok(()),
            _ => Err(format!("not H applied to step {i}")),
        },
    }
}

/// Accepts iff every step is an axiom instance or follows from earlier steps
/// by modus ponens, contraposition or G/H necessitation.
pub fn check_proof(steps: &[ProofStep]) -> Verdict {
    for n in 1..=steps.len() {
        if let Err(reason) = check_step(steps, n) {
            return Verdict::Rejected(Rejection { step: n, reason });
        }
    }
    Verdict::Accepted
}

fn parse_index(word: &str, line: usize, column: usize) -> Result<usize> {
    word.parse().map_err(|_| {
        Error::syntax(
            line,
            column,
            format!("expected a step number, found `{word}`"),
        )
    })
}

fn parse_justification(text: &str, line: usize, column: usize) -> Result<Justification> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let arity = |k: usize| -> Result<()> {
        if words.len() != k + 1 {
            return Err(Error::syntax(
                line,
                column,
                format!("`{}` takes {k} step number(s)", words[0]),
            ));
        }
        Ok(())
    };
    let idx = |k: usize| parse_index(words[k], line, column);
    match words.first().copied() {
        Some("axiom") => match words.len() {
            1 => Ok(Justification::Axiom(None)),
            2 => AxiomSchema::from_name(words[1])
                .map(|s| Justification::Axiom(Some(s)))
                .ok_or_else(|| {
                    Error::syntax(line, column, format!("unknown schema `{}`", words[1]))
                }),
            _ => Err(Error::syntax(
                line,
                column,
                "`axiom` takes at most a schema name",
            )),
        },
        Some("mp") => {
            arity(2)?;
            Ok(Justification::ModusPonens(idx(1)?, idx(2)?))
        }
        Some("contra") => {
            arity(1)?;
            Ok(Justification::Contraposition(idx(1)?))
        }
        Some("nec-g") => {
            arity(1)?;
            Ok(Justification::GNecessitation(idx(1)?))
        }
        Some("nec-h") => {
            arity(1)?;
            Ok(Justification::HNecessitation(idx(1)?))
        }
        Some(other) => Err(Error::syntax(
            line,
            column,
            format!("unknown justification `{other}`"),
        )),
        None => Err(Error::syntax(line, column, "missing justification")),
    }
}

/// Parses a proof file: one `n. formula ; justification` per line, numbered
/// consecutively from 1. Blank lines and `#` comments are skipped.
pub fn parse_proof(text: &str) -> Result<Vec<ProofStep>> {
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let dot = content
            .find('.')
            .ok_or_else(|| Error::syntax(line, 1, "expected `n.` before the formula"))?;
        let number = parse_index(content[..dot].trim(), line, 1)?;
        if number != steps.len() + 1 {
            return Err(Error::syntax(
                line,
                1,
                format!("step numbered {number}, expected {}", steps.len() + 1),
            ));
        }
        let rest = &content[dot + 1..];
        let semi = rest
            .find(';')
            .ok_or_else(|| Error::syntax(line, dot + 2, "expected `;` before the justification"))?;
        let formula_col = dot + 2;
        let formula = parse(&rest[..semi]).map_err(|e| match e {
            Error::Syntax {
                column, message, ..
            } => Error::syntax(line, formula_col + column - 1, message),
            other => other,
        })?;
        let justification = parse_justification(&rest[semi + 1..], line, formula_col + semi + 1)?;
        steps.push(ProofStep {
            formula,
            justification,
        });
    }
    Ok(steps)
}

/// Inverse of [`parse_proof`].
pub fn format_proof(steps: &[ProofStep]) -> String {
    steps
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{}. {} ; {}\n", i + 1, s.formula, s.justification))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(f: &str, j: Justification) -> ProofStep {
        ProofStep::new(parse(f).unwrap(), j)
    }

    #[test]
    fn necessitation_of_an_axiom() {
        let proof = [
            step("p -> (q -> p)", Justification::Axiom(None)),
            step("G(p -> (q -> p))", Justification::GNecessitation(1)),
        ];
        assert_eq!(check_proof(&proof), Verdict::Accepted);
    }

    #[test]
    fn dangling_reference() {
        let proof = [step("p", Justification::ModusPonens(0, 0))];
        match check_proof(&proof) {
            Verdict::Rejected(r) => {
                assert_eq!(r.step, 1);
                assert!(r.reason.contains("not an earlier step"));
            }
            v => panic!("unexpected {v:?}"),
        }
        let forward = [
            step("p -> (q -> p)", Justification::GNecessitation(2)),
            step("p -> (q -> p)", Justification::Axiom(None)),
        ];
        assert!(!check_proof(&forward).is_accepted());
    }

    #[test]
    fn contraposition_of_a1() {
        let proof = [
            step("p -> (q -> p)", Justification::Axiom(None)),
            step("~(q -> p) -> ~p", Justification::Contraposition(1)),
        ];
        assert_eq!(check_proof(&proof), Verdict::Accepted);
        let wrong = [
            step("p -> (q -> p)", Justification::Axiom(None)),
            step("~p -> ~(q -> p)", Justification::Contraposition(1)),
        ];
        assert!(!check_proof(&wrong).is_accepted());
    }

    #[test]
    fn modus_ponens_direction() {
        let ok = [
            step("p -> (q -> p)", Justification::Axiom(None)),
            step(
                "(p -> (q -> p)) -> (r -> (p -> (q -> p)))",
                Justification::Axiom(None),
            ),
            step("r -> (p -> (q -> p))", Justification::ModusPonens(1, 2)),
        ];
        assert_eq!(check_proof(&ok), Verdict::Accepted);
        let mut swapped = ok.clone();
        swapped[2].justification = Justification::ModusPonens(2, 1);
        assert!(!check_proof(&swapped).is_accepted());
    }

    #[test]
    fn named_schema_is_enforced() {
        let proof = [step(
            "p -> (q -> p)",
            Justification::Axiom(Some(AxiomSchema::A9)),
        )];
        assert!(!check_proof(&proof).is_accepted());
    }

    #[test]
    fn empty_proof_is_accepted() {
        assert_eq!(check_proof(&[]), Verdict::Accepted);
    }

    #[test]
    fn proof_file_round_trip() {
        let text = "1. p -> (q -> p) ; axiom\n\n# comment\n2. G (p -> q -> p) ; nec-g 1\n3. ~(q -> p) -> ~p ; contra 1\n";
        let steps = parse_proof(text).unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(parse_proof(&format_proof(&steps)).unwrap(), steps);
    }

    #[test]
    fn proof_file_errors_have_line_numbers() {
        let bad = "1. p -> (q -> p) ; axiom\n2. p -> ; axiom\n";
        assert!(matches!(
            parse_proof(bad),
            Err(Error::Syntax { line: 2, .. })
        ));
        let bad = "1. p ; mp 1\n";
        assert!(matches!(
            parse_proof(bad),
            Err(Error::Syntax { line: 1, .. })
        ));
        let bad = "1. p ; axiom\n3. p ; axiom\n";
        assert!(matches!(
            parse_proof(bad),
            Err(Error::Syntax { line: 2, .. })
        ));
        let bad = "1. p axiom\n";
        assert!(matches!(
            parse_proof(bad),
            Err(Error::Syntax { line: 1, .. })
        ));
    }
}
