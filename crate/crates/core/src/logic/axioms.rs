//! Axiom schemas of the TMS calculus.
//!
//! The base propositional part (A1 to A10) is this crate's choice of
//! axiomatization for the symmetric modal calculus: the positive
//! Hilbert-Bernays axioms plus double-negation introduction and elimination.
//! The tense part (M1, M2) is fixed by the calculus itself.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::formula::Formula;
use super::parser::parse;
use crate::error::{Error, Result};

/// Metavariable name to formula.
pub type Substitution = BTreeMap<Arc<str>, Formula>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomSchema {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    M1a,
    M1b,
    M2a,
    M2b,
}

impl AxiomSchema {
    /// All schemas in matching order.
    pub const ALL: [AxiomSchema; 14] = [
        AxiomSchema::A1,
        AxiomSchema::A2,
        AxiomSchema::A3,
        AxiomSchema::A4,
        AxiomSchema::A5,
        AxiomSchema::A6,
        AxiomSchema::A7,
        AxiomSchema::A8,
        AxiomSchema::A9,
        AxiomSchema::A10,
        AxiomSchema::M1a,
        AxiomSchema::M1b,
        AxiomSchema::M2a,
        AxiomSchema::M2b,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AxiomSchema::A1 => "A1",
            AxiomSchema::A2 => "A2",
            AxiomSchema::A3 => "A3",
            AxiomSchema::A4 => "A4",
            AxiomSchema::A5 => "A5",
            AxiomSchema::A6 => "A6",
            AxiomSchema::A7 => "A7",
            AxiomSchema::A8 => "A8",
            AxiomSchema::A9 => "A9",
            AxiomSchema::A10 => "A10",
            AxiomSchema::M1a => "M1a",
            AxiomSchema::M1b => "M1b",
            AxiomSchema::M2a => "M2a",
            AxiomSchema::M2b => "M2b",
        }
    }

    pub fn from_name(name: &str) -> Option<AxiomSchema> {
        AxiomSchema::ALL
            .into_iter()
            .find(|s| s.name().eq_ignore_ascii_case(name))
    }

    /// Source text over the metavariables `α`, `β`, `γ`.
    pub fn source(&self) -> &'static str {
        match self {
            AxiomSchema::A1 => "α -> (β -> α)",
            AxiomSchema::A2 => "(α -> (β -> γ)) -> ((α -> β) -> (α -> γ))",
            AxiomSchema::A3 => "α & β -> α",
            AxiomSchema::A4 => "α & β -> β",
            AxiomSchema::A5 => "α -> (β -> α & β)",
            AxiomSchema::A6 => "α -> α | β",
            AxiomSchema::A7 => "β -> α | β",
            AxiomSchema::A8 => "(α -> γ) -> ((β -> γ) -> (α | β -> γ))",
            AxiomSchema::A9 => "α -> ~~α",
            AxiomSchema::A10 => "~~α -> α",
            AxiomSchema::M1a => "G(α -> β) -> (G α -> G β)",
            AxiomSchema::M1b => "H(α -> β) -> (H α -> H β)",
            AxiomSchema::M2a => "α -> G P α",
            AxiomSchema::M2b => "α -> H F α",
        }
    }

    /// The schema as a formula whose variables are metavariables.
    pub fn schema(&self) -> &'static Formula {
        static SCHEMAS: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = SCHEMAS.get_or_init(|| {
            AxiomSchema::ALL
                .iter()
                .map(|s| parse(s.source()).expect("schema sources parse"))
                .collect()
        });
        &all[*self as usize]
    }

    pub fn metavariables(&self) -> Vec<Arc<str>> {
        self.schema().variables().into_iter().collect()
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Uniformly replaces every variable of `schema` by its binding.
pub fn instantiate(schema: &Formula, subst: &Substitution) -> Result<Formula> {
    Ok(match schema {
        Formula::Var(v) => subst
            .get(v)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("no binding for metavariable `{v}`")))?,
        Formula::Neg(a) => Formula::neg(instantiate(a, subst)?),
        Formula::G(a) => Formula::g(instantiate(a, subst)?),
        Formula::H(a) => Formula::h(instantiate(a, subst)?),
        Formula::Or(a, b) => Formula::or(instantiate(a, subst)?, instantiate(b, subst)?),
        Formula::And(a, b) => Formula::and(instantiate(a, subst)?, instantiate(b, subst)?),
        Formula::Imp(a, b) => Formula::imp(instantiate(a, subst)?, instantiate(b, subst)?),
    })
}

fn unify(schema: &Formula, f: &Formula, subst: &mut Substitution) -> bool {
    match (schema, f) {
        (Formula::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == f,
            None => {
                subst.insert(v.clone(), f.clone());
                true
            }
        },
        (Formula::Neg(a), Formula::Neg(b))
        | (Formula::G(a), Formula::G(b))
        | (Formula::H(a), Formula::H(b)) => unify(a, b, subst),
        (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            unify(a1, b1, subst) && unify(a2, b2, subst)
        }
        _ => false,
    }
}

/// Matches `f` against one schema.
pub fn match_schema(schema: AxiomSchema, f: &Formula) -> Option<Substitution> {
    let mut subst = Substitution::new();
    unify(schema.schema(), f, &mut subst).then_some(subst)
}

/// The first schema (in [`AxiomSchema::ALL`] order) that `f` instantiates.
pub fn match_axiom(f: &Formula) -> Option<(AxiomSchema, Substitution)> {
    AxiomSchema::ALL
        .into_iter()
        .find_map(|s| match_schema(s, f).map(|sub| (s, sub)))
}
