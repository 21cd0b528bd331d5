//! The TMS language: formulas, their concrete syntax, the axiom schemas and
//! a checker for Hilbert-style derivations.

mod axioms;
mod formula;
mod parser;
mod proof;

pub use axioms::{instantiate, match_axiom, match_schema, AxiomSchema, Substitution};
pub use formula::{random_formula, Formula};
pub use parser::parse;
pub use proof::{
    check_proof, format_proof, parse_proof, Justification, ProofStep, Rejection, Verdict,
};
