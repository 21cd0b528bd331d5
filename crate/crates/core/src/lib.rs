//! Finite tense symmetric Heyting algebras, TSH-frames and the discrete
//! duality between them, together with the TMS propositional calculus.
//!
//! The modules build on each other in this order:
//!
//! - [`order`]: bit-packed relations and subsets, the box operator, up-sets;
//! - [`algebra`]: finite TSH-algebras, axiom validation, prime filters;
//! - [`frame`]: TSH-frames, validation, enumeration up to isomorphism;
//! - [`duality`]: canonical frames, complex algebras, the maps `h` and `k`;
//! - [`logic`]: formulas, parsing, axiom schemas, proof checking;
//! - [`semantics`]: satisfaction, validity and countermodel search;
//! - [`io`]: the text formats for algebras, frames and models.

pub mod algebra;
pub mod duality;
mod error;
pub mod fixtures;
pub mod frame;
pub mod io;
pub mod logic;
pub mod order;
pub mod report;
pub mod semantics;

pub use error::{Error, Result};
