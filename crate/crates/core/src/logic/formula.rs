use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

/// A TMS formula. `F`, `P` and `<->` are abbreviations and never appear as
/// nodes; the parser expands them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Neg(Arc<Formula>),
    G(Arc<Formula>),
    H(Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Arc::new(a))
    }

    pub fn g(a: Formula) -> Formula {
        Formula::G(Arc::new(a))
    }

    pub fn h(a: Formula) -> Formula {
        Formula::H(Arc::new(a))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// `F a = ~G~a`.
    pub fn future(a: Formula) -> Formula {
        Formula::neg(Formula::g(Formula::neg(a)))
    }

    /// `P a = ~H~a`.
    pub fn past(a: Formula) -> Formula {
        Formula::neg(Formula::h(Formula::neg(a)))
    }

    /// `a <-> b = (a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Neg(a) | Formula::G(a) | Formula::H(a) => a.collect_vars(out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(a) | Formula::G(a) | Formula::H(a) => 1 + a.depth(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Neg(a) | Formula::G(a) | Formula::H(a) => 1 + a.size(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Var(_) | Formula::Neg(_) | Formula::G(_) | Formula::H(_) => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Imp(..) => 1,
        }
    }
}

/// A random formula of depth at most `depth` over `vars`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, vars);
    match rng.gen_range(0..6) {
        0 => Formula::neg(sub(rng)),
        1 => Formula::g(sub(rng)),
        2 => Formula::h(sub(rng)),
        3 => Formula::or(sub(rng), sub(rng)),
        4 => Formula::and(sub(rng), sub(rng)),
        _ => Formula::imp(sub(rng), sub(rng)),
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, a: &Formula, min_prec: u8) -> fmt::Result {
    if a.precedence() < min_prec {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

/// Canonical concrete syntax with the fewest parentheses the grammar allows.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Neg(a) => {
                write!(f, "~")?;
                write_operand(f, a, 4)
            }
            Formula::G(a) | Formula::H(a) => {
                write!(
                    f,
                    "{} ",
                    if matches!(self, Formula::G(_)) {
                        "G"
                    } else {
                        "H"
                    }
                )?;
                write_operand(f, a, 4)
            }
            // `&` and `|` chains associate to the left
            Formula::And(a, b) => {
                write_operand(f, a, 3)?;
                write!(f, " & ")?;
                write_operand(f, b, 4)
            }
            Formula::Or(a, b) => {
                write_operand(f, a, 2)?;
                write!(f, " | ")?;
                write_operand(f, b, 3)
            }
            // `->` associates to the right
            Formula::Imp(a, b) => {
                write_operand(f, a, 2)?;
                write!(f, " -> ")?;
                write_operand(f, b, 1)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "Var({v})"),
            Formula::Neg(a) => write!(f, "Neg({a:?})"),
            Formula::G(a) => write!(f, "G({a:?})"),
            Formula::H(a) => write!(f, "H({a:?})"),
            Formula::Or(a, b) => write!(f, "Or({a:?}, {b:?})"),
            Formula::And(a, b) => write!(f, "And({a:?}, {b:?})"),
            Formula::Imp(a, b) => write!(f, "Imp({a:?}, {b:?})"),
        }
    }
}
