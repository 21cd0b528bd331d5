//! Kripke semantics over TSH-frames, and algebraic evaluation.
//!
//! [`satisfies`] follows the satisfaction clauses state by state.
//! [`extend_meaning`] computes the truth set of every subformula at once on
//! bitmasks, which is what the validity checks and the countermodel search
//! run on. The two are kept independent so each can check the other.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::algebra::FiniteTshAlgebra;
use crate::error::{Error, Result};
use crate::frame::{enumerate_frames, TshFrame};
use crate::logic::Formula;
use crate::order::{is_upward_closed, upsets, Subset};

/// A frame together with a hereditary meaning for finitely many variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TshModel {
    frame: TshFrame,
    meaning: BTreeMap<String, Subset>,
}

impl TshModel {
    /// Fails unless every meaning is an up-set of the frame order.
    pub fn new(frame: TshFrame, meaning: BTreeMap<String, Subset>) -> Result<Self> {
        for (var, set) in &meaning {
            if set.size() != frame.size() {
                return Err(Error::invalid(format!(
                    "meaning of `{var}` lives on {} states, frame has {}",
                    set.size(),
                    frame.size()
                )));
            }
            if !is_upward_closed(frame.leq(), set) {
                return Err(Error::invalid(format!(
                    "meaning of `{var}` = {set} is not upward closed"
                )));
            }
        }
        Ok(TshModel { frame, meaning })
    }

    pub fn frame(&self) -> &TshFrame {
        &self.frame
    }

    pub fn meaning(&self) -> &BTreeMap<String, Subset> {
        &self.meaning
    }

    fn lookup(&self, var: &str) -> Result<&Subset> {
        self.meaning
            .get(var)
            .ok_or_else(|| Error::UnboundVariable(var.to_string()))
    }
}

/// `M, x ⊨ f`, evaluated clause by clause.
pub fn satisfies(model: &TshModel, x: usize, f: &Formula) -> Result<bool> {
    let k = model.frame();
    if x >= k.size() {
        return Err(Error::invalid(format!(
            "state {x} outside a frame of {} states",
            k.size()
        )));
    }
    // surface unbound variables even where evaluation would short-circuit
    for v in f.variables() {
        model.lookup(&v)?;
    }
    fn sat(model: &TshModel, x: usize, f: &Formula) -> bool {
        let k = model.frame();
        let all = |succ: Subset, a: &Formula| succ.members().all(|y| sat(model, y, a));
        match f {
            Formula::Var(p) => model.meaning[&**p].contains(x),
            Formula::Or(a, b) => sat(model, x, a) || sat(model, x, b),
            Formula::And(a, b) => sat(model, x, a) && sat(model, x, b),
            Formula::Neg(a) => !sat(model, k.g(x), a),
            Formula::Imp(a, b) => k
                .leq()
                .successors(x)
                .members()
                .all(|y| !sat(model, y, a) || sat(model, y, b)),
            Formula::G(a) => all(k.r().successors(x), a),
            Formula::H(a) => all(k.q().successors(x), a),
        }
    }
    Ok(sat(model, x, f))
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Var(usize),
    Neg(usize),
    G(usize),
    H(usize),
    Or(usize, usize),
    And(usize, usize),
    Imp(usize, usize),
}

/// A formula flattened into a DAG of distinct subformulas, children first.
#[derive(Debug, Clone)]
struct Compiled {
    nodes: Vec<Node>,
    vars: Vec<String>,
}

impl Compiled {
    fn new(f: &Formula) -> Compiled {
        let vars: Vec<String> = f.variables().iter().map(|v| v.to_string()).collect();
        let mut c = Compiled {
            nodes: Vec::new(),
            vars,
        };
        let mut seen = HashMap::new();
        c.add(f, &mut seen);
        c
    }

    fn add(&mut self, f: &Formula, seen: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = seen.get(f) {
            return i;
        }
        let node = match f {
            Formula::Var(v) => Node::Var(
                self.vars
                    .iter()
                    .position(|x| **x == **v)
                    .expect("collected"),
            ),
            Formula::Neg(a) => Node::Neg(self.add(a, seen)),
            Formula::G(a) => Node::G(self.add(a, seen)),
            Formula::H(a) => Node::H(self.add(a, seen)),
            Formula::Or(a, b) => Node::Or(self.add(a, seen), self.add(b, seen)),
            Formula::And(a, b) => Node::And(self.add(a, seen), self.add(b, seen)),
            Formula::Imp(a, b) => Node::Imp(self.add(a, seen), self.add(b, seen)),
        };
        self.nodes.push(node);
        seen.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Truth set of the root, given one bitmask per variable.
    fn eval(&self, k: &FrameTables, assignment: &[u64], buf: &mut Vec<u64>) -> u64 {
        buf.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => assignment[i],
                Node::Neg(a) => {
                    let s = buf[a];
                    (0..k.n)
                        .filter(|&x| s >> k.g[x] & 1 == 0)
                        .fold(0, |acc, x| acc | 1 << x)
                }
                Node::G(a) => k.boxed(&k.r, buf[a]),
                Node::H(a) => k.boxed(&k.q, buf[a]),
                Node::Or(a, b) => buf[a] | buf[b],
                Node::And(a, b) => buf[a] & buf[b],
                Node::Imp(a, b) => k.boxed(&k.leq, !buf[a] | buf[b]),
            };
            buf.push(v);
        }
        *buf.last().expect("formula has a root")
    }
}

struct FrameTables {
    n: usize,
    full: u64,
    leq: Vec<u64>,
    r: Vec<u64>,
    q: Vec<u64>,
    g: Vec<usize>,
}

impl FrameTables {
    fn new(k: &TshFrame) -> Self {
        FrameTables {
            n: k.size(),
            full: Subset::full(k.size()).expect("frame fits").bits(),
            leq: k.leq().rows().to_vec(),
            r: k.r().rows().to_vec(),
            q: k.q().rows().to_vec(),
            g: k.g_map().to_vec(),
        }
    }

    fn boxed(&self, rows: &[u64], a: u64) -> u64 {
        let outside = !a;
        rows.iter()
            .enumerate()
            .filter(|(_, &row)| row & outside == 0)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }
}

/// The truth set `{x : M, x ⊨ f}`.
pub fn extend_meaning(model: &TshModel, f: &Formula) -> Result<Subset> {
    let c = Compiled::new(f);
    let assignment = c
        .vars
        .iter()
        .map(|v| model.lookup(v).map(|s| s.bits()))
        .collect::<Result<Vec<_>>>()?;
    let k = FrameTables::new(model.frame());
    let bits = c.eval(&k, &assignment, &mut Vec::new());
    Ok(Subset::from_bits(k.n, bits & k.full).expect("within frame"))
}

/// True iff `f` holds at every state of the model.
pub fn model_valid(model: &TshModel, f: &Formula) -> Result<bool> {
    Ok(extend_meaning(model, f)?.is_full())
}

/// Visits assignments of up-sets to `vars` variables in lexicographic order
/// (first variable most significant, up-sets by ascending bitmask) until
/// `visit` returns `false`.
fn for_each_assignment(choices: &[u64], vars: usize, mut visit: impl FnMut(&[u64]) -> bool) {
    let mut idx = vec![0usize; vars];
    let mut assignment = vec![choices[0]; vars];
    loop {
        if !visit(&assignment) {
            return;
        }
        let mut pos = vars;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                assignment[pos] = choices[idx[pos]];
                break;
            }
            idx[pos] = 0;
            assignment[pos] = choices[0];
        }
    }
}

/// True iff `f` holds in every model on `k`. Assignments range over the
/// up-sets of `k` for the variables of `f` only. Assumes `k` is a TSH-frame.
pub fn frame_valid(k: &TshFrame, f: &Formula) -> bool {
    let c = Compiled::new(f);
    let tables = FrameTables::new(k);
    let choices: Vec<u64> = upsets(k.leq()).iter().map(Subset::bits).collect();
    let mut buf = Vec::new();
    let mut valid = true;
    for_each_assignment(&choices, c.vars.len(), |a| {
        valid = c.eval(&tables, a, &mut buf) & tables.full == tables.full;
        valid
    });
    valid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: TshModel,
    /// A state where the formula fails.
    pub state: usize,
}

/// The first refutation of `f`: frames by size and canonical order,
/// assignments lexicographically, then the lowest failing state.
pub fn find_countermodel(f: &Formula, max_size: usize) -> Option<Countermodel> {
    let c = Compiled::new(f);
    let mut buf = Vec::new();
    for k in enumerate_frames(max_size, true) {
        let tables = FrameTables::new(&k);
        let choices: Vec<u64> = upsets(k.leq()).iter().map(Subset::bits).collect();
        let mut found = None;
        for_each_assignment(&choices, c.vars.len(), |a| {
            let truth = c.eval(&tables, a, &mut buf) & tables.full;
            if truth != tables.full {
                found = Some((a.to_vec(), (!truth & tables.full).trailing_zeros() as usize));
                return false;
            }
            true
        });
        if let Some((assignment, state)) = found {
            let meaning = c
                .vars
                .iter()
                .zip(assignment)
                .map(|(v, bits)| {
                    (
                        v.clone(),
                        Subset::from_bits(k.size(), bits).expect("up-set"),
                    )
                })
                .collect();
            let model = TshModel::new(k, meaning).expect("assignments are up-sets");
            return Some(Countermodel { model, state });
        }
    }
    None
}

/// Homomorphic evaluation in an algebra.
pub fn algebra_eval(
    w: &FiniteTshAlgebra,
    valuation: &BTreeMap<String, usize>,
    f: &Formula,
) -> Result<usize> {
    if w.lattice().is_none() {
        return Err(Error::invalid("evaluation needs a lattice"));
    }
    fn go(w: &FiniteTshAlgebra, val: &BTreeMap<String, usize>, f: &Formula) -> Result<usize> {
        Ok(match f {
            Formula::Var(v) => {
                let x = *val
                    .get(&**v)
                    .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                if x >= w.size() {
                    return Err(Error::invalid(format!(
                        "value {x} of `{v}` outside the algebra"
                    )));
                }
                x
            }
            Formula::Neg(a) => w.neg(go(w, val, a)?),
            Formula::G(a) => w.g(go(w, val, a)?),
            Formula::H(a) => w.h(go(w, val, a)?),
            Formula::Or(a, b) => w.join(go(w, val, a)?, go(w, val, b)?),
            Formula::And(a, b) => w.meet(go(w, val, a)?, go(w, val, b)?),
            Formula::Imp(a, b) => w.imp(go(w, val, a)?, go(w, val, b)?),
        })
    }
    go(w, valuation, f)
}

/// The first valuation (variables sorted, first most significant) under
/// which `f` does not evaluate to the top element, if any.
pub fn algebra_refutation(w: &FiniteTshAlgebra, f: &Formula) -> Option<BTreeMap<String, usize>> {
    let vars: Vec<String> = f.variables().iter().map(|v| v.to_string()).collect();
    let choices: Vec<u64> = (0..w.size() as u64).collect();
    let mut found = None;
    for_each_assignment(&choices, vars.len(), |a| {
        let val: BTreeMap<String, usize> = vars
            .iter()
            .cloned()
            .zip(a.iter().map(|&x| x as usize))
            .collect();
        if algebra_eval(w, &val, f).expect("all variables bound") != w.top() {
            found = Some(val);
            return false;
        }
        true
    });
    found
}

/// True iff `f` evaluates to the top element under every valuation.
pub fn algebra_valid(w: &FiniteTshAlgebra, f: &Formula) -> bool {
    algebra_refutation(w, f).is_none()
}
