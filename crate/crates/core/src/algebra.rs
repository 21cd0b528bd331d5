//! Finite tense symmetric Heyting algebras.
//!
//! An algebra is stored as operation tables over the carrier `0..size`: the
//! lattice order, the Heyting implication, the De Morgan negation and the two
//! tense operators. Meet and join are never supplied; they are recovered from
//! the order when the algebra is built.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{is_upward_closed, upsets, Relation, Subset};
use crate::report::{LawCode, Report};

/// Meet and join tables of a finite lattice, row-major `size * size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    size: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl Lattice {
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }
}

/// Why an order could not be completed to a Heyting algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFailure {
    NotPartialOrder,
    NoMeet(usize, usize),
    NoJoin(usize, usize),
    NoResidual(usize, usize),
}

impl fmt::Display for LatticeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeFailure::NotPartialOrder => write!(f, "order is not a partial order"),
            LatticeFailure::NoMeet(x, y) => write!(f, "no greatest lower bound for ({x},{y})"),
            LatticeFailure::NoJoin(x, y) => write!(f, "no least upper bound for ({x},{y})"),
            LatticeFailure::NoResidual(x, y) => {
                write!(f, "no largest z with {x} meet z below {y}")
            }
        }
    }
}

/// Tables recovered from an order alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedOps {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
}

/// Greatest element of `candidates` under `leq`, if any.
fn greatest(leq: &Relation, candidates: u64) -> Option<usize> {
    (0..leq.size())
        .filter(|&z| candidates >> z & 1 == 1)
        .find(|&z| leq.predecessors(z).bits() & candidates == candidates)
}

fn least(leq: &Relation, candidates: u64) -> Option<usize> {
    (0..leq.size())
        .filter(|&z| candidates >> z & 1 == 1)
        .find(|&z| leq.row_bits(z) & candidates == candidates)
}

fn lattice_of(leq: &Relation) -> std::result::Result<Lattice, LatticeFailure> {
    if !(leq.is_reflexive() && leq.is_transitive() && leq.is_antisymmetric()) {
        return Err(LatticeFailure::NotPartialOrder);
    }
    let n = leq.size();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let lower = leq.predecessors(x).bits() & leq.predecessors(y).bits();
            meet[x * n + y] = greatest(leq, lower).ok_or(LatticeFailure::NoMeet(x, y))?;
            let upper = leq.row_bits(x) & leq.row_bits(y);
            join[x * n + y] = least(leq, upper).ok_or(LatticeFailure::NoJoin(x, y))?;
        }
    }
    Ok(Lattice {
        size: n,
        meet,
        join,
    })
}

/// Meet and join as greatest lower / least upper bounds, and implication as
/// the relative pseudocomplement `max { z : x meet z <= y }`.
pub fn derive_meet_join_imp(leq: &Relation) -> std::result::Result<DerivedOps, LatticeFailure> {
    let lattice = lattice_of(leq)?;
    let n = leq.size();
    let imp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let below: u64 = (0..n)
                        .filter(|&z| leq.contains(lattice.meet(x, z), y))
                        .fold(0, |acc, z| acc | 1 << z);
                    greatest(leq, below).ok_or(LatticeFailure::NoResidual(x, y))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
    };
    Ok(DerivedOps {
        meet: table(&|x, y| lattice.meet(x, y)),
        join: table(&|x, y| lattice.join(x, y)),
        imp,
    })
}

/// A finite algebra with the signature of a TSH-algebra. Construction only
/// checks table shapes; [`validate_algebra`] decides whether the axioms hold.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTshAlgebra {
    leq: Relation,
    neg: Vec<usize>,
    imp: Vec<usize>,
    g_op: Vec<usize>,
    h_op: Vec<usize>,
    bot: usize,
    top: usize,
    lattice: Option<Lattice>,
}

fn check_unary(name: &str, table: &[usize], n: usize) -> Result<()> {
    if table.len() != n {
        return Err(Error::invalid(format!(
            "{name} table has {} entries, expected {n}",
            table.len()
        )));
    }
    if let Some((i, v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(Error::invalid(format!("{name}[{i}] = {v} is out of range")));
    }
    Ok(())
}

impl FiniteTshAlgebra {
    /// Builds an algebra from explicit tables. `imp` is row-major: `imp[x][y]`
    /// is `x -> y`. Fails on shape or range errors and when the order has no
    /// least or greatest element.
    pub fn new(
        leq: Relation,
        neg: Vec<usize>,
        imp: Vec<Vec<usize>>,
        g_op: Vec<usize>,
        h_op: Vec<usize>,
    ) -> Result<Self> {
        let n = leq.size();
        if n == 0 {
            return Err(Error::invalid("algebra carrier is empty"));
        }
        check_unary("neg", &neg, n)?;
        check_unary("g", &g_op, n)?;
        check_unary("h", &h_op, n)?;
        if imp.len() != n {
            return Err(Error::invalid(format!(
                "imp has {} rows, expected {n}",
                imp.len()
            )));
        }
        for (x, row) in imp.iter().enumerate() {
            check_unary(&format!("imp row {x}"), row, n)?;
        }
        let all = Subset::full(n)?.bits();
        let bot = (0..n)
            .find(|&x| leq.row_bits(x) == all)
            .ok_or_else(|| Error::invalid("order has no least element"))?;
        let top = (0..n)
            .find(|&x| leq.predecessors(x).bits() == all)
            .ok_or_else(|| Error::invalid("order has no greatest element"))?;
        let lattice = lattice_of(&leq).ok();
        Ok(FiniteTshAlgebra {
            leq,
            neg,
            imp: imp.into_iter().flatten().collect(),
            g_op,
            h_op,
            bot,
            top,
            lattice,
        })
    }

    /// Builds an algebra whose implication is derived from the order.
    pub fn from_order(
        leq: Relation,
        neg: Vec<usize>,
        g_op: Vec<usize>,
        h_op: Vec<usize>,
    ) -> Result<Self> {
        let ops = derive_meet_join_imp(&leq).map_err(|e| Error::invalid(e.to_string()))?;
        Self::new(leq, neg, ops.imp, g_op, h_op)
    }

    /// Same lattice and negation with replaced tense operators.
    pub fn with_tense(&self, g_op: Vec<usize>, h_op: Vec<usize>) -> Result<Self> {
        Self::new(
            self.leq.clone(),
            self.neg.clone(),
            self.imp_table(),
            g_op,
            h_op,
        )
    }

    /// Same lattice and tense operators with a replaced negation.
    pub fn with_neg(&self, neg: Vec<usize>) -> Result<Self> {
        Self::new(
            self.leq.clone(),
            neg,
            self.imp_table(),
            self.g_op.clone(),
            self.h_op.clone(),
        )
    }

    pub fn size(&self) -> usize {
        self.leq.size()
    }

    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq.contains(x, y)
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp[x * self.size() + y]
    }

    pub fn g(&self, x: usize) -> usize {
        self.g_op[x]
    }

    pub fn h(&self, x: usize) -> usize {
        self.h_op[x]
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn g_table(&self) -> &[usize] {
        &self.g_op
    }

    pub fn h_table(&self) -> &[usize] {
        &self.h_op
    }

    pub fn imp_table(&self) -> Vec<Vec<usize>> {
        self.imp.chunks(self.size()).map(|r| r.to_vec()).collect()
    }

    /// Meet and join, present iff the order is a lattice.
    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    /// # Panics
    /// If the order is not a lattice.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.lattice
            .as_ref()
            .expect("order is not a lattice")
            .meet(x, y)
    }

    /// # Panics
    /// If the order is not a lattice.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lattice
            .as_ref()
            .expect("order is not a lattice")
            .join(x, y)
    }

    /// True iff every element is complemented by its negation.
    pub fn is_boolean(&self) -> bool {
        self.lattice.is_some()
            && (0..self.size()).all(|x| {
                self.join(x, self.neg(x)) == self.top && self.meet(x, self.neg(x)) == self.bot
            })
    }

    /// Componentwise product; element `(a, b)` has index `a * other.size() + b`.
    pub fn product(&self, other: &FiniteTshAlgebra) -> Result<Self> {
        let m = other.size();
        let n = self.size() * m;
        let split = |i: usize| (i / m, i % m);
        let join = |a: usize, b: usize| a * m + b;
        let leq = Relation::from_fn(n, |i, j| {
            let ((a1, b1), (a2, b2)) = (split(i), split(j));
            self.le(a1, a2) && other.le(b1, b2)
        })?;
        let unary = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..n)
                .map(|i| {
                    let (a, b) = split(i);
                    f(a, b)
                })
                .collect()
        };
        let neg = unary(&|a, b| join(self.neg(a), other.neg(b)));
        let g = unary(&|a, b| join(self.g(a), other.g(b)));
        let h = unary(&|a, b| join(self.h(a), other.h(b)));
        let imp = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((a1, b1), (a2, b2)) = (split(i), split(j));
                        join(self.imp(a1, a2), other.imp(b1, b2))
                    })
                    .collect()
            })
            .collect();
        Self::new(leq, neg, imp, g, h)
    }
}

impl fmt::Debug for FiniteTshAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTshAlgebra")
            .field("leq", &self.leq)
            .field("neg", &self.neg)
            .field("imp", &self.imp_table())
            .field("g", &self.g_op)
            .field("h", &self.h_op)
            .finish()
    }
}

/// Axiom clauses checked by [`validate_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraLaw {
    Reflexive,
    Antisymmetric,
    Transitive,
    MeetExists,
    JoinExists,
    Distributive,
    Residuation,
    NegInvolution,
    NegAntitone,
    NegBottom,
    DeMorgan,
    T1G,
    T1H,
    T2G,
    T2H,
    T3G,
    T3H,
}

impl LawCode for AlgebraLaw {
    fn code(&self) -> &'static str {
        match self {
            AlgebraLaw::Reflexive => "order-reflexive",
            AlgebraLaw::Antisymmetric => "order-antisymmetric",
            AlgebraLaw::Transitive => "order-transitive",
            AlgebraLaw::MeetExists => "meet-exists",
            AlgebraLaw::JoinExists => "join-exists",
            AlgebraLaw::Distributive => "distributive",
            AlgebraLaw::Residuation => "residuation",
            AlgebraLaw::NegInvolution => "neg-involution",
            AlgebraLaw::NegAntitone => "neg-antitone",
            AlgebraLaw::NegBottom => "neg-bottom",
            AlgebraLaw::DeMorgan => "de-morgan",
            AlgebraLaw::T1G => "T1-G",
            AlgebraLaw::T1H => "T1-H",
            AlgebraLaw::T2G => "T2-G",
            AlgebraLaw::T2H => "T2-H",
            AlgebraLaw::T3G => "T3-G",
            AlgebraLaw::T3H => "T3-H",
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            AlgebraLaw::Reflexive => "x <= x",
            AlgebraLaw::Antisymmetric => "x <= y and y <= x imply x = y",
            AlgebraLaw::Transitive => "x <= y and y <= z imply x <= z",
            AlgebraLaw::MeetExists => "every pair has a greatest lower bound",
            AlgebraLaw::JoinExists => "every pair has a least upper bound",
            AlgebraLaw::Distributive => "x & (y | z) = (x & y) | (x & z)",
            AlgebraLaw::Residuation => "x & z <= y iff z <= x -> y",
            AlgebraLaw::NegInvolution => "~~x = x",
            AlgebraLaw::NegAntitone => "x <= y implies ~y <= ~x",
            AlgebraLaw::NegBottom => "~0 = 1",
            AlgebraLaw::DeMorgan => "~(x & y) = ~x | ~y",
            AlgebraLaw::T1G => "G(1) = 1",
            AlgebraLaw::T1H => "H(1) = 1",
            AlgebraLaw::T2G => "G(x & y) = G(x) & G(y)",
            AlgebraLaw::T2H => "H(x & y) = H(x) & H(y)",
            AlgebraLaw::T3G => "x <= G(~H(~x))",
            AlgebraLaw::T3H => "x <= H(~G(~x))",
        }
    }
}

/// Checks every TSH-algebra axiom. When the order is not a lattice only the
/// order clauses are reported, since the remaining laws are not defined.
pub fn validate_algebra(w: &FiniteTshAlgebra) -> Report<AlgebraLaw> {
    let mut report = Report::new();
    let n = w.size();
    let leq = w.leq();

    for x in 0..n {
        if !leq.contains(x, x) {
            report.push(AlgebraLaw::Reflexive, vec![x]);
        }
    }
    for (x, y) in leq.pairs() {
        if x != y && leq.contains(y, x) {
            report.push(AlgebraLaw::Antisymmetric, vec![x, y]);
        }
        for z in leq.successors(y).members() {
            if !leq.contains(x, z) {
                report.push(AlgebraLaw::Transitive, vec![x, y, z]);
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    match lattice_of(leq) {
        Ok(_) => {}
        Err(LatticeFailure::NoMeet(x, y)) => {
            report.push(AlgebraLaw::MeetExists, vec![x, y]);
            return report;
        }
        Err(LatticeFailure::NoJoin(x, y)) => {
            report.push(AlgebraLaw::JoinExists, vec![x, y]);
            return report;
        }
        Err(_) => unreachable!("lattice_of only fails on bounds once the order is partial"),
    }

    let (meet, join) = (|x, y| w.meet(x, y), |x, y| w.join(x, y));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    report.push(AlgebraLaw::Distributive, vec![x, y, z]);
                }
                if w.le(meet(x, z), y) != w.le(z, w.imp(x, y)) {
                    report.push(AlgebraLaw::Residuation, vec![x, y, z]);
                }
            }
        }
    }

    for x in 0..n {
        if w.neg(w.neg(x)) != x {
            report.push(AlgebraLaw::NegInvolution, vec![x]);
        }
    }
    for (x, y) in leq.pairs() {
        if !w.le(w.neg(y), w.neg(x)) {
            report.push(AlgebraLaw::NegAntitone, vec![x, y]);
        }
    }
    if w.neg(w.bot()) != w.top() {
        report.push(AlgebraLaw::NegBottom, vec![w.bot()]);
    }
    for x in 0..n {
        for y in 0..n {
            if w.neg(meet(x, y)) != join(w.neg(x), w.neg(y)) {
                report.push(AlgebraLaw::DeMorgan, vec![x, y]);
            }
        }
    }

    if w.g(w.top()) != w.top() {
        report.push(AlgebraLaw::T1G, vec![w.top()]);
    }
    if w.h(w.top()) != w.top() {
        report.push(AlgebraLaw::T1H, vec![w.top()]);
    }
    for x in 0..n {
        for y in 0..n {
            if w.g(meet(x, y)) != meet(w.g(x), w.g(y)) {
                report.push(AlgebraLaw::T2G, vec![x, y]);
            }
            if w.h(meet(x, y)) != meet(w.h(x), w.h(y)) {
                report.push(AlgebraLaw::T2H, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        if !w.le(x, w.g(w.neg(w.h(w.neg(x))))) {
            report.push(AlgebraLaw::T3G, vec![x]);
        }
        if !w.le(x, w.h(w.neg(w.g(w.neg(x))))) {
            report.push(AlgebraLaw::T3H, vec![x]);
        }
    }
    report
}

/// An upward-closed, meet-closed subset containing the top element.
/// Properness is not required.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    members: Subset,
}

impl Filter {
    /// Wraps `members` after checking the filter conditions in `w`.
    pub fn new(w: &FiniteTshAlgebra, members: Subset) -> Result<Self> {
        if members.size() != w.size() {
            return Err(Error::invalid(
                "filter carrier differs from algebra carrier",
            ));
        }
        if !is_filter(w, &members) {
            return Err(Error::invalid(format!("{members} is not a filter")));
        }
        Ok(Filter { members })
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn algebra_size(&self) -> usize {
        self.members.size()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

pub fn is_filter(w: &FiniteTshAlgebra, s: &Subset) -> bool {
    s.contains(w.top())
        && is_upward_closed(w.leq(), s)
        && s.members()
            .all(|x| s.members().all(|y| s.contains(w.meet(x, y))))
}

fn is_prime(w: &FiniteTshAlgebra, s: &Subset) -> bool {
    let n = w.size();
    !s.contains(w.bot())
        && (0..n)
            .all(|x| (0..n).all(|y| !s.contains(w.join(x, y)) || s.contains(x) || s.contains(y)))
}

/// True iff `s` is a proper filter that contains `x` or `y` whenever it
/// contains `x | y`.
pub fn is_prime_filter(w: &FiniteTshAlgebra, s: &Subset) -> bool {
    w.lattice().is_some() && is_filter(w, s) && is_prime(w, s)
}

/// All prime filters, sorted by member bitmask.
///
/// Filters of a finite lattice are principal, so candidates are the up-sets
/// of single elements; each is checked against the full definition.
pub fn prime_filters(w: &FiniteTshAlgebra) -> Result<Vec<Filter>> {
    if w.lattice().is_none() {
        return Err(Error::invalid("prime filters need a lattice order"));
    }
    let mut out: Vec<Filter> = (0..w.size())
        .map(|a| w.leq().successors(a))
        .filter(|s| is_prime_filter(w, s))
        .map(|members| Filter { members })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Prime filters found by scanning every up-set of the order. Exponential;
/// kept as an independent cross-check of [`prime_filters`].
pub fn prime_filters_by_upsets(w: &FiniteTshAlgebra) -> Result<Vec<Filter>> {
    if w.lattice().is_none() {
        return Err(Error::invalid("prime filters need a lattice order"));
    }
    Ok(upsets(w.leq())
        .into_iter()
        .filter(|s| is_prime_filter(w, s))
        .map(|members| Filter { members })
        .collect())
}

/// `{a : op(a) in f}`, checked to be a filter again.
pub fn preimage_filter(w: &FiniteTshAlgebra, op: &[usize], f: &Filter) -> Result<Filter> {
    if op.len() != w.size() || f.algebra_size() != w.size() {
        return Err(Error::invalid(
            "operator table or filter does not match the algebra",
        ));
    }
    let members = Subset::from_members(w.size(), (0..w.size()).filter(|&a| f.contains(op[a])))?;
    if !is_filter(w, &members) {
        return Err(Error::consistency(format!(
            "preimage {members} of filter {} is not a filter; the operator breaks T1 or T2",
            f.members()
        )));
    }
    Ok(Filter { members })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbeddingLaw {
    Total,
    Injective,
    Bottom,
    Top,
    Meet,
    Join,
    Imp,
    Neg,
    G,
    H,
    NotLattice,
}

impl LawCode for EmbeddingLaw {
    fn code(&self) -> &'static str {
        match self {
            EmbeddingLaw::Total => "map-total",
            EmbeddingLaw::Injective => "injective",
            EmbeddingLaw::Bottom => "preserves-bottom",
            EmbeddingLaw::Top => "preserves-top",
            EmbeddingLaw::Meet => "preserves-meet",
            EmbeddingLaw::Join => "preserves-join",
            EmbeddingLaw::Imp => "preserves-imp",
            EmbeddingLaw::Neg => "preserves-neg",
            EmbeddingLaw::G => "preserves-G",
            EmbeddingLaw::H => "preserves-H",
            EmbeddingLaw::NotLattice => "not-lattice",
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            EmbeddingLaw::Total => "map is defined on every source element and lands in the target",
            EmbeddingLaw::Injective => "distinct elements have distinct images",
            EmbeddingLaw::Bottom => "m(0) = 0",
            EmbeddingLaw::Top => "m(1) = 1",
            EmbeddingLaw::Meet => "m(x & y) = m(x) & m(y)",
            EmbeddingLaw::Join => "m(x | y) = m(x) | m(y)",
            EmbeddingLaw::Imp => "m(x -> y) = m(x) -> m(y)",
            EmbeddingLaw::Neg => "m(~x) = ~m(x)",
            EmbeddingLaw::G => "m(G x) = G m(x)",
            EmbeddingLaw::H => "m(H x) = H m(x)",
            EmbeddingLaw::NotLattice => "source and target orders are lattices",
        }
    }
}

/// Checks that `map` is an injective homomorphism of TSH-algebras.
pub fn check_embedding(
    src: &FiniteTshAlgebra,
    dst: &FiniteTshAlgebra,
    map: &[usize],
) -> Report<EmbeddingLaw> {
    let mut report = Report::new();
    let n = src.size();
    if map.len() != n {
        report.push(EmbeddingLaw::Total, vec![map.len().min(n)]);
        return report;
    }
    if let Some(x) = (0..n).find(|&x| map[x] >= dst.size()) {
        report.push(EmbeddingLaw::Total, vec![x]);
        return report;
    }
    if src.lattice().is_none() || dst.lattice().is_none() {
        report.push(EmbeddingLaw::NotLattice, vec![]);
        return report;
    }
    for x in 0..n {
        for y in x + 1..n {
            if map[x] == map[y] {
                report.push(EmbeddingLaw::Injective, vec![x, y]);
            }
        }
    }
    if map[src.bot()] != dst.bot() {
        report.push(EmbeddingLaw::Bottom, vec![src.bot()]);
    }
    if map[src.top()] != dst.top() {
        report.push(EmbeddingLaw::Top, vec![src.top()]);
    }
    for x in 0..n {
        for y in 0..n {
            if map[src.meet(x, y)] != dst.meet(map[x], map[y]) {
                report.push(EmbeddingLaw::Meet, vec![x, y]);
            }
            if map[src.join(x, y)] != dst.join(map[x], map[y]) {
                report.push(EmbeddingLaw::Join, vec![x, y]);
            }
            if map[src.imp(x, y)] != dst.imp(map[x], map[y]) {
                report.push(EmbeddingLaw::Imp, vec![x, y]);
            }
        }
        if map[src.neg(x)] != dst.neg(map[x]) {
            report.push(EmbeddingLaw::Neg, vec![x]);
        }
        if map[src.g(x)] != dst.g(map[x]) {
            report.push(EmbeddingLaw::G, vec![x]);
        }
        if map[src.h(x)] != dst.h(map[x]) {
            report.push(EmbeddingLaw::H, vec![x]);
        }
    }
    report
}

/// A bijection `a -> b` preserving order and every operation, if one exists.
pub fn find_algebra_isomorphism(a: &FiniteTshAlgebra, b: &FiniteTshAlgebra) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() || a.leq().len() != b.leq().len() {
        return None;
    }
    // order-isomorphisms preserve up-set and down-set sizes
    let profile = |w: &FiniteTshAlgebra, x: usize| {
        (w.leq().successors(x).len(), w.leq().predecessors(x).len())
    };

    fn go(
        x: usize,
        a: &FiniteTshAlgebra,
        b: &FiniteTshAlgebra,
        map: &mut Vec<usize>,
        used: &mut u64,
        profile: &dyn Fn(&FiniteTshAlgebra, usize) -> (usize, usize),
    ) -> bool {
        let n = a.size();
        if x == n {
            return check_embedding(a, b, map).is_empty();
        }
        for y in 0..n {
            if *used >> y & 1 == 1 || profile(a, x) != profile(b, y) {
                continue;
            }
            let consistent =
                (0..x).all(|p| a.le(p, x) == b.le(map[p], y) && a.le(x, p) == b.le(y, map[p]));
            if !consistent {
                continue;
            }
            map.push(y);
            *used |= 1 << y;
            if go(x + 1, a, b, map, used, profile) {
                return true;
            }
            map.pop();
            *used &= !(1 << y);
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = 0u64;
    go(0, a, b, &mut map, &mut used, &profile).then_some(map)
}
