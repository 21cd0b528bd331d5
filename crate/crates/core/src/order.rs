//! Finite relations and subsets over a dense carrier `0..size`.
//!
//! Both types are bit-packed: a [`Subset`] is a single `u64` mask and a
//! [`Relation`] keeps one successor mask per element. Carriers therefore hold
//! at most [`MAX_CARRIER`] elements, which is far beyond what any exhaustive
//! procedure in this crate can visit anyway.

use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier a [`Subset`] or [`Relation`] can describe.
pub const MAX_CARRIER: usize = 64;

fn full_mask(size: usize) -> u64 {
    if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

fn check_size(size: usize) -> Result<()> {
    if size > MAX_CARRIER {
        return Err(Error::invalid(format!(
            "carrier of size {size} exceeds the supported maximum of {MAX_CARRIER}"
        )));
    }
    Ok(())
}

/// A subset of the carrier `0..size`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    size: usize,
    bits: u64,
}

impl Subset {
    pub fn empty(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Subset { size, bits: 0 })
    }

    pub fn full(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Subset {
            size,
            bits: full_mask(size),
        })
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(size: usize, members: I) -> Result<Self> {
        let mut s = Subset::empty(size)?;
        for m in members {
            if m >= size {
                return Err(Error::invalid(format!(
                    "subset member {m} out of range for carrier of size {size}"
                )));
            }
            s.bits |= 1 << m;
        }
        Ok(s)
    }

    pub fn from_bits(size: usize, bits: u64) -> Result<Self> {
        check_size(size)?;
        if bits & !full_mask(size) != 0 {
            return Err(Error::invalid(format!(
                "bitmask {bits:#x} has members outside a carrier of size {size}"
            )));
        }
        Ok(Subset { size, bits })
    }

    pub(crate) fn from_bits_unchecked(size: usize, bits: u64) -> Self {
        debug_assert!(size <= MAX_CARRIER && bits & !full_mask(size) == 0);
        Subset { size, bits }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Member bitmask; bit `i` is set iff `i` is a member.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.size && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(
            x < self.size,
            "element {x} outside carrier of size {}",
            self.size
        );
        self.bits |= 1 << x;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.size)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.size).filter(move |&i| bits >> i & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.size, other.size);
        Subset::from_bits_unchecked(self.size, self.bits | other.bits)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.size, other.size);
        Subset::from_bits_unchecked(self.size, self.bits & other.bits)
    }

    pub fn complement(&self) -> Subset {
        Subset::from_bits_unchecked(self.size, !self.bits & full_mask(self.size))
    }

    /// Image of the subset under a total map on the same carrier.
    pub fn image(&self, map: &[usize]) -> Subset {
        let mut out = 0u64;
        for m in self.members() {
            out |= 1 << map[m];
        }
        Subset::from_bits_unchecked(self.size, out)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by carrier size, then by member bitmask.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size, self.bits).cmp(&(other.size, other.bits))
    }
}

/// A binary relation on the carrier `0..size`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    size: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Relation {
            size,
            rows: vec![0; size],
        })
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut r = Relation::empty(size)?;
        for x in 0..size {
            r.rows[x] = 1 << x;
        }
        Ok(r)
    }

    pub fn full(size: usize) -> Result<Self> {
        let mut r = Relation::empty(size)?;
        r.rows.fill(full_mask(size));
        Ok(r)
    }

    /// The total order `0 <= 1 <= ... <= size-1`.
    pub fn chain(size: usize) -> Result<Self> {
        Relation::from_fn(size, |x, y| x <= y)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        size: usize,
        pairs: I,
    ) -> Result<Self> {
        let mut r = Relation::empty(size)?;
        for (x, y) in pairs {
            if x >= size || y >= size {
                return Err(Error::invalid(format!(
                    "pair ({x},{y}) out of range for carrier of size {size}"
                )));
            }
            r.rows[x] |= 1 << y;
        }
        Ok(r)
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut r = Relation::empty(size)?;
        for x in 0..size {
            for y in 0..size {
                if f(x, y) {
                    r.rows[x] |= 1 << y;
                }
            }
        }
        Ok(r)
    }

    pub fn from_rows(size: usize, rows: Vec<u64>) -> Result<Self> {
        check_size(size)?;
        if rows.len() != size || rows.iter().any(|r| r & !full_mask(size) != 0) {
            return Err(Error::invalid(format!(
                "successor rows do not describe a relation on {size} elements"
            )));
        }
        Ok(Relation { size, rows })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.size && y < self.size && self.rows[x] >> y & 1 == 1
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.size && y < self.size);
        self.rows[x] |= 1 << y;
    }

    /// Successors of `x` as a subset.
    pub fn successors(&self, x: usize) -> Subset {
        Subset::from_bits_unchecked(self.size, self.rows[x])
    }

    pub fn row_bits(&self, x: usize) -> u64 {
        self.rows[x]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |x| {
            (0..self.size)
                .filter(move |&y| self.rows[x] >> y & 1 == 1)
                .map(move |y| (x, y))
        })
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.size == other.size && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation {
            size: self.size,
            rows: vec![0; self.size],
        };
        for (x, y) in self.pairs() {
            out.rows[y] |= 1 << x;
        }
        out
    }

    /// Predecessors of `y` as a subset.
    pub fn predecessors(&self, y: usize) -> Subset {
        let mut bits = 0u64;
        for x in 0..self.size {
            if self.rows[x] >> y & 1 == 1 {
                bits |= 1 << x;
            }
        }
        Subset::from_bits_unchecked(self.size, bits)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|x| self.rows[x] >> x & 1 == 1)
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size).all(|x| {
            self.successors(x)
                .members()
                .all(|y| self.rows[y] & !self.rows[x] == 0)
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| x == y || !self.contains(y, x))
    }

    /// Reflexive-transitive closure.
    pub fn closure(&self) -> Relation {
        let mut out = self.clone();
        for x in 0..self.size {
            out.rows[x] |= 1 << x;
        }
        // Warshall
        for k in 0..self.size {
            for x in 0..self.size {
                if out.rows[x] >> k & 1 == 1 {
                    out.rows[x] |= out.rows[k];
                }
            }
        }
        out
    }

    /// Relabels the carrier: `(x, y)` becomes `(perm[x], perm[y])`.
    pub fn permute(&self, perm: &[usize]) -> Relation {
        let mut out = Relation {
            size: self.size,
            rows: vec![0; self.size],
        };
        for (x, y) in self.pairs() {
            out.rows[perm[x]] |= 1 << perm[y];
        }
        out
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]", self.size)?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// True iff `rel` is reflexive and transitive.
pub fn is_quasi_order(rel: &Relation) -> bool {
    rel.is_reflexive() && rel.is_transitive()
}

/// `[T]A`: the elements all of whose `rel`-successors lie in `a`.
pub fn box_op(rel: &Relation, a: &Subset) -> Result<Subset> {
    if rel.size != a.size {
        return Err(Error::invalid(format!(
            "box: relation on {} elements applied to subset of {} elements",
            rel.size, a.size
        )));
    }
    let outside = !a.bits;
    let mut bits = 0u64;
    for x in 0..rel.size {
        if rel.rows[x] & outside == 0 {
            bits |= 1 << x;
        }
    }
    Ok(Subset::from_bits_unchecked(rel.size, bits))
}

/// Relational composition: `(x, z)` such that `x r1 y` and `y r2 z` for some `y`.
pub fn compose(r1: &Relation, r2: &Relation) -> Result<Relation> {
    if r1.size != r2.size {
        return Err(Error::invalid(format!(
            "compose: relations on {} and {} elements",
            r1.size, r2.size
        )));
    }
    let mut rows = vec![0u64; r1.size];
    for (x, row) in rows.iter_mut().enumerate() {
        for y in r1.successors(x).members() {
            *row |= r2.rows[y];
        }
    }
    Ok(Relation {
        size: r1.size,
        rows,
    })
}

/// True iff `a` is closed upward under `leq`.
pub fn is_upward_closed(leq: &Relation, a: &Subset) -> bool {
    leq.size == a.size && a.members().all(|x| leq.rows[x] & !a.bits == 0)
}

/// The least upward-closed superset of `a`.
pub fn up_closure(leq: &Relation, a: &Subset) -> Subset {
    let mut bits = a.bits;
    for x in a.members() {
        bits |= leq.rows[x];
    }
    Subset::from_bits_unchecked(a.size, bits)
}

/// The least downward-closed superset of `a`.
pub fn down_closure(leq: &Relation, a: &Subset) -> Subset {
    let mut bits = a.bits;
    for x in 0..leq.size {
        if leq.rows[x] & a.bits != 0 {
            bits |= 1 << x;
        }
    }
    Subset::from_bits_unchecked(a.size, bits)
}

/// Every upward-closed subset of a quasi-order, sorted by member bitmask.
///
/// Backtracks over the elements: including `x` forces its up-set in,
/// excluding it forces its down-set out. Every consistent partial choice
/// extends to at least one up-set, so the search has no dead branches.
pub fn upsets(leq: &Relation) -> Vec<Subset> {
    let n = leq.size;
    let up: Vec<u64> = (0..n).map(|x| leq.rows[x] | 1 << x).collect();
    let down: Vec<u64> = (0..n)
        .map(|y| {
            (0..n)
                .filter(|&x| x == y || leq.rows[x] >> y & 1 == 1)
                .fold(0u64, |acc, x| acc | 1 << x)
        })
        .collect();

    fn go(x: usize, n: usize, inn: u64, out: u64, up: &[u64], down: &[u64], acc: &mut Vec<u64>) {
        if x == n {
            acc.push(inn);
            return;
        }
        if (inn | out) >> x & 1 == 1 {
            go(x + 1, n, inn, out, up, down, acc);
            return;
        }
        if up[x] & out == 0 {
            go(x + 1, n, inn | up[x], out, up, down, acc);
        }
        if down[x] & inn == 0 {
            go(x + 1, n, inn, out | down[x], up, down, acc);
        }
    }

    let mut acc = Vec::new();
    go(0, n, 0, 0, &up, &down, &mut acc);
    acc.sort_unstable();
    acc.into_iter()
        .map(|bits| Subset::from_bits_unchecked(n, bits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> Subset {
        Subset::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn quasi_order_examples() {
        assert!(is_quasi_order(&Relation::identity(3).unwrap()));
        assert!(is_quasi_order(&rel(2, &[(0, 0), (1, 1), (0, 1)])));
        assert!(!is_quasi_order(&rel(2, &[(0, 1), (1, 1)])));
        // reflexive but not transitive
        assert!(!is_quasi_order(&rel(
            3,
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]
        )));
    }

    #[test]
    fn box_examples() {
        let refl = rel(2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(
            box_op(&refl, &Subset::full(2).unwrap()).unwrap(),
            Subset::full(2).unwrap()
        );
        assert_eq!(
            box_op(&refl, &Subset::empty(2).unwrap()).unwrap(),
            Subset::empty(2).unwrap()
        );
        assert_eq!(box_op(&refl, &set(2, &[1])).unwrap(), set(2, &[1]));
    }

    #[test]
    fn box_size_mismatch() {
        let r = Relation::identity(2).unwrap();
        assert!(matches!(
            box_op(&r, &set(3, &[0])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let id = Relation::identity(2).unwrap();
        let r = rel(2, &[(0, 1), (1, 1)]);
        assert_eq!(compose(&id, &r).unwrap(), r);
        assert_eq!(compose(&r, &id).unwrap(), r);
        assert_eq!(
            compose(&rel(2, &[(0, 1)]), &rel(2, &[(1, 0)])).unwrap(),
            rel(2, &[(0, 0)])
        );
        assert!(compose(&id, &Relation::identity(3).unwrap()).is_err());
    }

    #[test]
    fn upward_closed_examples() {
        let leq = rel(2, &[(0, 0), (0, 1), (1, 1)]);
        assert!(is_upward_closed(&leq, &Subset::empty(2).unwrap()));
        assert!(is_upward_closed(&leq, &Subset::full(2).unwrap()));
        assert!(!is_upward_closed(&leq, &set(2, &[0])));
        assert!(is_upward_closed(&leq, &set(2, &[1])));
    }

    #[test]
    fn upsets_of_chain_and_antichain() {
        assert_eq!(upsets(&Relation::chain(4).unwrap()).len(), 5);
        assert_eq!(upsets(&Relation::identity(4).unwrap()).len(), 16);
        // a two-element cluster behaves like one point
        assert_eq!(upsets(&Relation::full(2).unwrap()).len(), 2);
    }

    #[test]
    fn closure_builds_order() {
        let c = rel(3, &[(0, 1), (1, 2)]).closure();
        assert_eq!(c, Relation::chain(3).unwrap());
    }
}
