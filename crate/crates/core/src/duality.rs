//! The canonical frame of an algebra, the complex algebra of a frame, and the
//! two representation maps between them.
//!
//! Both constructions order their carriers canonically (prime filters and
//! up-sets sorted by member bitmask), so every map produced here is a plain
//! index table. Outputs are re-validated on every call; a failed check means
//! the input was not what the construction assumed.

use std::collections::HashMap;

use crate::algebra::{
    check_embedding, prime_filters, validate_algebra, EmbeddingLaw, Filter, FiniteTshAlgebra,
};
use crate::error::{Error, Result};
use crate::frame::{validate_frame, TshFrame};
use crate::order::{box_op, upsets, Relation, Subset, MAX_CARRIER};
use crate::report::{LawCode, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFrame {
    pub frame: TshFrame,
    /// Entry `i` is the prime filter that is state `i` of `frame`.
    pub filter_index: Vec<Filter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexAlgebra {
    pub algebra: FiniteTshAlgebra,
    /// Entry `i` is the up-set that is element `i` of `algebra`.
    pub set_index: Vec<Subset>,
}

impl ComplexAlgebra {
    pub fn position(&self, s: &Subset) -> Option<usize> {
        self.set_index.binary_search(s).ok()
    }
}

impl CanonicalFrame {
    pub fn position(&self, s: &Subset) -> Option<usize> {
        self.filter_index
            .binary_search_by(|f| f.members().cmp(s))
            .ok()
    }
}

fn require_algebra(w: &FiniteTshAlgebra) -> Result<()> {
    let report = validate_algebra(w);
    if !report.is_empty() {
        return Err(Error::invalid(format!(
            "not a TSH-algebra:\n{}",
            report.records().trim_end()
        )));
    }
    Ok(())
}

fn require_frame(k: &TshFrame) -> Result<()> {
    let report = validate_frame(k);
    if !report.is_empty() {
        return Err(Error::invalid(format!(
            "not a TSH-frame:\n{}",
            report.records().trim_end()
        )));
    }
    Ok(())
}

fn preimage(op: &[usize], p: &Subset) -> u64 {
    op.iter()
        .enumerate()
        .filter(|(_, &v)| p.contains(v))
        .fold(0, |acc, (a, _)| acc | 1 << a)
}

/// Prime filters ordered by inclusion, with
/// `g(P) = {a : ~a not in P}`, `P R F` iff `G^-1(P) ⊆ F` and
/// `P Q F` iff `H^-1(P) ⊆ F`.
pub fn canonical_frame(w: &FiniteTshAlgebra) -> Result<CanonicalFrame> {
    require_algebra(w)?;
    if w.size() == 1 {
        return Err(Error::invalid(
            "the one-element algebra has no prime filters, so its canonical frame is empty",
        ));
    }
    let filters = prime_filters(w)?;
    let p = filters.len();
    let sets: Vec<Subset> = filters.iter().map(|f| *f.members()).collect();
    let position: HashMap<u64, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits(), i))
        .collect();

    let leq = Relation::from_fn(p, |i, j| sets[i].is_subset_of(&sets[j]))?;
    let mut g_map = Vec::with_capacity(p);
    for s in &sets {
        let image =
            Subset::from_members(w.size(), (0..w.size()).filter(|&a| !s.contains(w.neg(a))))?;
        let idx = position.get(&image.bits()).copied().ok_or_else(|| {
            Error::consistency(format!(
                "g of prime filter {s} is {image}, which is not a prime filter"
            ))
        })?;
        g_map.push(idx);
    }
    let g_pre: Vec<u64> = sets.iter().map(|s| preimage(w.g_table(), s)).collect();
    let h_pre: Vec<u64> = sets.iter().map(|s| preimage(w.h_table(), s)).collect();
    let r_rel = Relation::from_fn(p, |i, j| g_pre[i] & !sets[j].bits() == 0)?;
    let q_rel = Relation::from_fn(p, |i, j| h_pre[i] & !sets[j].bits() == 0)?;

    let frame = TshFrame::new(leq, g_map, r_rel, q_rel)?;
    let report = validate_frame(&frame);
    if !report.is_empty() {
        return Err(Error::consistency(format!(
            "canonical frame fails frame laws:\n{}",
            report.records().trim_end()
        )));
    }
    Ok(CanonicalFrame {
        frame,
        filter_index: filters,
    })
}

/// Up-sets of the frame under union and intersection, with
/// `A -> B = [<=]((X \ A) ∪ B)`, `~A = X \ g(A)`, `G A = [R]A`, `H A = [Q]A`.
pub fn complex_algebra(k: &TshFrame) -> Result<ComplexAlgebra> {
    require_frame(k)?;
    let sets = upsets(k.leq());
    let m = sets.len();
    if m > MAX_CARRIER {
        return Err(Error::invalid(format!(
            "frame has {m} up-sets; complex algebras are limited to {MAX_CARRIER} elements"
        )));
    }
    let position: HashMap<u64, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits(), i))
        .collect();
    let locate = |s: Subset, what: &str| -> Result<usize> {
        position.get(&s.bits()).copied().ok_or_else(|| {
            Error::consistency(format!("{what} produced {s}, which is not an up-set"))
        })
    };

    let leq = Relation::from_fn(m, |i, j| sets[i].is_subset_of(&sets[j]))?;
    let mut neg = Vec::with_capacity(m);
    let mut g_op = Vec::with_capacity(m);
    let mut h_op = Vec::with_capacity(m);
    let mut imp = vec![vec![0; m]; m];
    for (i, a) in sets.iter().enumerate() {
        neg.push(locate(a.image(k.g_map()).complement(), "negation")?);
        g_op.push(locate(box_op(k.r(), a)?, "G")?);
        h_op.push(locate(box_op(k.q(), a)?, "H")?);
        for (j, b) in sets.iter().enumerate() {
            imp[i][j] = locate(box_op(k.leq(), &a.complement().union(b))?, "implication")?;
        }
    }
    let algebra = FiniteTshAlgebra::new(leq, neg, imp, g_op, h_op)?;
    let report = validate_algebra(&algebra);
    if !report.is_empty() {
        return Err(Error::consistency(format!(
            "complex algebra fails algebra laws:\n{}",
            report.records().trim_end()
        )));
    }
    Ok(ComplexAlgebra {
        algebra,
        set_index: sets,
    })
}

/// `h(a)` = the prime filters containing `a`, as an element of the complex
/// algebra of the canonical frame.
#[derive(Debug, Clone)]
pub struct AlgebraEmbedding {
    pub canonical: CanonicalFrame,
    pub complex: ComplexAlgebra,
    pub map: Vec<usize>,
    pub report: Report<EmbeddingLaw>,
}

pub fn embedding_h(w: &FiniteTshAlgebra) -> Result<AlgebraEmbedding> {
    let canonical = canonical_frame(w)?;
    let complex = complex_algebra(&canonical.frame)?;
    let p = canonical.filter_index.len();
    let mut map = Vec::with_capacity(w.size());
    for a in 0..w.size() {
        let image =
            Subset::from_members(p, (0..p).filter(|&i| canonical.filter_index[i].contains(a)))?;
        let idx = complex.position(&image).ok_or_else(|| {
            Error::consistency(format!(
                "h({a}) = {image} is not an up-set of the canonical frame"
            ))
        })?;
        map.push(idx);
    }
    let report = check_embedding(w, &complex.algebra, &map);
    Ok(AlgebraEmbedding {
        canonical,
        complex,
        map,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameEmbeddingLaw {
    /// Distinct states that are not order-equivalent share an image.
    Injective,
    OrderPreserved,
    OrderReflected,
    RPreserved,
    RReflected,
    QPreserved,
    QReflected,
    GCommutes,
}

impl LawCode for FrameEmbeddingLaw {
    fn code(&self) -> &'static str {
        match self {
            FrameEmbeddingLaw::Injective => "injective-mod-equivalence",
            FrameEmbeddingLaw::OrderPreserved => "order-preserved",
            FrameEmbeddingLaw::OrderReflected => "order-reflected",
            FrameEmbeddingLaw::RPreserved => "R-preserved",
            FrameEmbeddingLaw::RReflected => "R-reflected",
            FrameEmbeddingLaw::QPreserved => "Q-preserved",
            FrameEmbeddingLaw::QReflected => "Q-reflected",
            FrameEmbeddingLaw::GCommutes => "g-commutes",
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            FrameEmbeddingLaw::Injective => "k(x) = k(y) only when x <= y <= x",
            FrameEmbeddingLaw::OrderPreserved => "x <= y implies k(x) ⊆ k(y)",
            FrameEmbeddingLaw::OrderReflected => "k(x) ⊆ k(y) implies x <= y",
            FrameEmbeddingLaw::RPreserved => "x R y implies k(x) R k(y)",
            FrameEmbeddingLaw::RReflected => "k(x) R k(y) implies x R y",
            FrameEmbeddingLaw::QPreserved => "x Q y implies k(x) Q k(y)",
            FrameEmbeddingLaw::QReflected => "k(x) Q k(y) implies x Q y",
            FrameEmbeddingLaw::GCommutes => "k(g(x)) = g(k(x))",
        }
    }
}

/// `k(x)` = the up-sets containing `x`, as a state of the canonical frame
/// of the complex algebra.
#[derive(Debug, Clone)]
pub struct FrameEmbedding {
    pub complex: ComplexAlgebra,
    pub canonical: CanonicalFrame,
    pub map: Vec<usize>,
    pub report: Report<FrameEmbeddingLaw>,
    /// Pairs `x < y` of order-equivalent states identified by `k`. Expected
    /// for quasi-orders and not a violation.
    pub collisions: Vec<(usize, usize)>,
}

pub fn embedding_k(k: &TshFrame) -> Result<FrameEmbedding> {
    let complex = complex_algebra(k)?;
    let canonical = canonical_frame(&complex.algebra)?;
    let m = complex.set_index.len();
    let mut map = Vec::with_capacity(k.size());
    for x in 0..k.size() {
        let image = Subset::from_members(m, (0..m).filter(|&i| complex.set_index[i].contains(x)))?;
        let idx = canonical
            .position(&image)
            .ok_or_else(|| Error::consistency(format!("k({x}) = {image} is not a prime filter")))?;
        map.push(idx);
    }

    let cf = &canonical.frame;
    let mut report = Report::new();
    let mut collisions = Vec::new();
    let n = k.size();
    for x in 0..n {
        for y in 0..n {
            if x < y && map[x] == map[y] {
                if k.leq().contains(x, y) && k.leq().contains(y, x) {
                    collisions.push((x, y));
                } else {
                    report.push(FrameEmbeddingLaw::Injective, vec![x, y]);
                }
            }
            let pairs = [
                (
                    k.leq(),
                    cf.leq(),
                    FrameEmbeddingLaw::OrderPreserved,
                    FrameEmbeddingLaw::OrderReflected,
                ),
                (
                    k.r(),
                    cf.r(),
                    FrameEmbeddingLaw::RPreserved,
                    FrameEmbeddingLaw::RReflected,
                ),
                (
                    k.q(),
                    cf.q(),
                    FrameEmbeddingLaw::QPreserved,
                    FrameEmbeddingLaw::QReflected,
                ),
            ];
            for (src, dst, forward, backward) in pairs {
                match (src.contains(x, y), dst.contains(map[x], map[y])) {
                    (true, false) => report.push(forward, vec![x, y]),
                    (false, true) => report.push(backward, vec![x, y]),
                    _ => {}
                }
            }
        }
        if map[k.g(x)] != cf.g(map[x]) {
            report.push(FrameEmbeddingLaw::GCommutes, vec![x]);
        }
    }
    Ok(FrameEmbedding {
        complex,
        canonical,
        map,
        report,
        collisions,
    })
}
