//! TSH-frames: a quasi-ordered set with an order-reversing involution `g` and
//! two accessibility relations `R` and `Q` tied together through `g`.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{compose, upsets, Relation};
use crate::report::{LawCode, Report};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TshFrame {
    leq: Relation,
    g_map: Vec<usize>,
    r_rel: Relation,
    q_rel: Relation,
}

impl TshFrame {
    /// Checks shapes and ranges only; see [`validate_frame`] for the axioms.
    pub fn new(leq: Relation, g_map: Vec<usize>, r_rel: Relation, q_rel: Relation) -> Result<Self> {
        let n = leq.size();
        if n == 0 {
            return Err(Error::invalid("frame carrier is empty"));
        }
        if r_rel.size() != n || q_rel.size() != n {
            return Err(Error::invalid(
                "R and Q must live on the same carrier as the order",
            ));
        }
        if g_map.len() != n {
            return Err(Error::invalid(format!(
                "g has {} entries, expected {n}",
                g_map.len()
            )));
        }
        if let Some((i, v)) = g_map.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::invalid(format!("g[{i}] = {v} is out of range")));
        }
        Ok(TshFrame {
            leq,
            g_map,
            r_rel,
            q_rel,
        })
    }

    pub fn size(&self) -> usize {
        self.leq.size()
    }

    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    pub fn g(&self, x: usize) -> usize {
        self.g_map[x]
    }

    pub fn g_map(&self) -> &[usize] {
        &self.g_map
    }

    pub fn r(&self) -> &Relation {
        &self.r_rel
    }

    pub fn q(&self) -> &Relation {
        &self.q_rel
    }

    /// The frame with `R` and `Q` exchanged.
    pub fn swap_relations(&self) -> TshFrame {
        TshFrame {
            leq: self.leq.clone(),
            g_map: self.g_map.clone(),
            r_rel: self.q_rel.clone(),
            q_rel: self.r_rel.clone(),
        }
    }

    /// Relabels state `x` as `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> TshFrame {
        let mut g_map = vec![0; self.size()];
        for x in 0..self.size() {
            g_map[perm[x]] = perm[self.g_map[x]];
        }
        TshFrame {
            leq: self.leq.permute(perm),
            g_map,
            r_rel: self.r_rel.permute(perm),
            q_rel: self.q_rel.permute(perm),
        }
    }

    /// Flat encoding compared lexicographically for canonical forms:
    /// order rows, then `g`, then `R` rows, then `Q` rows.
    pub fn encoding(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(4 * self.size());
        out.extend_from_slice(self.leq.rows());
        out.extend(self.g_map.iter().map(|&x| x as u64));
        out.extend_from_slice(self.r_rel.rows());
        out.extend_from_slice(self.q_rel.rows());
        out
    }

    /// The relabeling with the lexicographically smallest encoding.
    pub fn canonical_form(&self) -> TshFrame {
        let mut best: Option<(Vec<u64>, TshFrame)> = None;
        for_each_permutation(self.size(), |perm| {
            let candidate = self.permute(perm);
            let enc = candidate.encoding();
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                best = Some((enc, candidate));
            }
        });
        best.map(|(_, f)| f).expect("at least one permutation")
    }
}

impl fmt::Debug for TshFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TshFrame")
            .field("leq", &self.leq)
            .field("g", &self.g_map)
            .field("r", &self.r_rel)
            .field("q", &self.q_rel)
            .finish()
    }
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameLaw {
    Reflexive,
    Transitive,
    K1,
    K2,
    K3,
    K4,
    K5,
}

impl LawCode for FrameLaw {
    fn code(&self) -> &'static str {
        match self {
            FrameLaw::Reflexive => "order-reflexive",
            FrameLaw::Transitive => "order-transitive",
            FrameLaw::K1 => "K1",
            FrameLaw::K2 => "K2",
            FrameLaw::K3 => "K3",
            FrameLaw::K4 => "K4",
            FrameLaw::K5 => "K5",
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            FrameLaw::Reflexive => "x <= x",
            FrameLaw::Transitive => "x <= y and y <= z imply x <= z",
            FrameLaw::K1 => "x <= y implies g(y) <= g(x)",
            FrameLaw::K2 => "g(g(x)) = x",
            FrameLaw::K3 => "(<= ; R ; <=) is contained in R",
            FrameLaw::K4 => "(<= ; Q ; <=) is contained in Q",
            FrameLaw::K5 => "x R g(y) iff y Q g(x)",
        }
    }
}

/// Checks the quasi-order and K1 to K5.
pub fn validate_frame(k: &TshFrame) -> Report<FrameLaw> {
    let mut report = Report::new();
    let n = k.size();
    let leq = k.leq();
    for x in 0..n {
        if !leq.contains(x, x) {
            report.push(FrameLaw::Reflexive, vec![x]);
        }
    }
    for (x, y) in leq.pairs() {
        for z in leq.successors(y).members() {
            if !leq.contains(x, z) {
                report.push(FrameLaw::Transitive, vec![x, y, z]);
            }
        }
        if !leq.contains(k.g(y), k.g(x)) {
            report.push(FrameLaw::K1, vec![x, y]);
        }
    }
    for x in 0..n {
        if k.g(k.g(x)) != x {
            report.push(FrameLaw::K2, vec![x]);
        }
    }
    let closed = |rel: &Relation, law: FrameLaw, report: &mut Report<FrameLaw>| {
        let around = compose(leq, &compose(rel, leq).expect("same carrier")).expect("same carrier");
        let missing = around.pairs().find(|&(x, y)| !rel.contains(x, y));
        if let Some((x, y)) = missing {
            report.push(law, vec![x, y]);
        }
    };
    closed(k.r(), FrameLaw::K3, &mut report);
    closed(k.q(), FrameLaw::K4, &mut report);
    for x in 0..n {
        for y in 0..n {
            if k.r().contains(x, k.g(y)) != k.q().contains(y, k.g(x)) {
                report.push(FrameLaw::K5, vec![x, y]);
            }
        }
    }
    report
}

/// All quasi-orders on `n` points, in increasing row encoding.
pub fn quasi_orders(n: usize) -> Vec<Relation> {
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off_diagonal.len() {
        let mut rel = Relation::identity(n).expect("small carrier");
        for (i, &(x, y)) in off_diagonal.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rel.insert(x, y);
            }
        }
        if rel.is_transitive() {
            out.push(rel);
        }
    }
    out.sort();
    out
}

/// All involutions on `0..n`.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(g: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        match g.iter().position(Option::is_none) {
            None => out.push(g.iter().map(|x| x.expect("filled")).collect()),
            Some(x) => {
                g[x] = Some(x);
                go(g, out);
                for y in x + 1..g.len() {
                    if g[y].is_none() {
                        g[x] = Some(y);
                        g[y] = Some(x);
                        go(g, out);
                        g[y] = None;
                    }
                }
                g[x] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out.sort();
    out
}

/// Relations `R` with `(<= ; R ; <=)` contained in `R`: the up-sets of
/// `X x X` ordered by `(x, y) <= (x', y')` iff `x' <= x` and `y <= y'`.
fn biclosed_relations(leq: &Relation) -> Vec<Relation> {
    let n = leq.size();
    let pair_order = Relation::from_fn(n * n, |i, j| {
        let (x, y) = (i / n, i % n);
        let (x2, y2) = (j / n, j % n);
        leq.contains(x2, x) && leq.contains(y, y2)
    })
    .expect("pair carrier fits");
    upsets(&pair_order)
        .into_iter()
        .map(|s| Relation::from_pairs(n, s.members().map(|i| (i / n, i % n))).expect("in range"))
        .collect()
}

/// `Q` forced by `R` through K5: `y Q z` iff `g(z) R g(y)`.
pub fn q_from_r(r: &Relation, g: &[usize]) -> Relation {
    Relation::from_fn(r.size(), |y, z| r.contains(g[z], g[y])).expect("same carrier")
}

/// Every TSH-frame on `1..=max_size` points.
///
/// With `dedup` each isomorphism class is emitted once, as its canonical
/// form; otherwise every labeled frame is emitted. Frames come out sorted by
/// size and then by [`TshFrame::encoding`].
pub fn enumerate_frames(max_size: usize, dedup: bool) -> Vec<TshFrame> {
    let mut all = Vec::new();
    for n in 1..=max_size {
        let mut layer = Vec::new();
        for leq in quasi_orders(n) {
            for g in involutions(n) {
                if !leq.pairs().all(|(x, y)| leq.contains(g[y], g[x])) {
                    continue;
                }
                for r in biclosed_relations(&leq) {
                    let q = q_from_r(&r, &g);
                    let frame = TshFrame::new(leq.clone(), g.clone(), r, q).expect("well-formed");
                    // K4 is the only condition not guaranteed by construction
                    if !validate_frame(&frame).is_empty() {
                        continue;
                    }
                    if dedup && frame.canonical_form() != frame {
                        continue;
                    }
                    layer.push(frame);
                }
            }
        }
        layer.sort_by_cached_key(TshFrame::encoding);
        all.extend(layer);
    }
    all
}

/// A bijection `k1 -> k2` preserving and reflecting the order, `g`, `R`
/// and `Q`, if one exists.
pub fn find_isomorphism(k1: &TshFrame, k2: &TshFrame) -> Option<Vec<usize>> {
    let n = k1.size();
    if n != k2.size()
        || k1.leq().len() != k2.leq().len()
        || k1.r().len() != k2.r().len()
        || k1.q().len() != k2.q().len()
    {
        return None;
    }

    fn compatible(k1: &TshFrame, k2: &TshFrame, map: &[usize], x: usize, y: usize) -> bool {
        let rels = |k: &TshFrame, a: usize, b: usize| {
            (
                k.leq().contains(a, b),
                k.r().contains(a, b),
                k.q().contains(a, b),
            )
        };
        if rels(k1, x, x) != rels(k2, y, y) {
            return false;
        }
        (0..map.len()).all(|p| {
            let mp = map[p];
            rels(k1, p, x) == rels(k2, mp, y)
                && rels(k1, x, p) == rels(k2, y, mp)
                && (k1.g(p) == x) == (k2.g(mp) == y)
                && (k1.g(x) == p) == (k2.g(y) == mp)
        }) && (k1.g(x) == x) == (k2.g(y) == y)
    }

    fn go(k1: &TshFrame, k2: &TshFrame, map: &mut Vec<usize>, used: &mut u64) -> bool {
        let x = map.len();
        if x == k1.size() {
            return true;
        }
        for y in 0..k2.size() {
            if *used >> y & 1 == 0 && compatible(k1, k2, map, x, y) {
                map.push(y);
                *used |= 1 << y;
                if go(k1, k2, map, used) {
                    return true;
                }
                map.pop();
                *used &= !(1 << y);
            }
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = 0;
    if go(k1, k2, &mut map, &mut used) && k1.permute(&map) == *k2 {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn singleton_and_x2_are_frames() {
        assert!(validate_frame(&fixtures::singleton_frame(true)).is_empty());
        assert!(validate_frame(&fixtures::singleton_frame(false)).is_empty());
        assert!(validate_frame(&fixtures::x2()).is_empty());
    }

    #[test]
    fn x2_with_identity_r_breaks_k3() {
        let x2 = fixtures::x2();
        let broken = TshFrame::new(
            x2.leq().clone(),
            x2.g_map().to_vec(),
            Relation::identity(2).unwrap(),
            x2.q().clone(),
        )
        .unwrap();
        let report = validate_frame(&broken);
        assert_eq!(report.witness(FrameLaw::K3), Some(&[0, 1][..]));
    }

    #[test]
    fn non_involution_breaks_k2() {
        let leq = Relation::identity(2).unwrap();
        let k = TshFrame::new(leq.clone(), vec![1, 1], leq.clone(), leq).unwrap();
        assert!(validate_frame(&k).violates(FrameLaw::K2));
    }

    #[test]
    fn out_of_range_g_is_invalid_input() {
        let leq = Relation::identity(2).unwrap();
        let err = TshFrame::new(leq.clone(), vec![0, 2], leq.clone(), leq);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn one_point_frames() {
        let frames = enumerate_frames(1, true);
        assert_eq!(frames.len(), 2);
        assert!(frames[0].r().is_empty() && frames[0].q().is_empty());
        assert_eq!(frames[1].r().len(), 1);
        assert_eq!(frames[1].q().len(), 1);
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(quasi_orders(1).len(), 1);
        assert_eq!(quasi_orders(2).len(), 4);
        assert_eq!(quasi_orders(3).len(), 29);
        assert_eq!(involutions(3).len(), 4);
        assert_eq!(involutions(4).len(), 10);
    }

    #[test]
    fn isomorphism_examples() {
        let x2 = fixtures::x2();
        let auto = find_isomorphism(&x2, &x2).unwrap();
        assert_eq!(x2.permute(&auto), x2);
        assert_eq!(
            find_isomorphism(&x2, &fixtures::singleton_frame(true)),
            None
        );

        let swapped = x2.permute(&[1, 0]);
        assert_ne!(swapped, x2);
        assert_eq!(find_isomorphism(&x2, &swapped), Some(vec![1, 0]));
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        for k in enumerate_frames(3, false) {
            let canon = k.canonical_form();
            assert!(find_isomorphism(&k, &canon).is_some());
            assert_eq!(canon.canonical_form(), canon);
        }
    }
}
