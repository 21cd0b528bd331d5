#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsh_core::frame::{validate_frame, TshFrame};
use tsh_core::logic::{parse, random_formula, Formula};
use tsh_core::order::Relation;

/// Every TSH-frame on exactly `n` points, found by running `validate_frame`
/// over all tuples `(<=, g, R, Q)` with `g` an arbitrary map.
pub fn brute_force_frames(n: usize) -> Vec<TshFrame> {
    let cells = n * n;
    let relation = |mask: u64| {
        Relation::from_pairs(
            n,
            (0..cells)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i / n, i % n)),
        )
        .unwrap()
    };
    let maps: Vec<Vec<usize>> = (0..n.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for leq in 0u64..1 << cells {
        let leq = relation(leq);
        for g in &maps {
            for r in 0u64..1 << cells {
                for q in 0u64..1 << cells {
                    let k =
                        TshFrame::new(leq.clone(), g.clone(), relation(r), relation(q)).unwrap();
                    if validate_frame(&k).is_empty() {
                        out.push(k);
                    }
                }
            }
        }
    }
    out.sort_by_cached_key(TshFrame::encoding);
    out
}

pub const HAND_PICKED: &[&str] = &[
    "p",
    "~p",
    "p | ~p",
    "~(p & ~p)",
    "p -> p",
    "~~p -> p",
    "(p -> q) -> (~q -> ~p)",
    "G p -> p",
    "p -> G P p",
    "p -> H F p",
    "G (p & q) <-> G p & G q",
    "F p -> G F p",
    "P ~p | H p",
    "~G p <-> F ~p",
    "G p -> G G p",
    "H (p -> q) -> (H p -> H q)",
    "(p -> q) | (q -> p)",
    "~(p -> q) -> p",
    "F (p | q) -> F p | F q",
    "G H p -> H G p",
];

/// Hand-picked formulas followed by `random` seeded random ones over
/// `p, q, r`.
pub fn formula_corpus(random: usize, seed: u64) -> Vec<Formula> {
    let mut out: Vec<Formula> = HAND_PICKED.iter().map(|s| parse(s).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..random).map(|_| random_formula(&mut rng, 3, &["p", "q", "r"])));
    out
}
