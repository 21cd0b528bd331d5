//! Small named structures used throughout the tests, the CLI examples and
//! the Python smoke test.

use crate::algebra::FiniteTshAlgebra;
use crate::frame::TshFrame;
use crate::order::Relation;

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The `n`-element chain with order-reversing negation and identity tense
/// operators. For `n = 2` this is the two-element Boolean algebra.
pub fn kleene_chain(n: usize) -> FiniteTshAlgebra {
    let neg = (0..n).rev().collect();
    FiniteTshAlgebra::from_order(
        Relation::chain(n).expect("small"),
        neg,
        identity(n),
        identity(n),
    )
    .expect("chains are Heyting algebras")
}

/// Same chain, with `G` and `H` sending everything to the top.
pub fn kleene_chain_const_top(n: usize) -> FiniteTshAlgebra {
    kleene_chain(n)
        .with_tense(vec![n - 1; n], vec![n - 1; n])
        .expect("same carrier")
}

pub fn boolean2() -> FiniteTshAlgebra {
    kleene_chain(2)
}

/// `0 < a < 1` as indices `0, 1, 2`, with `~a = a`.
pub fn a3() -> FiniteTshAlgebra {
    kleene_chain(3)
}

fn diamond_order() -> Relation {
    Relation::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        .expect("small")
        .closure()
}

/// Four-element Boolean algebra: atoms 1 and 2 are each other's complement.
pub fn diamond_boolean() -> FiniteTshAlgebra {
    FiniteTshAlgebra::from_order(diamond_order(), vec![3, 2, 1, 0], identity(4), identity(4))
        .expect("diamond is distributive")
}

/// Four-element De Morgan diamond whose atoms are negation fixpoints.
pub fn diamond_kleene() -> FiniteTshAlgebra {
    FiniteTshAlgebra::from_order(diamond_order(), vec![3, 1, 2, 0], identity(4), identity(4))
        .expect("diamond is distributive")
}

/// Boolean diamond whose tense operators swap the atoms, a genuinely
/// non-trivial `G = H`.
pub fn diamond_boolean_swap() -> FiniteTshAlgebra {
    diamond_boolean()
        .with_tense(vec![0, 2, 1, 3], vec![0, 2, 1, 3])
        .expect("same carrier")
}

/// Carrier `{0, 1}` with `0 <= 1`, `g` swapping the points and `R = Q = <=`.
pub fn x2() -> TshFrame {
    let leq = Relation::chain(2).expect("small");
    TshFrame::new(leq.clone(), vec![1, 0], leq.clone(), leq).expect("well-formed")
}

/// One state; `R = Q = {(0,0)}` when `reflexive`, else both empty.
pub fn singleton_frame(reflexive: bool) -> TshFrame {
    let leq = Relation::identity(1).expect("small");
    let rel = if reflexive {
        leq.clone()
    } else {
        Relation::empty(1).expect("small")
    };
    TshFrame::new(leq, vec![0], rel.clone(), rel).expect("well-formed")
}

/// Named finite TSH-algebras: chains with both kinds of tense operators,
/// the two diamonds, and products of chains.
pub fn algebra_corpus() -> Vec<(String, FiniteTshAlgebra)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push((format!("chain{n}"), kleene_chain(n)));
        out.push((format!("chain{n}-const-top"), kleene_chain_const_top(n)));
    }
    out.push(("diamond-boolean".into(), diamond_boolean()));
    out.push(("diamond-kleene".into(), diamond_kleene()));
    out.push(("diamond-boolean-swap".into(), diamond_boolean_swap()));
    let products = [(2, 3), (3, 3), (2, 4), (3, 4)];
    for (a, b) in products {
        let p = kleene_chain(a).product(&kleene_chain(b)).expect("small");
        out.push((format!("chain{a}xchain{b}"), p));
    }
    let b2 = boolean2();
    let cube = b2.product(&b2).and_then(|d| d.product(&b2)).expect("small");
    out.push(("boolean8".into(), cube));
    let mixed = diamond_kleene()
        .product(&kleene_chain_const_top(3))
        .expect("small");
    out.push(("diamond-kleene-x-chain3-const-top".into(), mixed));
    out
}
