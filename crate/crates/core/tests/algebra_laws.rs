use tsh_core::algebra::{
    derive_meet_join_imp, is_prime_filter, prime_filters, prime_filters_by_upsets,
    validate_algebra, AlgebraLaw, FiniteTshAlgebra,
};
use tsh_core::duality::complex_algebra;
use tsh_core::fixtures;
use tsh_core::frame::{enumerate_frames, involutions, quasi_orders};
use tsh_core::order::{is_upward_closed, Subset};

fn corpus() -> Vec<(String, FiniteTshAlgebra)> {
    let mut out = fixtures::algebra_corpus();
    for (i, k) in enumerate_frames(2, true).into_iter().enumerate() {
        out.push((format!("complex-{i}"), complex_algebra(&k).unwrap().algebra));
    }
    out
}

#[test]
fn corpus_members_are_tsh_algebras() {
    for (name, w) in corpus() {
        let report = validate_algebra(&w);
        assert!(report.is_empty(), "{name}: {report}");
    }
}

#[test]
fn prime_filters_match_brute_force_subsets() {
    for (name, w) in corpus() {
        let fast = prime_filters(&w).unwrap();
        assert_eq!(fast, prime_filters_by_upsets(&w).unwrap(), "{name}");
        if w.size() > 6 {
            continue;
        }
        let n = w.size();
        let brute: Vec<Subset> = (0..1u64 << n)
            .map(|b| Subset::from_bits(n, b).unwrap())
            .filter(|s| {
                let proper = !s.contains(w.bot());
                let filter = s.contains(w.top())
                    && is_upward_closed(w.leq(), s)
                    && s.members()
                        .all(|x| s.members().all(|y| s.contains(w.meet(x, y))));
                let prime = (0..n).all(|x| {
                    (0..n).all(|y| !s.contains(w.join(x, y)) || s.contains(x) || s.contains(y))
                });
                proper && filter && prime
            })
            .collect();
        let got: Vec<Subset> = fast.iter().map(|f| *f.members()).collect();
        assert_eq!(got, brute, "{name}");
        for f in &fast {
            assert!(is_prime_filter(&w, f.members()));
        }
    }
}

#[test]
fn tense_operators_are_monotone() {
    for (name, w) in corpus() {
        for (x, y) in w.leq().pairs() {
            assert!(w.le(w.g(x), w.g(y)), "{name}: G at {x} <= {y}");
            assert!(w.le(w.h(x), w.h(y)), "{name}: H at {x} <= {y}");
        }
    }
}

#[test]
fn boolean_members_are_tense_algebras() {
    let mut seen = 0;
    for (name, w) in corpus() {
        if !w.is_boolean() {
            continue;
        }
        seen += 1;
        // negation is the classical complement x -> 0
        for x in 0..w.size() {
            assert_eq!(w.neg(x), w.imp(x, w.bot()), "{name}");
        }
        assert!(validate_algebra(&w).is_empty(), "{name}");
    }
    assert!(seen >= 3);
}

/// Partial orders on `n` points that are Heyting (hence distributive) lattices.
fn distributive_lattices(n: usize) -> Vec<tsh_core::order::Relation> {
    quasi_orders(n)
        .into_iter()
        .filter(|r| r.is_antisymmetric() && derive_meet_join_imp(r).is_ok())
        .collect()
}

#[test]
fn antitone_involutions_are_de_morgan_on_small_distributive_lattices() {
    let mut checked = 0;
    for n in 1..=5 {
        for leq in distributive_lattices(n) {
            let ops = derive_meet_join_imp(&leq).unwrap();
            for neg in involutions(n) {
                let antitone = leq.pairs().all(|(x, y)| leq.contains(neg[y], neg[x]));
                let de_morgan =
                    (0..n).all(|x| (0..n).all(|y| neg[ops.meet[x][y]] == ops.join[neg[x]][neg[y]]));
                assert_eq!(antitone, de_morgan, "{leq:?} {neg:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn derived_implication_satisfies_residuation() {
    for n in 1..=5 {
        for leq in distributive_lattices(n) {
            let ops = derive_meet_join_imp(&leq).unwrap();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(
                            leq.contains(ops.meet[x][z], y),
                            leq.contains(z, ops.imp[x][y])
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn each_clause_is_detected() {
    let a3 = fixtures::a3();
    let cases: Vec<(FiniteTshAlgebra, AlgebraLaw)> = vec![
        (
            a3.with_tense(vec![0, 1, 0], vec![0, 1, 2]).unwrap(),
            AlgebraLaw::T1G,
        ),
        (
            a3.with_tense(vec![0, 1, 2], vec![0, 1, 1]).unwrap(),
            AlgebraLaw::T1H,
        ),
        // G swapping 0 and a is not meet-preserving
        (
            a3.with_tense(vec![1, 0, 2], vec![0, 1, 2]).unwrap(),
            AlgebraLaw::T2G,
        ),
        // G = constant bottom except at top breaks T3
        (
            a3.with_tense(vec![0, 0, 2], vec![0, 1, 2]).unwrap(),
            AlgebraLaw::T3G,
        ),
        (
            a3.with_tense(vec![0, 1, 2], vec![0, 0, 2]).unwrap(),
            AlgebraLaw::T3H,
        ),
        (
            a3.with_neg(vec![2, 0, 0]).unwrap(),
            AlgebraLaw::NegInvolution,
        ),
        (a3.with_neg(vec![0, 1, 2]).unwrap(), AlgebraLaw::NegAntitone),
    ];
    for (w, law) in cases {
        let report = validate_algebra(&w);
        assert!(report.violates(law), "{law:?} not reported: {report}");
    }

    let wrong_imp = FiniteTshAlgebra::new(
        a3.leq().clone(),
        vec![2, 1, 0],
        vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 0, 2]],
        vec![0, 1, 2],
        vec![0, 1, 2],
    )
    .unwrap();
    assert!(validate_algebra(&wrong_imp).violates(AlgebraLaw::Residuation));

    // a quasi-order is rejected on the order clauses alone
    let cluster = FiniteTshAlgebra::new(
        tsh_core::order::Relation::full(2).unwrap(),
        vec![1, 0],
        vec![vec![1, 1], vec![1, 1]],
        vec![0, 1],
        vec![0, 1],
    )
    .unwrap();
    let report = validate_algebra(&cluster);
    assert_eq!(report.witness(AlgebraLaw::Antisymmetric), Some(&[0, 1][..]));
    assert_eq!(report.len(), 1);
}
