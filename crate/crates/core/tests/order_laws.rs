use proptest::prelude::*;
use tsh_core::frame::quasi_orders;
use tsh_core::order::{
    box_op, compose, is_quasi_order, is_upward_closed, upsets, Relation, Subset,
};

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    proptest::collection::vec(any::<u64>(), n).prop_map(move |rows| {
        let mask = (1u64 << n) - 1;
        Relation::from_rows(n, rows.into_iter().map(|r| r & mask).collect()).unwrap()
    })
}

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    any::<u64>().prop_map(move |b| Subset::from_bits(n, b & ((1 << n) - 1)).unwrap())
}

fn sized() -> impl Strategy<Value = (Relation, Subset, Subset)> {
    (1usize..=6).prop_flat_map(|n| (relation(n), subset(n), subset(n)))
}

proptest! {
    #[test]
    fn box_of_reflexive_relation_shrinks((rel, a, _) in sized()) {
        let refl = rel.closure();
        prop_assert!(box_op(&refl, &a).unwrap().is_subset_of(&a));
    }

    #[test]
    fn box_is_monotone((rel, a, b) in sized()) {
        let small = a.intersection(&b);
        prop_assert!(box_op(&rel, &small).unwrap().is_subset_of(&box_op(&rel, &a).unwrap()));
    }

    #[test]
    fn box_distributes_over_intersection((rel, a, b) in sized()) {
        let lhs = box_op(&rel, &a.intersection(&b)).unwrap();
        let rhs = box_op(&rel, &a).unwrap().intersection(&box_op(&rel, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_matches_definition((r1, _, _) in sized(), seed in any::<u64>()) {
        let n = r1.size();
        let rows: Vec<u64> = (0..n).map(|i| seed.rotate_left(i as u32 * 7) & ((1 << n) - 1)).collect();
        let r2 = Relation::from_rows(n, rows).unwrap();
        let c = compose(&r1, &r2).unwrap();
        for x in 0..n {
            for z in 0..n {
                let expected = (0..n).any(|y| r1.contains(x, y) && r2.contains(y, z));
                prop_assert_eq!(c.contains(x, z), expected);
            }
        }
    }
}

#[test]
fn box_stability_is_upward_closure_on_small_quasi_orders() {
    for n in 1..=4 {
        for leq in quasi_orders(n) {
            assert!(is_quasi_order(&leq));
            for bits in 0..1u64 << n {
                let a = Subset::from_bits(n, bits).unwrap();
                assert_eq!(
                    box_op(&leq, &a).unwrap() == a,
                    is_upward_closed(&leq, &a),
                    "{leq:?} {a:?}"
                );
            }
        }
    }
}

#[test]
fn upsets_match_brute_force() {
    for n in 1..=4 {
        for leq in quasi_orders(n) {
            let brute: Vec<Subset> = (0..1u64 << n)
                .map(|b| Subset::from_bits(n, b).unwrap())
                .filter(|a| is_upward_closed(&leq, a))
                .collect();
            assert_eq!(upsets(&leq), brute, "{leq:?}");
        }
    }
}

#[test]
fn quasi_orders_match_brute_force() {
    for n in 1..=3 {
        let brute = (0..1u64 << (n * n))
            .map(|m| Relation::from_fn(n, |x, y| m >> (x * n + y) & 1 == 1).unwrap())
            .filter(is_quasi_order)
            .count();
        assert_eq!(quasi_orders(n).len(), brute);
    }
}
