//! The closed-form class counts against the enumeration oracle, across every
//! shape small enough to census outright.

use num_bigint::BigUint;
use torus_broadcast::counting::{class_count_factored, class_keys, class_table_oracle};
use torus_broadcast::torus::TorusShape;

fn grid(max_nodes: u64) -> Vec<TorusShape> {
    let mut shapes = Vec::new();
    for k in 3..=9u64 {
        for n in 1..=16u32 {
            match TorusShape::new(k, n) {
                Ok(s) if s.node_count() <= max_nodes as u128 => shapes.push(s),
                _ => break,
            }
        }
    }
    shapes
}

#[test]
fn factored_counts_match_the_census() {
    for s in grid(100_000) {
        let oracle = class_table_oracle(&s, 100_000).unwrap();
        assert_eq!(oracle.total(), s.node_count() - 1, "{s}");
        let keys = class_keys(&s);
        assert_eq!(
            keys,
            oracle.entries().map(|(k, _)| k.clone()).collect::<Vec<_>>(),
            "{s}: key generator and census must list the same classes"
        );
        for (key, observed) in oracle.entries() {
            assert_eq!(
                class_count_factored(&s, key),
                BigUint::from(observed),
                "{s} class {key}"
            );
        }
    }
}

#[test]
fn factored_counts_partition_all_nodes() {
    // Also beyond census reach: the closed forms must sum to k^n - 1.
    for (k, n) in [(3u64, 12u32), (7, 8), (11, 5), (101, 3), (1000, 2), (1001, 2)] {
        let s = TorusShape::new(k, n).unwrap();
        let sum: BigUint = class_keys(&s)
            .iter()
            .map(|key| class_count_factored(&s, key))
            .sum();
        assert_eq!(sum, BigUint::from(s.node_count() - 1), "{s}");
    }
}

#[test]
fn sphere_sizes_are_class_sums() {
    for s in grid(10_000) {
        let oracle = class_table_oracle(&s, 10_000).unwrap();
        for t in 1..=s.diameter() {
            let by_class: u64 = oracle
                .entries()
                .filter(|(key, _)| key.t == t)
                .map(|(_, c)| c)
                .sum();
            assert_eq!(by_class as usize, s.sphere(t).unwrap().len(), "{s} t={t}");
        }
    }
}
