//! The three feasibility deciders against each other across the full small
//! grid, plus the structural consequences feasibility promises.

use torus_broadcast::feasibility::{cross_validate, divisibility_report, theorem_predicate};
use torus_broadcast::torus::TorusShape;

#[test]
fn deciders_agree_on_the_grid() {
    let report = cross_validate(3..=9, 1..=8, 100_000);
    assert!(
        report.all_agree(),
        "disagreeing cells: {:?}",
        report.disagreements()
    );
    // Feasible exactly at odd arity and power-of-two dimension.
    let expected: Vec<(u64, u32)> = (3..=9u64)
        .flat_map(|k| [1u32, 2, 4, 8].map(|n| (k, n)))
        .filter(|&(k, n)| k % 2 == 1 && (k as u128).pow(n) <= 100_000)
        .collect();
    let mut expected = expected;
    expected.sort_unstable();
    assert_eq!(report.feasible_cells(), expected);
}

#[test]
fn infeasible_cells_carry_a_witness() {
    let report = cross_validate(3..=9, 1..=8, 100_000);
    for cell in &report.cells {
        if cell.feasible() {
            assert_eq!(cell.first_witness, None, "k={} n={}", cell.k, cell.n);
        } else {
            let w = cell
                .first_witness
                .as_ref()
                .unwrap_or_else(|| panic!("k={} n={} lacks a witness", cell.k, cell.n));
            assert_ne!(w.count % w.divisor, 0);
            assert_eq!(w.divisor, 2 * cell.n as u64);
        }
    }
}

#[test]
fn feasibility_forces_divisible_spheres() {
    // A balanced schedule needs every sphere to split across 2n directions;
    // every feasible grid shape must satisfy that, and every infeasible one
    // small enough to enumerate must break it at some radius.
    for k in 3..=9u64 {
        for n in 1..=8u32 {
            let Ok(s) = TorusShape::new(k, n) else { continue };
            if s.node_count() > 10_000 {
                continue;
            }
            let feasible = theorem_predicate(&s);
            let mut all_divisible = true;
            for t in 1..=s.diameter() {
                let size = s.sphere(t).unwrap().len() as u64;
                if size % s.degree() != 0 {
                    all_divisible = false;
                }
            }
            assert_eq!(all_divisible, feasible, "{s}");
        }
    }
}

#[test]
fn even_arity_always_fails_at_the_antipode() {
    // The witness structure of even k: the single all-antipodal node forms a
    // class of size 1 (or a power of 2 below 2n when mixed), never divisible.
    for k in [4u64, 6, 8, 10] {
        for n in 1..=3u32 {
            let s = TorusShape::new(k, n).unwrap();
            if s.node_count() > 100_000 {
                continue;
            }
            let report = divisibility_report(&s, 100_000).unwrap();
            assert!(!report.brute, "{s}");
            assert!(report
                .witnesses
                .iter()
                .any(|w| w.v == s.half() || w.v == 0), "{s}");
        }
    }
}

#[test]
fn analytic_handles_shapes_far_beyond_enumeration() {
    for (k, n, expected) in [
        (1_000_003u64, 4u32, true),
        (1_000_003, 6, false),
        (1_000_000, 4, false),
        (65_535, 4, true),
        (255, 16, true),
        (245, 12, false),
    ] {
        let s = TorusShape::new(k, n).unwrap();
        assert_eq!(
            torus_broadcast::analytic_feasible(&s),
            expected,
            "{s}"
        );
        assert_eq!(theorem_predicate(&s), expected, "{s}");
    }
}
