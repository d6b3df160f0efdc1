//! Store-and-forward simulation of a routing tree and verification of the
//! schedule it induces.
//!
//! The schedule is the tree translated to every source: at step `t` each
//! source's item crosses from the parent of every distance-`t` offset into
//! that offset. The simulator replays this literally, tracking which items
//! each node holds, and checks the three properties a correct schedule must
//! have: nobody receives an item twice, every item travels a shortest path
//! (the sender already holds it and arrival happens at step equal to the
//! distance), and within each step all physical links carry the same number
//! of items.
//!
//! Memory is quadratic in the node count (one bit per node/item pair), so
//! budgets well below [`crate::torus::DEFAULT_NODE_BUDGET`] are advisable
//! for simulation.

use serde::Serialize;
use std::fmt;

use crate::torus::{BudgetError, Direction, NodeCoord, TorusShape};

use super::tree::RoutingTree;

/// One item crossing one link, reported to observers in deterministic order
/// (steps ascending, offsets lexicographic, sources by node index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferRecord {
    pub step: u64,
    /// Node index of the sender.
    pub from: u64,
    /// Node index of the receiver.
    pub to: u64,
    /// Node index of the item's source.
    pub item: u64,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A node received an item it already held.
    Duplicate { step: u64, node: u64, item: u64 },
    /// A sender was scheduled to forward an item it did not hold.
    SenderWithoutItem { step: u64, sender: u64, item: u64 },
    /// After the last step a node still lacks an item.
    MissingItem { node: u64, item: u64 },
    /// Links carried unequal loads within one step.
    UnbalancedStep {
        step: u64,
        min_load: u64,
        max_load: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Duplicate { step, node, item } => {
                write!(f, "step {step}: node {node} received item {item} twice")
            }
            Violation::SenderWithoutItem { step, sender, item } => {
                write!(f, "step {step}: node {sender} lacks item {item} it must forward")
            }
            Violation::MissingItem { node, item } => {
                write!(f, "node {node} never received item {item}")
            }
            Violation::UnbalancedStep {
                step,
                min_load,
                max_load,
            } => {
                write!(
                    f,
                    "step {step}: link loads range from {min_load} to {max_load}"
                )
            }
        }
    }
}

/// Outcome of replaying a schedule.
#[derive(Debug, Clone)]
pub struct SimulationReport {
    steps: u64,
    node_count: u64,
    deliveries: u64,
    complete: bool,
    received: BitGrid,
}

impl SimulationReport {
    /// Number of steps replayed, `n * floor(k/2)`.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn node_count(&self) -> u64 {
        self.node_count
    }

    /// Total items moved across links.
    pub fn deliveries(&self) -> u64 {
        self.deliveries
    }

    /// True when every node ended up holding every item.
    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Whether `node` holds `item` after the replay (node indices).
    pub fn holds(&self, node: u64, item: u64) -> bool {
        self.received.get(node, item)
    }
}

/// Checked properties of a schedule, with capped violation samples.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub steps: u64,
    pub deliveries: u64,
    pub complete: bool,
    pub nodup_ok: bool,
    pub shortest_ok: bool,
    pub balance_ok: bool,
    /// Total number of violations found.
    pub violation_count: u64,
    /// At most [`MAX_VIOLATION_SAMPLES`] concrete violations.
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.complete && self.nodup_ok && self.shortest_ok && self.balance_ok
    }
}

/// Cap on the violation samples retained in a [`VerificationReport`].
pub const MAX_VIOLATION_SAMPLES: usize = 64;

/// Replays the schedule without an observer.
pub fn simulate(tree: &RoutingTree, max_nodes: u64) -> Result<SimulationReport, BudgetError> {
    let (sim, _) = run(tree, max_nodes, |_| {})?;
    Ok(sim)
}

/// Replays the schedule, reporting every transfer to `observer`.
pub fn simulate_with(
    tree: &RoutingTree,
    max_nodes: u64,
    observer: impl FnMut(&TransferRecord),
) -> Result<SimulationReport, BudgetError> {
    let (sim, _) = run(tree, max_nodes, observer)?;
    Ok(sim)
}

/// Replays the schedule and checks no-duplicate, shortest-path and balance.
pub fn verify_schedule(
    tree: &RoutingTree,
    max_nodes: u64,
) -> Result<VerificationReport, BudgetError> {
    let (_, report) = run(tree, max_nodes, |_| {})?;
    Ok(report)
}

fn run(
    tree: &RoutingTree,
    max_nodes: u64,
    mut observer: impl FnMut(&TransferRecord),
) -> Result<(SimulationReport, VerificationReport), BudgetError> {
    let shape = tree.shape();
    let node_count = shape.check_budget(max_nodes)?;
    let degree = shape.degree() as usize;
    let steps = shape.diameter();

    // Every pair starts unreceived except each node's own item.
    let mut received = BitGrid::new(node_count);
    for x in 0..node_count {
        received.set(x, x);
    }
    let mut received_count = node_count as u128;

    // Bucket tree entries by distance; lexicographic order within a level.
    let mut levels: Vec<Vec<(&NodeCoord, Direction)>> = vec![Vec::new(); steps as usize];
    for (offset, direction) in tree.entries() {
        let t = shape.norm(offset).expect("validated");
        levels[t as usize - 1].push((offset, direction));
    }

    let mut violations = Vec::new();
    let mut violation_count: u64 = 0;
    let note = |violations: &mut Vec<Violation>, count: &mut u64, v: Violation| {
        *count += 1;
        if violations.len() < MAX_VIOLATION_SAMPLES {
            violations.push(v);
        }
    };

    let mut deliveries: u64 = 0;
    let mut duplicates: u64 = 0;
    let mut senders_without_item: u64 = 0;
    let mut balance_ok = true;
    let mut link_counts = vec![0u64; node_count as usize * degree];

    for (level, entries) in levels.iter().enumerate() {
        let step = level as u64 + 1;
        link_counts.fill(0);
        for &(offset, direction) in entries {
            let parent = tree.parent(offset).expect("entry exists");
            let to_table = Translator::new(&shape, offset);
            let from_table = Translator::new(&shape, &parent);
            let mut digits = vec![0u64; shape.n() as usize];
            for item in 0..node_count {
                let from = from_table.apply(&digits);
                let to = to_table.apply(&digits);
                if !received.get(from, item) {
                    senders_without_item += 1;
                    note(
                        &mut violations,
                        &mut violation_count,
                        Violation::SenderWithoutItem {
                            step,
                            sender: from,
                            item,
                        },
                    );
                } else {
                    observer(&TransferRecord {
                        step,
                        from,
                        to,
                        item,
                        direction,
                    });
                    deliveries += 1;
                    link_counts[from as usize * degree + direction.index()] += 1;
                    if received.get(to, item) {
                        duplicates += 1;
                        note(
                            &mut violations,
                            &mut violation_count,
                            Violation::Duplicate {
                                step,
                                node: to,
                                item,
                            },
                        );
                    } else {
                        received.set(to, item);
                        received_count += 1;
                    }
                }
                advance(&mut digits, shape.k());
            }
        }
        let min_load = *link_counts.iter().min().expect("degree >= 2");
        let max_load = *link_counts.iter().max().expect("degree >= 2");
        if min_load != max_load {
            balance_ok = false;
            note(
                &mut violations,
                &mut violation_count,
                Violation::UnbalancedStep {
                    step,
                    min_load,
                    max_load,
                },
            );
        }
    }

    let total_pairs = node_count as u128 * node_count as u128;
    let complete = received_count == total_pairs;
    if !complete {
        'scan: for node in 0..node_count {
            for item in 0..node_count {
                if !received.get(node, item) {
                    note(
                        &mut violations,
                        &mut violation_count,
                        Violation::MissingItem { node, item },
                    );
                    if violations.len() >= MAX_VIOLATION_SAMPLES {
                        break 'scan;
                    }
                }
            }
        }
    }

    let report = VerificationReport {
        steps,
        deliveries,
        complete,
        nodup_ok: duplicates == 0,
        shortest_ok: senders_without_item == 0 && complete,
        balance_ok,
        violation_count,
        violations,
    };
    let sim = SimulationReport {
        steps,
        node_count,
        deliveries,
        complete,
        received,
    };
    Ok((sim, report))
}

/// Node index of `source + offset` as a table lookup per axis digit.
///
/// Axis `i` contributes `((digit + offset_i) mod k) * k^i` to the index, so
/// translating every source by a fixed offset costs `n` lookups instead of
/// coordinate arithmetic.
struct Translator {
    tables: Vec<Vec<u64>>,
}

impl Translator {
    fn new(shape: &TorusShape, offset: &NodeCoord) -> Self {
        let k = shape.k();
        let mut stride: u64 = 1;
        let tables = offset
            .coords()
            .iter()
            .map(|&c| {
                let residue = (c as i128).rem_euclid(k as i128) as u64;
                let table: Vec<u64> = (0..k).map(|d| (d + residue) % k * stride).collect();
                stride *= k;
                table
            })
            .collect();
        Translator { tables }
    }

    fn apply(&self, digits: &[u64]) -> u64 {
        self.tables
            .iter()
            .zip(digits)
            .map(|(table, &d)| table[d as usize])
            .sum()
    }
}

/// Increments a little-endian base-`k` digit vector.
fn advance(digits: &mut [u64], k: u64) {
    for d in digits {
        *d += 1;
        if *d < k {
            return;
        }
        *d = 0;
    }
}

#[derive(Debug, Clone)]
struct BitGrid {
    side: u64,
    words: Vec<u64>,
}

impl BitGrid {
    fn new(side: u64) -> Self {
        let bits = side as u128 * side as u128;
        let words = (bits + 63) / 64;
        assert!(
            words <= usize::MAX as u128 / 8,
            "node/item grid of {side}^2 bits exceeds addressable memory"
        );
        BitGrid {
            side,
            words: vec![0; words as usize],
        }
    }

    fn get(&self, node: u64, item: u64) -> bool {
        let bit = node * self.side + item;
        self.words[(bit / 64) as usize] >> (bit % 64) & 1 == 1
    }

    fn set(&mut self, node: u64, item: u64) {
        let bit = node * self.side + item;
        self.words[(bit / 64) as usize] |= 1 << (bit % 64);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::build::build_balanced_tree;
    use crate::schedule::tree::link_loads;
    use crate::torus::{Sign, DEFAULT_NODE_BUDGET};
    use std::collections::BTreeMap;

    fn shape(k: u64, n: u32) -> TorusShape {
        TorusShape::new(k, n).unwrap()
    }

    fn balanced(k: u64, n: u32) -> RoutingTree {
        build_balanced_tree(&shape(k, n), DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn simulate_5_2_completes_at_the_diameter() {
        let report = simulate(&balanced(5, 2), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(report.steps(), 4);
        assert!(report.complete());
        assert_eq!(report.deliveries(), 25 * 24);
        assert!(report.holds(0, 24));
        assert!(report.holds(24, 0));
    }

    #[test]
    fn verify_balanced_tree() {
        let report = verify_schedule(&balanced(5, 2), DEFAULT_NODE_BUDGET).unwrap();
        assert!(report.all_ok());
        assert_eq!(report.violation_count, 0);
        assert!(report.violations.is_empty());
        assert_eq!(report.steps, 4);
        assert_eq!(report.deliveries, 25 * 24);
    }

    #[test]
    fn unbalanced_tree_flagged_with_step() {
        // Valid tree, but every distance-2 offset arrives on axis 1.
        let s = shape(3, 2);
        let mut arrivals = BTreeMap::new();
        for x in s.nodes() {
            if x.is_reference() {
                continue;
            }
            let c = x.coords();
            let d = if c[0] > 0 {
                Direction::new(&s, 1, Sign::Plus).unwrap()
            } else if c[0] < 0 {
                Direction::new(&s, 1, Sign::Minus).unwrap()
            } else if c[1] > 0 {
                Direction::new(&s, 2, Sign::Plus).unwrap()
            } else {
                Direction::new(&s, 2, Sign::Minus).unwrap()
            };
            arrivals.insert(x, d);
        }
        let tree = RoutingTree::from_arrivals(s, arrivals, DEFAULT_NODE_BUDGET).unwrap();
        let report = verify_schedule(&tree, DEFAULT_NODE_BUDGET).unwrap();
        // Still a spanning tree of shortest paths, so delivery is intact.
        assert!(report.complete);
        assert!(report.nodup_ok);
        assert!(report.shortest_ok);
        assert!(!report.balance_ok);
        assert!(!report.all_ok());
        assert_eq!(
            report.violations,
            vec![Violation::UnbalancedStep {
                step: 2,
                min_load: 0,
                max_load: 2,
            }]
        );
    }

    #[test]
    fn observer_sees_every_delivery_in_order() {
        let tree = balanced(3, 2);
        let mut records = Vec::new();
        let report = simulate_with(&tree, DEFAULT_NODE_BUDGET, |r| records.push(*r)).unwrap();
        assert_eq!(records.len() as u64, report.deliveries());
        assert_eq!(records.len(), 9 * 8);
        // Steps never decrease and every record respects the tree's arrival.
        for pair in records.windows(2) {
            assert!(pair[0].step <= pair[1].step);
        }
        let s = tree.shape();
        for r in &records {
            let from = s.node_from_index(r.from);
            let to = s.node_from_index(r.to);
            assert_eq!(s.step(&from, r.direction).unwrap(), to);
            assert_eq!(s.distance(&s.node_from_index(r.item), &to).unwrap(), r.step);
        }
    }

    #[test]
    fn physical_link_loads_match_the_profile() {
        // Counts transfers per (step, sender, direction) and compares with
        // the per-direction tree profile, which translation invariance says
        // every link must realize exactly.
        let tree = balanced(5, 2);
        let profile = link_loads(&tree);
        let s = tree.shape();
        let degree = s.degree() as usize;
        let nodes = s.node_count() as usize;
        let mut counts = vec![0u64; 4 * nodes * degree];
        simulate_with(&tree, DEFAULT_NODE_BUDGET, |r| {
            let idx = ((r.step as usize - 1) * nodes + r.from as usize) * degree
                + r.direction.index();
            counts[idx] += 1;
        })
        .unwrap();
        for step in 1..=4u64 {
            let expected = profile.loads(step);
            for node in 0..nodes {
                for d in 0..degree {
                    let idx = ((step as usize - 1) * nodes + node) * degree + d;
                    assert_eq!(
                        counts[idx], expected[d],
                        "step {step} node {node} direction {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn budget_refused() {
        let tree = balanced(3, 2);
        assert!(matches!(simulate(&tree, 4), Err(BudgetError { .. })));
    }
}
