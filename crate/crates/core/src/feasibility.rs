//! Three independent answers to one question: does the shape admit an
//! optimal all-port all-to-all broadcast, i.e. one finishing in diameter
//! steps with every link equally loaded at every step?
//!
//! The necessary and sufficient condition is that `2n` divides every class
//! size. [`divisibility_report`] checks that against the brute-force census;
//! [`analytic_feasible`] checks it through the factorization without
//! enumerating nodes; [`theorem_predicate`] is the closed form the other two
//! must reproduce: feasible exactly when n is a power of two and k is odd.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::counting::{class_table_oracle, sign_multiplicity};
use crate::numtheory::{binomial, is_power_of_two};
use crate::torus::{BudgetError, ClassKey, TorusShape};

/// A class whose size the link count `2n` fails to divide.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DivisibilityWitness {
    pub t: u64,
    pub p: u32,
    pub v: u64,
    pub count: u64,
    pub divisor: u64,
}

impl DivisibilityWitness {
    pub fn key(&self) -> ClassKey {
        ClassKey {
            t: self.t,
            p: self.p,
            v: self.v,
        }
    }
}

/// Verdicts of all three deciders plus every violated class, smallest
/// `(t, p, v)` first. The three verdicts must agree; disagreement means a
/// defect in one of the paths, not a property of the shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeasibilityReport {
    pub k: u64,
    pub n: u32,
    pub brute: bool,
    pub analytic: bool,
    pub theorem: bool,
    pub witnesses: Vec<DivisibilityWitness>,
}

impl FeasibilityReport {
    pub fn agree(&self) -> bool {
        self.brute == self.analytic && self.analytic == self.theorem
    }
}

/// Brute-force divisibility check over the full class census.
pub fn divisibility_report(
    shape: &TorusShape,
    max_nodes: u64,
) -> Result<FeasibilityReport, BudgetError> {
    let table = class_table_oracle(shape, max_nodes)?;
    let divisor = shape.degree();
    let witnesses: Vec<DivisibilityWitness> = table
        .entries()
        .filter(|(_, count)| count % divisor != 0)
        .map(|(key, count)| DivisibilityWitness {
            t: key.t,
            p: key.p,
            v: key.v,
            count,
            divisor,
        })
        .collect();
    Ok(FeasibilityReport {
        k: shape.k(),
        n: shape.n(),
        brute: witnesses.is_empty(),
        analytic: analytic_feasible(shape),
        theorem: theorem_predicate(shape),
        witnesses,
    })
}

/// Divisibility of every class size by `2n`, decided through the
/// factorization alone.
///
/// Within a `(p, v)` family the class size is `G * C(n,p) * N(t)` with the
/// `t`-independent part `G = sign^p * 2^(n-p)` for odd k and `G = sign^p`
/// for even k. The quadrant factor `N(t)` is a positive integer throughout
/// the family and equals 1 at one floor: the extremal `t = n(v+1) - p` for
/// odd k, the boundary-saturated `t = p*v + (n-p)*k/2` for even k. Hence
/// `2n | G * C(n,p)` at the floor implies divisibility of every class in the
/// family, and failure at the floor is itself a violated class. Families
/// with interior `v` all share the same `G`, so only the representatives
/// `v` in `{0, 1, floor(k/2)}` need inspection, keeping the whole decision
/// `O(n)` regardless of k.
pub fn analytic_feasible(shape: &TorusShape) -> bool {
    let n = shape.n();
    let half = shape.half();
    let two_n = BigUint::from(shape.degree());
    let mut reps = vec![0u64];
    if half >= 1 {
        reps.push(1);
        reps.push(half);
    }
    reps.dedup();
    for v in reps {
        for p in 1..=n {
            // A (p, v) family is populated for some t >= 1 iff v >= 1 when
            // all axes are pinned, or the free axes can sit above v.
            let populated = if p == n { v >= 1 } else { v + 1 <= half };
            if !populated {
                continue;
            }
            let mut count = binomial(n as u64, p as u64);
            count *= BigUint::from(sign_multiplicity(v, shape)).pow(p);
            if !shape.even_k() {
                count *= BigUint::from(2u64).pow(n - p);
            }
            if !count.is_multiple_of(&two_n) {
                return false;
            }
        }
    }
    true
}

/// The closed form: feasible iff `n` is a power of two and `k` is odd.
pub fn theorem_predicate(shape: &TorusShape) -> bool {
    shape.k() % 2 == 1 && is_power_of_two(shape.n() as u64)
}

/// One cell of a cross-validation grid.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GridCell {
    pub k: u64,
    pub n: u32,
    pub nodes: u128,
    pub brute: bool,
    pub analytic: bool,
    pub theorem: bool,
    pub first_witness: Option<DivisibilityWitness>,
}

impl GridCell {
    pub fn agree(&self) -> bool {
        self.brute == self.analytic && self.analytic == self.theorem
    }

    pub fn feasible(&self) -> bool {
        self.agree() && self.brute
    }
}

/// All three predicates across a grid of shapes, in `(k, n)` order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GridReport {
    pub budget: u64,
    pub cells: Vec<GridCell>,
}

impl GridReport {
    pub fn all_agree(&self) -> bool {
        self.cells.iter().all(GridCell::agree)
    }

    pub fn disagreements(&self) -> Vec<&GridCell> {
        self.cells.iter().filter(|c| !c.agree()).collect()
    }

    pub fn feasible_cells(&self) -> Vec<(u64, u32)> {
        self.cells
            .iter()
            .filter(|c| c.feasible())
            .map(|c| (c.k, c.n))
            .collect()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("k,n,nodes,brute,analytic,theorem,first_witness\n");
        for c in &self.cells {
            let witness = c
                .first_witness
                .map(|w| format!("t={};p={};v={}", w.t, w.p, w.v))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.k, c.n, c.nodes, c.brute, c.analytic, c.theorem, witness
            ));
        }
        out
    }
}

/// Runs all three predicates on every in-budget cell of the grid. Cells with
/// `k^n` above `max_nodes` (where the census is off the table) and cells that
/// are not valid shapes are skipped.
pub fn cross_validate(
    k_range: std::ops::RangeInclusive<u64>,
    n_range: std::ops::RangeInclusive<u32>,
    max_nodes: u64,
) -> GridReport {
    let mut cells = Vec::new();
    for k in k_range {
        for n in n_range.clone() {
            let Ok(shape) = TorusShape::new(k, n) else {
                continue;
            };
            if shape.check_budget(max_nodes).is_err() {
                continue;
            }
            let report = divisibility_report(&shape, max_nodes)
                .expect("budget checked above");
            cells.push(GridCell {
                k,
                n,
                nodes: shape.node_count(),
                brute: report.brute,
                analytic: report.analytic,
                theorem: report.theorem,
                first_witness: report.witnesses.first().copied(),
            });
        }
    }
    cells.sort_by_key(|c| (c.k, c.n));
    GridReport {
        budget: max_nodes,
        cells,
    }
}
