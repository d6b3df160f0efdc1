//! Optimal all-port all-to-all broadcast on k-ary n-dimensional tori.
//!
//! In a k-ary n-dimensional torus where every node can use all `2n` of its
//! links simultaneously, an all-to-all broadcast needs at least
//! `n * floor(k/2)` steps, and that bound is achievable exactly when every
//! distance sphere around a node splits evenly across the `2n` directions.
//! This crate decides achievability three independent ways and constructs
//! and checks the schedules themselves:
//!
//! * [`feasibility::divisibility_report`] enumerates symmetry classes of
//!   nodes and tests each class count for divisibility by `2n` (the brute
//!   force path, exact but bounded by a node budget);
//! * [`feasibility::analytic_feasible`] evaluates closed-form class counts
//!   at the handful of extremal classes that decide the question, which
//!   works for arbitrarily large tori;
//! * [`feasibility::theorem_predicate`] is the closed characterization the
//!   other two must agree with: feasible iff `k` is odd and `n` is a power
//!   of two.
//!
//! [`schedule::build_balanced_tree`] turns a feasible shape into a concrete
//! schedule, represented as a translation-invariant routing tree, and
//! [`schedule::verify_schedule`] replays it message by message to confirm
//! optimality.
//!
//! [`counting`] exposes the class census and its closed-form factorization,
//! and [`numtheory`] the digit-sum and carry machinery behind the analytic
//! path.

pub mod counting;
pub mod feasibility;
pub mod numtheory;
pub mod schedule;
pub mod torus;

pub use counting::{class_count_factored, class_table_oracle, ClassTable};
pub use feasibility::{
    analytic_feasible, cross_validate, divisibility_report, theorem_predicate, FeasibilityReport,
    GridReport,
};
pub use schedule::{build_balanced_tree, simulate, verify_schedule, RoutingTree};
pub use torus::{ClassKey, Direction, NodeCoord, Sign, TorusShape, DEFAULT_NODE_BUDGET};
