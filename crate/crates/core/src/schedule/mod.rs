//! Construction, serialization, simulation and verification of optimal
//! all-to-all broadcast schedules.
//!
//! A schedule is represented by a translation-invariant [`RoutingTree`]:
//! every nonzero offset is annotated with the direction of its last hop, and
//! the same tree, shifted to each source node, tells every item how to reach
//! every destination. [`build_balanced_tree`] constructs a tree whose steps
//! load all links equally whenever one exists, [`simulate`] replays the
//! induced schedule message by message, and [`verify_schedule`] checks the
//! no-duplicate, shortest-path and balance properties of the replay.

mod build;
mod file;
mod sim;
mod tree;

pub use build::{
    admissible_directions, build_balanced_tree, build_balanced_tree_with,
    nearest_axis_directions, BuildError, InfeasibleWitness, Strategy,
};
pub use file::{from_json_str, to_json_string, ScheduleFileError};
pub use sim::{
    simulate, simulate_with, verify_schedule, SimulationReport, TransferRecord,
    VerificationReport, Violation, MAX_VIOLATION_SAMPLES,
};
pub use tree::{link_loads, LinkLoadProfile, RoutingTree, TreeError};
