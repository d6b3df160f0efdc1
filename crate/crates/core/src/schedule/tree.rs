//! Translation-invariant routing trees.
//!
//! A routing tree fixes, for every nonzero offset, the direction of the last
//! hop an item takes into a node at that offset from the item's source. The
//! parent of an offset is one unit step back along that direction; validity
//! means every parent is strictly closer to the reference, which makes the
//! arrival map a spanning tree rooted there. Translating the tree to each
//! source node yields the full all-to-all schedule.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::torus::{BudgetError, Direction, NodeCoord, TorusShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("missing offset {offset}")]
    MissingOffset { offset: NodeCoord },
    #[error("offset {offset} has {got} coordinates, shape has dimension {expected}")]
    Dimension {
        offset: NodeCoord,
        expected: u32,
        got: usize,
    },
    #[error("the reference node cannot carry an arrival direction")]
    ReferenceEntry,
    #[error("offset {offset}: axis {axis} out of range 1..={n}")]
    BadAxis { offset: NodeCoord, axis: u32, n: u32 },
    #[error("offset {offset}: arrival {direction} does not step back towards the reference")]
    NotDecreasing {
        offset: NodeCoord,
        direction: Direction,
    },
}

/// Arrival directions for every nonzero offset of a shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RoutingTree {
    shape: TorusShape,
    arrivals: BTreeMap<NodeCoord, Direction>,
}

impl RoutingTree {
    /// Validates and adopts an arrival map: exactly the `k^n - 1` nonzero
    /// offsets, each with an axis in range and a parent one step closer to
    /// the reference. `max_nodes` gates the completeness sweep.
    pub fn from_arrivals(
        shape: TorusShape,
        arrivals: BTreeMap<NodeCoord, Direction>,
        max_nodes: u64,
    ) -> Result<Self, TreeError> {
        shape.check_budget(max_nodes)?;
        for (offset, &direction) in &arrivals {
            if offset.coords().len() != shape.n() as usize {
                return Err(TreeError::Dimension {
                    offset: offset.clone(),
                    expected: shape.n(),
                    got: offset.coords().len(),
                });
            }
            if offset.is_reference() {
                return Err(TreeError::ReferenceEntry);
            }
            if direction.axis() == 0 || direction.axis() > shape.n() {
                return Err(TreeError::BadAxis {
                    offset: offset.clone(),
                    axis: direction.axis(),
                    n: shape.n(),
                });
            }
            let parent = shape
                .step(offset, direction.opposite())
                .expect("axis validated");
            let d_offset = shape.norm(offset).expect("dimension validated");
            let d_parent = shape.norm(&parent).expect("dimension validated");
            if d_parent + 1 != d_offset {
                return Err(TreeError::NotDecreasing {
                    offset: offset.clone(),
                    direction,
                });
            }
        }
        // Keys are distinct canonical nonzero offsets, of which there are
        // exactly k^n - 1; a count match therefore proves completeness.
        if arrivals.len() as u128 != shape.node_count() - 1 {
            let missing = shape
                .nodes()
                .find(|x| !x.is_reference() && !arrivals.contains_key(x))
                .expect("count mismatch implies a missing offset");
            return Err(TreeError::MissingOffset { offset: missing });
        }
        Ok(RoutingTree { shape, arrivals })
    }

    pub fn shape(&self) -> TorusShape {
        self.shape
    }

    pub fn arrival(&self, offset: &NodeCoord) -> Option<Direction> {
        self.arrivals.get(offset).copied()
    }

    /// The offset one step back along the arrival direction.
    pub fn parent(&self, offset: &NodeCoord) -> Option<NodeCoord> {
        let direction = self.arrival(offset)?;
        Some(
            self.shape
                .step(offset, direction.opposite())
                .expect("validated on construction"),
        )
    }

    /// Entries in lexicographic offset order.
    pub fn entries(&self) -> impl Iterator<Item = (&NodeCoord, Direction)> {
        self.arrivals.iter().map(|(off, &dir)| (off, dir))
    }

    pub fn len(&self) -> u64 {
        self.arrivals.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }
}

/// Arrivals per step and direction: `loads(t)[d]` is the number of offsets
/// at distance `t` whose arrival direction has dense index `d`, which by
/// translation invariance is also the load every single link of that
/// direction carries at step `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkLoadProfile {
    degree: u64,
    steps: Vec<Vec<u64>>,
}

impl LinkLoadProfile {
    /// Per-direction loads at step `t` (1-based).
    pub fn loads(&self, t: u64) -> &[u64] {
        &self.steps[t as usize - 1]
    }

    pub fn steps(&self) -> impl Iterator<Item = (u64, &[u64])> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, loads)| (i as u64 + 1, loads.as_slice()))
    }

    pub fn step_count(&self) -> u64 {
        self.steps.len() as u64
    }

    /// True when every step loads all directions equally.
    pub fn balanced(&self) -> bool {
        self.steps
            .iter()
            .all(|loads| loads.iter().all(|&l| l == loads[0]))
    }

    /// The common per-direction load of each step, if balanced.
    pub fn uniform_loads(&self) -> Option<Vec<u64>> {
        self.balanced()
            .then(|| self.steps.iter().map(|loads| loads[0]).collect())
    }
}

/// Tallies a tree's arrivals by step and direction.
pub fn link_loads(tree: &RoutingTree) -> LinkLoadProfile {
    let shape = tree.shape();
    let degree = shape.degree();
    let mut steps = vec![vec![0u64; degree as usize]; shape.diameter() as usize];
    for (offset, direction) in tree.entries() {
        let t = shape.norm(offset).expect("validated");
        steps[t as usize - 1][direction.index()] += 1;
    }
    LinkLoadProfile { degree, steps }
}
