//! Balanced routing tree construction.
//!
//! A schedule finishes in `n * floor(k/2)` steps with all links busy iff each
//! distance sphere splits evenly across the `2n` directions. The builder
//! checks that divisibility level by level and then assigns arrivals with a
//! quota-constrained bipartite matching between the sphere's offsets and the
//! directions admissible for them. The assignment is deterministic: offsets
//! are processed in lexicographic order and augmenting paths scan directions
//! in dense index order.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::torus::{BudgetError, CoordError, Direction, NodeCoord, Sign, TorusShape};

use super::tree::RoutingTree;

/// The sphere whose size breaks the per-step balance requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibleWitness {
    pub step: u64,
    pub sphere_size: u64,
    pub divisor: u64,
    pub remainder: u64,
}

impl fmt::Display for InfeasibleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {}: sphere of {} offsets does not split across {} directions (remainder {})",
            self.step, self.sphere_size, self.divisor, self.remainder
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("no balanced schedule: {0}")]
    Infeasible(InfeasibleWitness),
    #[error("step {step}: no admissible assignment for offset {offset} under equal quotas")]
    MatchingStuck { step: u64, offset: NodeCoord },
}

/// How the builder narrows the admissible directions of each offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Any direction whose reverse step moves strictly closer to the
    /// reference.
    #[default]
    AnyShortestPath,
    /// Only directions on axes where the offset's ring distance is smallest,
    /// so items cover their most contended axis last.
    NearestAxis,
}

/// Directions along which a last hop into `offset` stays on a shortest path.
///
/// Axis `i` admits sign `+` when the coordinate is positive and sign `-`
/// when negative; for even `k` the antipodal coordinate `k/2` admits both.
/// Sorted by dense direction index.
pub fn admissible_directions(
    shape: &TorusShape,
    offset: &NodeCoord,
) -> Result<Vec<Direction>, CoordError> {
    if offset.coords().len() != shape.n() as usize {
        return Err(CoordError::DimensionMismatch {
            expected: shape.n(),
            got: offset.coords().len(),
        });
    }
    let mut dirs = Vec::new();
    for (i, &c) in offset.coords().iter().enumerate() {
        let axis = i as u32 + 1;
        if c > 0 {
            dirs.push(Direction::new(shape, axis, Sign::Plus).expect("axis in range"));
        }
        if c < 0 || (shape.even_k() && c == shape.half() as i64) {
            dirs.push(Direction::new(shape, axis, Sign::Minus).expect("axis in range"));
        }
    }
    Ok(dirs)
}

/// [`admissible_directions`] restricted to the axes realizing the offset's
/// smallest nonzero ring distance.
pub fn nearest_axis_directions(
    shape: &TorusShape,
    offset: &NodeCoord,
) -> Result<Vec<Direction>, CoordError> {
    let all = admissible_directions(shape, offset)?;
    let ring = |axis: u32| {
        let c = offset.coords()[axis as usize - 1];
        c.unsigned_abs().min(shape.k() - c.unsigned_abs())
    };
    let min_ring = all.iter().map(|d| ring(d.axis())).min();
    Ok(match min_ring {
        Some(m) => all.into_iter().filter(|d| ring(d.axis()) == m).collect(),
        None => Vec::new(),
    })
}

/// Builds a balanced tree with the default strategy.
pub fn build_balanced_tree(shape: &TorusShape, max_nodes: u64) -> Result<RoutingTree, BuildError> {
    build_balanced_tree_with(shape, max_nodes, Strategy::default())
}

/// Builds a routing tree in which every step loads all `2n` directions
/// equally, or reports the first sphere where that is impossible.
pub fn build_balanced_tree_with(
    shape: &TorusShape,
    max_nodes: u64,
    strategy: Strategy,
) -> Result<RoutingTree, BuildError> {
    shape.check_budget(max_nodes)?;
    let degree = shape.degree();
    let dirs: Vec<Direction> = shape.directions().collect();
    let mut arrivals = BTreeMap::new();
    for t in 1..=shape.diameter() {
        let sphere = shape.sphere(t).expect("t within diameter");
        let size = sphere.len() as u64;
        if size % degree != 0 {
            return Err(BuildError::Infeasible(InfeasibleWitness {
                step: t,
                sphere_size: size,
                divisor: degree,
                remainder: size % degree,
            }));
        }
        let quota = (size / degree) as usize;
        let admissible: Vec<Vec<usize>> = sphere
            .iter()
            .map(|off| {
                let choices = match strategy {
                    Strategy::AnyShortestPath => admissible_directions(shape, off),
                    Strategy::NearestAxis => nearest_axis_directions(shape, off),
                }
                .expect("sphere offsets are well-formed");
                choices.into_iter().map(|d| d.index()).collect()
            })
            .collect();
        let mut assigned: Vec<Vec<usize>> = vec![Vec::with_capacity(quota); dirs.len()];
        let mut arrival_of: Vec<Option<usize>> = vec![None; sphere.len()];
        for u in 0..sphere.len() {
            let mut visited = vec![false; dirs.len()];
            if !augment(u, quota, &admissible, &mut assigned, &mut arrival_of, &mut visited) {
                return Err(BuildError::MatchingStuck {
                    step: t,
                    offset: sphere[u].clone(),
                });
            }
        }
        for (idx, off) in sphere.into_iter().enumerate() {
            let d = arrival_of[idx].expect("every offset was matched");
            arrivals.insert(off, dirs[d]);
        }
    }
    Ok(RoutingTree::from_arrivals(*shape, arrivals, max_nodes)
        .expect("constructed arrivals satisfy tree invariants"))
}

/// Kuhn-style augmentation with direction capacities: place `u` directly if
/// some admissible direction has spare quota, otherwise try to displace one
/// of its current holders.
fn augment(
    u: usize,
    quota: usize,
    admissible: &[Vec<usize>],
    assigned: &mut Vec<Vec<usize>>,
    arrival_of: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &d in &admissible[u] {
        if visited[d] {
            continue;
        }
        visited[d] = true;
        if assigned[d].len() < quota {
            assigned[d].push(u);
            arrival_of[u] = Some(d);
            return true;
        }
        for i in 0..assigned[d].len() {
            let w = assigned[d][i];
            if augment(w, quota, admissible, assigned, arrival_of, visited) {
                assigned[d][i] = u;
                arrival_of[u] = Some(d);
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::tree::link_loads;
    use crate::torus::DEFAULT_NODE_BUDGET;

    fn shape(k: u64, n: u32) -> TorusShape {
        TorusShape::new(k, n).unwrap()
    }

    fn node(s: &TorusShape, raw: &[i64]) -> NodeCoord {
        NodeCoord::new(s, raw).unwrap()
    }

    fn dir_list(s: &TorusShape, specs: &[(u32, Sign)]) -> Vec<Direction> {
        specs
            .iter()
            .map(|&(axis, sign)| Direction::new(s, axis, sign).unwrap())
            .collect()
    }

    #[test]
    fn admissible_examples() {
        let s = shape(5, 2);
        assert_eq!(
            admissible_directions(&s, &node(&s, &[2, -1])).unwrap(),
            dir_list(&s, &[(1, Sign::Plus), (2, Sign::Minus)])
        );
        assert_eq!(
            admissible_directions(&s, &node(&s, &[0, 1])).unwrap(),
            dir_list(&s, &[(2, Sign::Plus)])
        );
        assert!(admissible_directions(&s, &s.reference()).unwrap().is_empty());

        // The antipodal coordinate of an even-arity ring is reachable from
        // both sides.
        let e = shape(4, 2);
        assert_eq!(
            admissible_directions(&e, &node(&e, &[2, 0])).unwrap(),
            dir_list(&e, &[(1, Sign::Plus), (1, Sign::Minus)])
        );
        assert_eq!(
            admissible_directions(&e, &node(&e, &[2, -1])).unwrap(),
            dir_list(
                &e,
                &[(1, Sign::Plus), (1, Sign::Minus), (2, Sign::Minus)]
            )
        );
    }

    #[test]
    fn nearest_axis_narrows() {
        let s = shape(7, 3);
        // Ring distances (3, 1, 2): only axis 2 is nearest.
        assert_eq!(
            nearest_axis_directions(&s, &node(&s, &[3, -1, 2])).unwrap(),
            dir_list(&s, &[(2, Sign::Minus)])
        );
        // Ties keep every minimal axis.
        assert_eq!(
            nearest_axis_directions(&s, &node(&s, &[1, -1, 3])).unwrap(),
            dir_list(&s, &[(1, Sign::Plus), (2, Sign::Minus)])
        );
    }

    #[test]
    fn balanced_tree_on_3_2() {
        let s = shape(3, 2);
        let tree = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap();
        let profile = link_loads(&tree);
        assert_eq!(profile.uniform_loads().unwrap(), vec![1, 1]);
    }

    #[test]
    fn balanced_tree_on_5_2() {
        let s = shape(5, 2);
        let tree = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap();
        let profile = link_loads(&tree);
        // Sphere sizes 4, 8, 8, 4 over 4 directions.
        assert_eq!(profile.uniform_loads().unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn infeasible_witness_on_4_2() {
        let s = shape(4, 2);
        let err = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap_err();
        assert_eq!(
            err,
            BuildError::Infeasible(InfeasibleWitness {
                step: 2,
                sphere_size: 6,
                divisor: 4,
                remainder: 2,
            })
        );
    }

    #[test]
    fn infeasible_witness_on_3_3() {
        let s = shape(3, 3);
        let err = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap_err();
        // Spheres have sizes 6, 12, 8; the corner sphere of 8 resists 6.
        assert_eq!(
            err,
            BuildError::Infeasible(InfeasibleWitness {
                step: 3,
                sphere_size: 8,
                divisor: 6,
                remainder: 2,
            })
        );
    }

    #[test]
    fn nearest_axis_strategy_also_balances_5_2() {
        let s = shape(5, 2);
        let tree = build_balanced_tree_with(&s, DEFAULT_NODE_BUDGET, Strategy::NearestAxis).unwrap();
        assert_eq!(link_loads(&tree).uniform_loads().unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn builder_is_deterministic() {
        let s = shape(5, 2);
        let a = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap();
        let b = build_balanced_tree(&s, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_respected() {
        let s = shape(9, 4);
        assert!(matches!(
            build_balanced_tree(&s, 100),
            Err(BuildError::Budget(_))
        ));
    }
}
