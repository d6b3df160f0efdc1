//! Torus geometry: shapes, centered coordinates, distances, spheres and node
//! classes.
//!
//! A k-ary n-dimensional torus has `k^n` nodes addressed by n coordinates,
//! each taken modulo k. Coordinates are kept in the centered representation
//! `[-floor(k/2), floor(k/2)]`; for even k the antipodal coordinate has two
//! congruent writings and is canonicalized to `+k/2`. Two nodes are adjacent
//! exactly when they differ by one modulo k in a single coordinate, so every
//! node has degree `2n` and the diameter is `n * floor(k/2)`.

use std::fmt;

use thiserror::Error;

/// Default cap on `k^n` for operations that enumerate nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ShapeError {
    #[error("arity must be at least 3, got {0}")]
    ArityTooSmall(u64),
    #[error("dimension must be at least 1")]
    DimensionZero,
    #[error("node count {k}^{n} is not representable in 128 bits")]
    NodeCountOverflow { k: u64, n: u32 },
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("operation needs {required} nodes, budget allows {budget}")]
pub struct BudgetError {
    pub required: u128,
    pub budget: u64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CoordError {
    #[error("coordinate vector has length {got}, shape has dimension {expected}")]
    DimensionMismatch { expected: u32, got: usize },
    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: u32, n: u32 },
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("radius {t} exceeds diameter {diameter}")]
pub struct RadiusError {
    pub t: u64,
    pub diameter: u64,
}

/// Shortest wraparound distance between two positions on a ring of k nodes.
pub fn ring_distance(a: i64, b: i64, k: u64) -> u64 {
    debug_assert!(k >= 1);
    let k = k as i128;
    let d = (a as i128 - b as i128).rem_euclid(k);
    d.min(k - d) as u64
}

/// A k-ary n-dimensional torus. Requires `k >= 3` (so that the two ring
/// neighbours of a node are distinct) and `n >= 1`; `k^n` must fit in `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusShape {
    k: u64,
    n: u32,
}

impl TorusShape {
    pub fn new(k: u64, n: u32) -> Result<Self, ShapeError> {
        if k < 3 {
            return Err(ShapeError::ArityTooSmall(k));
        }
        if n == 0 {
            return Err(ShapeError::DimensionZero);
        }
        let mut count: u128 = 1;
        for _ in 0..n {
            count = count
                .checked_mul(k as u128)
                .ok_or(ShapeError::NodeCountOverflow { k, n })?;
        }
        Ok(TorusShape { k, n })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn even_k(&self) -> bool {
        self.k % 2 == 0
    }

    /// `floor(k/2)`: the largest ring distance along one axis.
    pub fn half(&self) -> u64 {
        self.k / 2
    }

    pub fn node_count(&self) -> u128 {
        (self.k as u128).pow(self.n)
    }

    pub fn diameter(&self) -> u64 {
        self.n as u64 * self.half()
    }

    /// Node degree, `2n`.
    pub fn degree(&self) -> u64 {
        2 * self.n as u64
    }

    /// Checks `k^n` against a node budget; returns the node count on success.
    pub fn check_budget(&self, max_nodes: u64) -> Result<u64, BudgetError> {
        let count = self.node_count();
        if count > max_nodes as u128 {
            Err(BudgetError {
                required: count,
                budget: max_nodes,
            })
        } else {
            Ok(count as u64)
        }
    }

    /// Reduces an arbitrary integer to the canonical centered coordinate.
    pub fn canonicalize(&self, raw: i64) -> i64 {
        let k = self.k as i128;
        let r = (raw as i128).rem_euclid(k);
        // r == k/2 for even k stays +k/2; the strict comparison handles it.
        if r > k / 2 {
            (r - k) as i64
        } else {
            r as i64
        }
    }

    /// Smallest canonical coordinate value: `-floor(k/2)` for odd k,
    /// `-(k/2 - 1)` for even k.
    pub fn min_coordinate(&self) -> i64 {
        if self.even_k() {
            -(self.half() as i64) + 1
        } else {
            -(self.half() as i64)
        }
    }

    /// All canonical coordinate values in ascending order.
    pub fn coordinate_values(&self) -> impl Iterator<Item = i64> {
        self.min_coordinate()..=self.half() as i64
    }

    /// The all-zero node the class structure is referenced against.
    pub fn reference(&self) -> NodeCoord {
        NodeCoord {
            coords: vec![0; self.n as usize],
        }
    }

    /// The 2n directed link labels: axes ascending, `+` before `-`.
    pub fn directions(&self) -> impl Iterator<Item = Direction> {
        (1..=self.n).flat_map(|axis| {
            [Sign::Plus, Sign::Minus]
                .into_iter()
                .map(move |sign| Direction { axis, sign })
        })
    }

    fn check_dim(&self, x: &NodeCoord) -> Result<(), CoordError> {
        if x.coords.len() != self.n as usize {
            return Err(CoordError::DimensionMismatch {
                expected: self.n,
                got: x.coords.len(),
            });
        }
        Ok(())
    }

    /// Hop distance: the sum of per-axis ring distances.
    pub fn distance(&self, x: &NodeCoord, y: &NodeCoord) -> Result<u64, CoordError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(x.coords
            .iter()
            .zip(&y.coords)
            .map(|(&a, &b)| ring_distance(a, b, self.k))
            .sum())
    }

    /// Distance to the reference node.
    pub fn norm(&self, x: &NodeCoord) -> Result<u64, CoordError> {
        self.check_dim(x)?;
        Ok(x.coords.iter().map(|&a| ring_distance(a, 0, self.k)).sum())
    }

    /// The 2n distinct neighbours of a node, in ascending coordinate order.
    pub fn neighbors(&self, x: &NodeCoord) -> Result<Vec<NodeCoord>, CoordError> {
        self.check_dim(x)?;
        let mut out = Vec::with_capacity(2 * self.n as usize);
        for axis in 0..self.n as usize {
            for step in [-1i64, 1] {
                let mut coords = x.coords.clone();
                coords[axis] = self.canonicalize(coords[axis] + step);
                out.push(NodeCoord { coords });
            }
        }
        out.sort();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "k >= 3 keeps them distinct");
        Ok(out)
    }

    /// One unit step in a direction, with wraparound.
    pub fn step(&self, x: &NodeCoord, dir: Direction) -> Result<NodeCoord, CoordError> {
        self.check_dim(x)?;
        if dir.axis == 0 || dir.axis > self.n {
            return Err(CoordError::AxisOutOfRange {
                axis: dir.axis,
                n: self.n,
            });
        }
        let mut coords = x.coords.clone();
        let i = dir.axis_index();
        coords[i] = self.canonicalize(coords[i] + dir.sign.step());
        Ok(NodeCoord { coords })
    }

    /// Coordinate-wise translation `x + delta` on the torus.
    pub fn translate(&self, x: &NodeCoord, delta: &NodeCoord) -> Result<NodeCoord, CoordError> {
        self.check_dim(x)?;
        self.check_dim(delta)?;
        let coords = x
            .coords
            .iter()
            .zip(&delta.coords)
            .map(|(&a, &b)| self.canonicalize_wide(a as i128 + b as i128))
            .collect();
        Ok(NodeCoord { coords })
    }

    fn canonicalize_wide(&self, raw: i128) -> i64 {
        let k = self.k as i128;
        let r = raw.rem_euclid(k);
        if r > k / 2 {
            (r - k) as i64
        } else {
            r as i64
        }
    }

    /// All nodes at distance exactly `t` from the reference node, in
    /// lexicographic coordinate order. `t = 0` yields the reference alone.
    ///
    /// No node budget is enforced here; callers that cannot bound the sphere
    /// size must gate on [`TorusShape::check_budget`] first.
    pub fn sphere(&self, t: u64) -> Result<Vec<NodeCoord>, RadiusError> {
        if t > self.diameter() {
            return Err(RadiusError {
                t,
                diameter: self.diameter(),
            });
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n as usize);
        self.sphere_rec(t, &mut cur, &mut out);
        Ok(out)
    }

    fn sphere_rec(&self, remaining: u64, cur: &mut Vec<i64>, out: &mut Vec<NodeCoord>) {
        let axes_left = self.n as usize - cur.len();
        if axes_left == 0 {
            if remaining == 0 {
                out.push(NodeCoord { coords: cur.clone() });
            }
            return;
        }
        if remaining as u128 > self.half() as u128 * axes_left as u128 {
            return;
        }
        // Only coordinates with ring distance <= remaining can extend cur.
        let lo = self.min_coordinate().max(-(remaining.min(i64::MAX as u64) as i64));
        let hi = (self.half() as i64).min(remaining.min(i64::MAX as u64) as i64);
        for c in lo..=hi {
            let d = ring_distance(c, 0, self.k);
            if d > remaining {
                continue;
            }
            cur.push(c);
            self.sphere_rec(remaining - d, cur, out);
            cur.pop();
        }
    }

    /// The `(t, p, v)` class of a node: `t` its distance from the reference,
    /// `v` the smallest per-axis ring distance, `p` how many axes attain `v`.
    pub fn class_of(&self, x: &NodeCoord) -> Result<ClassKey, CoordError> {
        self.check_dim(x)?;
        let dists: Vec<u64> = x.coords.iter().map(|&a| ring_distance(a, 0, self.k)).collect();
        let t = dists.iter().sum();
        let v = *dists.iter().min().expect("n >= 1");
        let p = dists.iter().filter(|&&d| d == v).count() as u32;
        Ok(ClassKey { t, p, v })
    }

    /// Dense node index in `[0, k^n)`: mixed radix over the standard residues,
    /// axis 1 least significant. Callers must have budget-checked the shape.
    pub fn node_index(&self, x: &NodeCoord) -> u64 {
        debug_assert!(self.node_count() <= u64::MAX as u128);
        let k = self.k as i128;
        let mut id: u64 = 0;
        for &c in x.coords.iter().rev() {
            let digit = (c as i128).rem_euclid(k) as u64;
            id = id * self.k + digit;
        }
        id
    }

    pub fn node_from_index(&self, mut id: u64) -> NodeCoord {
        let mut coords = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            coords.push(self.canonicalize((id % self.k) as i64));
            id /= self.k;
        }
        NodeCoord { coords }
    }

    /// Iterates every node once, in [`TorusShape::node_index`] order.
    /// Callers must have budget-checked the shape.
    pub fn nodes(&self) -> NodeIter {
        NodeIter {
            shape: *self,
            digits: vec![0; self.n as usize],
            done: false,
        }
    }
}

impl fmt::Display for TorusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-ary {}-dimensional torus", self.k, self.n)
    }
}

/// A node address in canonical centered coordinates.
///
/// Ordering is lexicographic on the coordinate vector, which is the order
/// every enumeration and serialization in this crate uses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeCoord {
    coords: Vec<i64>,
}

impl NodeCoord {
    /// Builds a node from arbitrary integer coordinates, canonicalizing each.
    pub fn new(shape: &TorusShape, raw: &[i64]) -> Result<Self, CoordError> {
        if raw.len() != shape.n() as usize {
            return Err(CoordError::DimensionMismatch {
                expected: shape.n(),
                got: raw.len(),
            });
        }
        Ok(NodeCoord {
            coords: raw.iter().map(|&c| shape.canonicalize(c)).collect(),
        })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_reference(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for NodeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sign of a directed link along an axis. `Plus` orders before `Minus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn step(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_step(step: i64) -> Option<Self> {
        match step {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// One of the 2n directed link labels of a shape: a 1-based axis and a sign.
///
/// Ordering is `(axis, sign)` with `Plus` before `Minus`, matching the order
/// of [`TorusShape::directions`]; `index` is the dense position in it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Direction {
    axis: u32,
    sign: Sign,
}

impl Direction {
    pub fn new(shape: &TorusShape, axis: u32, sign: Sign) -> Result<Self, CoordError> {
        if axis == 0 || axis > shape.n() {
            return Err(CoordError::AxisOutOfRange { axis, n: shape.n() });
        }
        Ok(Direction { axis, sign })
    }

    /// 1-based axis, as used in serialized schedules.
    pub fn axis(&self) -> u32 {
        self.axis
    }

    /// 0-based position into a coordinate vector.
    pub fn axis_index(&self) -> usize {
        self.axis as usize - 1
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn opposite(&self) -> Direction {
        Direction {
            axis: self.axis,
            sign: self.sign.opposite(),
        }
    }

    /// Dense index in `[0, 2n)` consistent with `Ord`.
    pub fn index(&self) -> usize {
        (self.axis as usize - 1) * 2
            + match self.sign {
                Sign::Plus => 0,
                Sign::Minus => 1,
            }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axis {} sign {}", self.axis, self.sign)
    }
}

/// A `(t, p, v)` node class. Ordering is lexicographic on `(t, p, v)`, the
/// order class tables are reported in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassKey {
    pub t: u64,
    pub p: u32,
    pub v: u64,
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} p={} v={}", self.t, self.p, self.v)
    }
}

pub struct NodeIter {
    shape: TorusShape,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for NodeIter {
    type Item = NodeCoord;

    fn next(&mut self) -> Option<NodeCoord> {
        if self.done {
            return None;
        }
        let coords = self
            .digits
            .iter()
            .map(|&d| self.shape.canonicalize(d as i64))
            .collect();
        // Little-endian odometer increment over standard residues.
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.shape.k() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(NodeCoord { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(k: u64, n: u32) -> TorusShape {
        TorusShape::new(k, n).unwrap()
    }

    fn node(shape: &TorusShape, raw: &[i64]) -> NodeCoord {
        NodeCoord::new(shape, raw).unwrap()
    }

    #[test]
    fn ring_distance_wraps() {
        assert_eq!(ring_distance(0, 4, 5), 1);
        assert_eq!(ring_distance(0, 2, 5), 2);
        assert_eq!(ring_distance(1, 3, 4), 2);
        for k in 3..=9u64 {
            for a in 0..k as i64 {
                for b in 0..k as i64 {
                    let d = ring_distance(a, b, k);
                    assert_eq!(d, ring_distance(b, a, k));
                    assert!(d <= k / 2);
                }
            }
        }
    }

    #[test]
    fn shape_validation() {
        assert_eq!(TorusShape::new(2, 3).unwrap_err(), ShapeError::ArityTooSmall(2));
        assert_eq!(TorusShape::new(5, 0).unwrap_err(), ShapeError::DimensionZero);
        assert!(matches!(
            TorusShape::new(u64::MAX, 3).unwrap_err(),
            ShapeError::NodeCountOverflow { .. }
        ));
        assert_eq!(shape(5, 2).node_count(), 25);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(shape(5, 3).diameter(), 6);
        assert_eq!(shape(4, 2).diameter(), 4);
        assert_eq!(shape(3, 1).diameter(), 1);
    }

    #[test]
    fn diameter_is_max_distance() {
        for (k, n) in [(3, 1), (4, 1), (5, 2), (4, 2), (6, 2), (3, 3), (5, 3)] {
            let s = shape(k, n);
            let reference = s.reference();
            let max = s
                .nodes()
                .map(|x| s.distance(&x, &reference).unwrap())
                .max()
                .unwrap();
            assert_eq!(max, s.diameter(), "k={k} n={n}");
        }
    }

    #[test]
    fn distance_examples() {
        let s = shape(5, 2);
        assert_eq!(s.distance(&node(&s, &[2, 2]), &node(&s, &[-2, -2])).unwrap(), 2);
        let s = shape(4, 2);
        assert_eq!(s.distance(&node(&s, &[1, 1]), &node(&s, &[-1, -1])).unwrap(), 4);
        let bad = node(&shape(5, 3), &[1, 1, 1]);
        assert_eq!(
            s.distance(&bad, &s.reference()).unwrap_err(),
            CoordError::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    #[test]
    fn distance_symmetric_and_bounded() {
        let s = shape(6, 2);
        let nodes: Vec<_> = s.nodes().collect();
        for x in &nodes {
            for y in &nodes {
                let d = s.distance(x, y).unwrap();
                assert_eq!(d, s.distance(y, x).unwrap());
                assert!(d <= s.diameter());
            }
        }
    }

    #[test]
    fn canonicalization_round_trip() {
        for k in 3..=10u64 {
            let s = shape(k, 1);
            let mut seen = std::collections::BTreeSet::new();
            for std_coord in 0..k as i64 {
                let c = s.canonicalize(std_coord);
                assert!(c >= s.min_coordinate() && c <= s.half() as i64);
                if s.even_k() {
                    assert_ne!(c, -(s.half() as i64), "-k/2 must canonicalize to +k/2");
                }
                // Same residue class and injective over one period.
                assert_eq!(c.rem_euclid(k as i64), std_coord);
                assert!(seen.insert(c));
                assert_eq!(s.canonicalize(std_coord - k as i64), c);
                assert_eq!(s.canonicalize(c), c);
            }
            assert_eq!(seen.len() as u64, k);
        }
    }

    #[test]
    fn neighbors_examples() {
        let s = shape(5, 2);
        let got = s.neighbors(&s.reference()).unwrap();
        let want: Vec<_> = [[-1, 0], [0, -1], [0, 1], [1, 0]]
            .iter()
            .map(|raw| node(&s, raw))
            .collect();
        assert_eq!(got, want);

        let s = shape(4, 2);
        let got = s.neighbors(&node(&s, &[2, 0])).unwrap();
        let want: Vec<_> = [[-1, 0], [1, 0], [2, -1], [2, 1]]
            .iter()
            .map(|raw| node(&s, raw))
            .collect();
        assert_eq!(got, want, "both ring neighbours of +k/2 have |c| = k/2 - 1");
    }

    #[test]
    fn neighbors_symmetric() {
        for (k, n) in [(3, 2), (4, 2), (5, 2), (3, 3), (6, 1)] {
            let s = shape(k, n);
            for x in s.nodes() {
                let nbrs = s.neighbors(&x).unwrap();
                assert_eq!(nbrs.len(), 2 * n as usize);
                for y in &nbrs {
                    assert_eq!(s.distance(&x, y).unwrap(), 1);
                    assert!(s.neighbors(y).unwrap().contains(&x));
                }
            }
        }
    }

    #[test]
    fn sphere_examples() {
        let s = shape(5, 2);
        assert_eq!(s.sphere(1).unwrap().len(), 4);
        let corners = s.sphere(4).unwrap();
        let want: Vec<_> = [[-2, -2], [-2, 2], [2, -2], [2, 2]]
            .iter()
            .map(|raw| node(&s, raw))
            .collect();
        assert_eq!(corners, want);
        assert_eq!(s.sphere(5).unwrap_err(), RadiusError { t: 5, diameter: 4 });
        assert_eq!(s.sphere(0).unwrap(), vec![s.reference()]);
    }

    #[test]
    fn spheres_partition_nodes() {
        for (k, n) in [(3, 1), (4, 1), (5, 2), (4, 2), (6, 2), (3, 3), (5, 3), (4, 3)] {
            let s = shape(k, n);
            let mut total = 0u128;
            let mut seen = std::collections::BTreeSet::new();
            for t in 0..=s.diameter() {
                let sp = s.sphere(t).unwrap();
                assert!(sp.windows(2).all(|w| w[0] < w[1]), "sorted, duplicate-free");
                for x in &sp {
                    assert_eq!(s.norm(x).unwrap(), t);
                    assert!(seen.insert(x.clone()));
                }
                total += sp.len() as u128;
            }
            assert_eq!(total, s.node_count());
        }
    }

    #[test]
    fn class_examples() {
        let s5 = shape(5, 2);
        assert_eq!(
            s5.class_of(&node(&s5, &[2, 1])).unwrap(),
            ClassKey { t: 3, p: 1, v: 1 }
        );
        assert_eq!(
            s5.class_of(&node(&s5, &[1, 1])).unwrap(),
            ClassKey { t: 2, p: 2, v: 1 }
        );
        assert_eq!(
            s5.class_of(&node(&s5, &[1, 0])).unwrap(),
            ClassKey { t: 1, p: 1, v: 0 }
        );
        let s4 = shape(4, 2);
        assert_eq!(
            s4.class_of(&node(&s4, &[2, 0])).unwrap(),
            ClassKey { t: 2, p: 1, v: 0 }
        );
        assert_eq!(
            s4.class_of(&node(&s4, &[2, 2])).unwrap(),
            ClassKey { t: 4, p: 2, v: 2 }
        );
    }

    #[test]
    fn node_index_round_trip() {
        for (k, n) in [(5, 2), (4, 3), (3, 4)] {
            let s = shape(k, n);
            let mut seen = vec![false; s.node_count() as usize];
            for (expected, x) in s.nodes().enumerate() {
                let id = s.node_index(&x);
                assert_eq!(id as usize, expected);
                assert_eq!(s.node_from_index(id), x);
                seen[id as usize] = true;
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn budget_check() {
        let s = shape(5, 2);
        assert_eq!(s.check_budget(25).unwrap(), 25);
        assert_eq!(
            s.check_budget(24).unwrap_err(),
            BudgetError { required: 25, budget: 24 }
        );
    }

    #[test]
    fn direction_order_and_index() {
        let s = shape(5, 3);
        let dirs: Vec<_> = s.directions().collect();
        assert_eq!(dirs.len(), 6);
        let mut sorted = dirs.clone();
        sorted.sort();
        assert_eq!(dirs, sorted);
        for (i, d) in dirs.iter().enumerate() {
            assert_eq!(d.index(), i);
        }
        assert!(Direction::new(&s, 4, Sign::Plus).is_err());
        assert!(Direction::new(&s, 0, Sign::Plus).is_err());
    }
}
