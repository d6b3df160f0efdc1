//! Exact class counting: the brute-force census of `(t, p, v)` classes and
//! the closed factorization that reproduces it without enumerating nodes.
//!
//! Every node other than the reference belongs to exactly one class: `t` is
//! its distance from the reference, `v` the smallest per-axis ring distance,
//! `p` the number of axes attaining `v`. The census size of a class factors
//! as
//!
//! ```text
//! count(t, p, v) = C(n, p) * s(v)^p * F * N(t, p, v)
//! ```
//!
//! where `s` is [`sign_multiplicity`], `F = 2^(n-p)` for odd k and `1` for
//! even k, and `N` is [`n_quadrant`]: the number of ways to fill the `n - p`
//! free axes with ring distances in `[v+1, floor(k/2)]` summing to `t - p*v`.
//! For odd k every free axis admits both signs, so `N` is a plain count and
//! the sign freedom is the `F` factor; for even k the antipodal coordinate
//! `k/2` admits only one sign, so `N` weighs each assignment by `2` per
//! interior axis and `1` per boundary axis and `F` disappears.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numtheory::binomial;
use crate::torus::{BudgetError, ClassKey, TorusShape};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern has {got} values, shape has dimension {expected}")]
    WrongLength { expected: u32, got: usize },
    #[error("ring distance {value} exceeds floor(k/2) = {half}")]
    ValueTooLarge { value: u64, half: u64 },
}

/// How many coordinate values realize a given per-axis ring distance:
/// 2 for `0 < value < k/2` (both signs), 1 for zero and for the even-k
/// antipodal distance `k/2`.
pub fn sign_multiplicity(value: u64, shape: &TorusShape) -> u64 {
    debug_assert!(value <= shape.half());
    if value == 0 || (shape.even_k() && value == shape.half()) {
        1
    } else {
        2
    }
}

/// A multiset of per-axis ring distances: the orbit of a node under sign
/// flips and axis permutations. Values are kept sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QuadrantPattern {
    values: Vec<u64>,
}

impl QuadrantPattern {
    pub fn new(shape: &TorusShape, mut values: Vec<u64>) -> Result<Self, PatternError> {
        if values.len() != shape.n() as usize {
            return Err(PatternError::WrongLength {
                expected: shape.n(),
                got: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v > shape.half()) {
            return Err(PatternError::ValueTooLarge {
                value,
                half: shape.half(),
            });
        }
        values.sort_unstable();
        Ok(QuadrantPattern { values })
    }

    fn from_sorted(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        QuadrantPattern { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn class_key(&self) -> ClassKey {
        let t = self.values.iter().sum();
        let v = *self.values.first().expect("n >= 1");
        let p = self.values.iter().filter(|&&x| x == v).count() as u32;
        ClassKey { t, p, v }
    }

    /// Nodes sharing this multiset and axis order: product of per-value sign
    /// multiplicities.
    pub fn sign_orbit_size(&self, shape: &TorusShape) -> BigUint {
        self.values
            .iter()
            .map(|&v| BigUint::from(sign_multiplicity(v, shape)))
            .product()
    }

    /// Distinct axis orders of the multiset: `n! / prod(run!)`.
    pub fn axis_arrangements(&self) -> BigUint {
        arrangements(&self.values)
    }

    /// Total nodes in this orbit.
    pub fn orbit_size(&self, shape: &TorusShape) -> BigUint {
        self.sign_orbit_size(shape) * self.axis_arrangements()
    }

    /// Number of axes pinned at the even-k antipodal distance `k/2`.
    pub fn boundary_axis_count(&self, shape: &TorusShape) -> u32 {
        if !shape.even_k() {
            return 0;
        }
        let half = shape.half();
        self.values.iter().filter(|&&v| v == half).count() as u32
    }
}

/// Multinomial coefficient of a sorted value list.
fn arrangements(sorted: &[u64]) -> BigUint {
    let mut result = factorial(sorted.len() as u64);
    let mut run = 1u64;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            result /= factorial(run);
            run = 1;
        }
    }
    result
}

fn factorial(m: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=m {
        out *= i;
    }
    out
}

/// All patterns of a class: `p` axes pinned at `v`, the rest strictly above,
/// in ascending pattern order.
pub fn class_patterns(shape: &TorusShape, key: &ClassKey) -> Vec<QuadrantPattern> {
    let mut out = Vec::new();
    for_each_free_pattern(shape, key, &mut |free| {
        let mut values = vec![key.v; key.p as usize];
        values.extend_from_slice(free);
        out.push(QuadrantPattern::from_sorted(values));
    });
    out
}

/// Enumerates the sorted free-axis value lists of a class: `n - p` values in
/// `[v+1, floor(k/2)]` summing to `t - p*v`. No-op for impossible keys.
fn for_each_free_pattern(shape: &TorusShape, key: &ClassKey, f: &mut impl FnMut(&[u64])) {
    let n = shape.n();
    if key.p == 0 || key.p > n || key.v > shape.half() {
        return;
    }
    let pinned = key.p as u128 * key.v as u128;
    if (key.t as u128) < pinned {
        return;
    }
    let target = (key.t as u128 - pinned) as u64;
    let free = (n - key.p) as usize;
    let mut cur = Vec::with_capacity(free);
    free_rec(shape.half(), key.v + 1, free, target, &mut cur, f);
}

fn free_rec(
    half: u64,
    min_value: u64,
    axes_left: usize,
    target: u64,
    cur: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if axes_left == 0 {
        if target == 0 {
            f(cur);
        }
        return;
    }
    // The last axis must absorb the whole remainder.
    if axes_left == 1 {
        if min_value <= target && target <= half {
            cur.push(target);
            f(cur);
            cur.pop();
        }
        return;
    }
    // Nondecreasing fill: each later value is at least the current one, so
    // the current value can be at most target / axes_left.
    let hi = half.min(target / axes_left as u64);
    let mut value = min_value;
    while value <= hi {
        cur.push(value);
        free_rec(half, value, axes_left - 1, target - value, cur, f);
        cur.pop();
        value += 1;
    }
}

/// The quadrant factor `N(t, p, v)`: assignments of ring distances in
/// `[v+1, floor(k/2)]` to the `n - p` free axes summing to `t - p*v`. A
/// plain count for odd k; for even k each assignment is weighted by 2 per
/// interior axis and 1 per axis at the antipodal distance `k/2`, which
/// regroups as `sum_h 2^(n-p-h) * |assignments with h antipodal axes|`.
///
/// Zero for impossible keys. Enumerates only free-axis value patterns,
/// never nodes.
pub fn n_quadrant(shape: &TorusShape, key: &ClassKey) -> BigUint {
    let mut sum = BigUint::zero();
    let even = shape.even_k();
    let half = shape.half();
    for_each_free_pattern(shape, key, &mut |free| {
        let mut weight = arrangements(free);
        if even {
            let interior = free.iter().filter(|&&v| v < half).count();
            weight *= BigUint::from(2u64).pow(interior as u32);
        }
        sum += weight;
    });
    sum
}

/// Closed-form class size: `C(n,p) * sign_multiplicity(v)^p * F * N` with
/// `F = 2^(n-p)` for odd k (free-axis sign freedom) and `F = 1` for even k
/// (folded into [`n_quadrant`]'s weights). Zero for impossible keys; agrees
/// with [`class_table_oracle`] on every class.
pub fn class_count_factored(shape: &TorusShape, key: &ClassKey) -> BigUint {
    let n = shape.n();
    if key.p == 0 || key.p > n || key.v > shape.half() {
        return BigUint::zero();
    }
    let nq = n_quadrant(shape, key);
    if nq.is_zero() {
        return BigUint::zero();
    }
    let mut count = binomial(n as u64, key.p as u64);
    count *= BigUint::from(sign_multiplicity(key.v, shape)).pow(key.p);
    if !shape.even_k() {
        count *= BigUint::from(2u64).pow(n - key.p);
    }
    count * nq
}

/// Every nonempty class key of the shape (`t >= 1`), ascending. Loops over
/// `p`, `v` and the admissible `t` range, so cost grows with `n * k^2`, not
/// with `k^n`; intended for shapes whose diameter is enumerable.
pub fn class_keys(shape: &TorusShape) -> Vec<ClassKey> {
    let n = shape.n();
    let half = shape.half();
    let mut keys = Vec::new();
    for p in 1..=n {
        for v in 0..=half {
            if p == n {
                let t = n as u64 * v;
                if t >= 1 {
                    keys.push(ClassKey { t, p, v });
                }
            } else if v + 1 <= half {
                let free = (n - p) as u64;
                let lo = p as u64 * v + free * (v + 1);
                let hi = p as u64 * v + free * half;
                for t in lo..=hi {
                    keys.push(ClassKey { t, p, v });
                }
            }
        }
    }
    keys.sort_unstable();
    keys
}

/// Census of all classes, exact and exhaustive: one pass over the `k^n - 1`
/// non-reference nodes.
pub fn class_table_oracle(shape: &TorusShape, max_nodes: u64) -> Result<ClassTable, BudgetError> {
    shape.check_budget(max_nodes)?;
    let mut entries: BTreeMap<ClassKey, u64> = BTreeMap::new();
    for x in shape.nodes() {
        if x.is_reference() {
            continue;
        }
        let key = shape.class_of(&x).expect("nodes() yields well-formed coords");
        *entries.entry(key).or_insert(0) += 1;
    }
    Ok(ClassTable {
        k: shape.k(),
        n: shape.n(),
        entries,
    })
}

/// A class census: per-key node counts, sorted by `(t, p, v)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassTable {
    pub k: u64,
    pub n: u32,
    entries: BTreeMap<ClassKey, u64>,
}

#[derive(Serialize)]
struct ClassRow {
    t: u64,
    p: u32,
    v: u64,
    count: u64,
}

impl ClassTable {
    pub fn entries(&self) -> impl Iterator<Item = (&ClassKey, u64)> {
        self.entries.iter().map(|(k, &c)| (k, c))
    }

    pub fn get(&self, key: &ClassKey) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total nodes across classes; `k^n - 1` by construction.
    pub fn total(&self) -> u128 {
        self.entries.values().map(|&c| c as u128).sum()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("t,p,v,count\n");
        for (key, count) in self.entries() {
            out.push_str(&format!("{},{},{},{}\n", key.t, key.p, key.v, count));
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let rows: Vec<ClassRow> = self
            .entries()
            .map(|(key, count)| ClassRow {
                t: key.t,
                p: key.p,
                v: key.v,
                count,
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain integers serialize")
    }
}
