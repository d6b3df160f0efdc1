//! Schedule file format.
//!
//! A routing tree serializes as one JSON object:
//!
//! ```json
//! {
//!   "k": 3,
//!   "n": 2,
//!   "tree": [
//!     { "offset": [-1, -1], "axis": 1, "sign": -1 },
//!     ...
//!   ]
//! }
//! ```
//!
//! Entries are sorted lexicographically by offset and coordinates are
//! canonical centered values, so serialization is byte-identical across
//! runs. Reading validates everything a [`RoutingTree`] requires plus
//! file-level canonicality, and reports JSON syntax errors with line and
//! column.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::torus::{Direction, NodeCoord, ShapeError, Sign, TorusShape};

use super::tree::{RoutingTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleFileError {
    #[error("{message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("tree[{index}]: offset has {got} coordinates, expected {expected}")]
    EntryDimension {
        index: usize,
        expected: u32,
        got: usize,
    },
    #[error("tree[{index}]: coordinate {value} at axis {axis} is not canonical for k={k}")]
    EntryNotCanonical {
        index: usize,
        axis: u32,
        value: i64,
        k: u64,
    },
    #[error("tree[{index}]: axis {axis} out of range 1..={n}")]
    EntryAxis { index: usize, axis: u32, n: u32 },
    #[error("tree[{index}]: sign must be 1 or -1, got {sign}")]
    EntrySign { index: usize, sign: i64 },
    #[error("tree[{index}]: the all-zero offset cannot carry an arrival")]
    EntryReference { index: usize },
    #[error("tree[{index}]: duplicate offset {offset}")]
    EntryDuplicate { index: usize, offset: NodeCoord },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileEntry {
    offset: Vec<i64>,
    axis: u32,
    sign: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTree {
    k: u64,
    n: u32,
    tree: Vec<FileEntry>,
}

/// Canonical JSON text for a tree, stable across runs.
pub fn to_json_string(tree: &RoutingTree) -> String {
    let shape = tree.shape();
    let entries = tree
        .entries()
        .map(|(offset, direction)| FileEntry {
            offset: offset.coords().to_vec(),
            axis: direction.axis(),
            sign: direction.sign().step(),
        })
        .collect();
    let file = FileTree {
        k: shape.k(),
        n: shape.n(),
        tree: entries,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    text.push('\n');
    text
}

/// Parses and fully validates a schedule file.
pub fn from_json_str(text: &str, max_nodes: u64) -> Result<RoutingTree, ScheduleFileError> {
    let file: FileTree = serde_json::from_str(text).map_err(|e| ScheduleFileError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let shape = TorusShape::new(file.k, file.n)?;
    let mut arrivals = BTreeMap::new();
    for (index, entry) in file.tree.iter().enumerate() {
        if entry.offset.len() != shape.n() as usize {
            return Err(ScheduleFileError::EntryDimension {
                index,
                expected: shape.n(),
                got: entry.offset.len(),
            });
        }
        for (i, &value) in entry.offset.iter().enumerate() {
            if shape.canonicalize(value) != value {
                return Err(ScheduleFileError::EntryNotCanonical {
                    index,
                    axis: i as u32 + 1,
                    value,
                    k: shape.k(),
                });
            }
        }
        if entry.axis == 0 || entry.axis > shape.n() {
            return Err(ScheduleFileError::EntryAxis {
                index,
                axis: entry.axis,
                n: shape.n(),
            });
        }
        let sign = match entry.sign {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            other => return Err(ScheduleFileError::EntrySign { index, sign: other }),
        };
        let offset = NodeCoord::new(&shape, &entry.offset).expect("length checked");
        if offset.is_reference() {
            return Err(ScheduleFileError::EntryReference { index });
        }
        let direction = Direction::new(&shape, entry.axis, sign).expect("axis checked");
        if arrivals.insert(offset.clone(), direction).is_some() {
            return Err(ScheduleFileError::EntryDuplicate { index, offset });
        }
    }
    Ok(RoutingTree::from_arrivals(shape, arrivals, max_nodes)?)
}
