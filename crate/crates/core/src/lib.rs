//! In-place prefix accumulation for invertible, possibly non-commutative
//! operations.
//!
//! [`SouthwestTree`] rewrites an array of `N` group elements into an implicit
//! binary tree occupying the same `N` slots, and then answers
//! `prefix(count)` and point `update(index, delta)` in `O(log N)`. The
//! [`baselines`] module holds a brute-force oracle, a segment tree and a
//! Fenwick tree for comparison, and [`harness`] drives differential
//! verification, tracing and benchmarking from the `swtree` binary.
//!
//! ```
//! use swtree::{group::WrappingAdd, SouthwestTree};
//!
//! let mut tree = SouthwestTree::build(WrappingAdd, vec![1, 3, 5, 7, 9, 11, 13, 15, 17]).unwrap();
//! assert_eq!(tree.as_slice(), &[1, 3, 9, 7, 9, 27, 49, 15, 17]);
//! assert_eq!(tree.prefix(5).unwrap(), 25);
//! tree.update(2, &100).unwrap();
//! assert_eq!(tree.prefix(3).unwrap(), 109);
//! ```

pub mod baselines;
pub mod error;
pub mod group;
pub mod harness;
pub mod structure;
pub mod tree;

pub use error::{Error, Result};
pub use group::{AnyElement, AnyGroup, Group};
pub use structure::{PrefixStructure, StructureKind};
pub use tree::{node_range, phantom_count, SouthwestTree, TreeGeometry};
