//! A common interface over the tree and the baselines, used by the
//! differential harness.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{FenwickTree, PrefixOracle, SegmentTree};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::tree::{BuildStats, OpStats, SouthwestTree};

/// Point update / prefix query structure over a group.
///
/// `update` takes a zero-based index; `prefix` takes a length in `1..=len`.
pub trait PrefixStructure<G: Group> {
    fn kind(&self) -> StructureKind;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Group elements held in memory.
    fn storage_len(&self) -> usize;

    fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)>;

    fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats>;

    /// Construction counters, for structures that keep them.
    fn build_stats(&self) -> Option<BuildStats> {
        None
    }

    fn prefix(&self, count: usize) -> Result<G::Element> {
        self.prefix_counted(count).map(|(v, _)| v)
    }

    fn update(&mut self, index: usize, delta: &G::Element) -> Result<()> {
        self.update_counted(index, delta).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    Oracle,
    SegTree,
    Fenwick,
    SwTree,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] = [
        StructureKind::SwTree,
        StructureKind::SegTree,
        StructureKind::Fenwick,
        StructureKind::Oracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            StructureKind::Oracle => "oracle",
            StructureKind::SegTree => "segtree",
            StructureKind::Fenwick => "fenwick",
            StructureKind::SwTree => "swtree",
        }
    }

    /// Builds a structure of this kind over `initial`.
    pub fn build<G>(self, group: G, initial: Vec<G::Element>) -> Result<Box<dyn PrefixStructure<G>>>
    where
        G: Group + Clone + 'static,
    {
        Ok(match self {
            StructureKind::Oracle => Box::new(PrefixOracle::new(group, initial)?),
            StructureKind::SegTree => Box::new(SegmentTree::new(group, initial)?),
            StructureKind::Fenwick => Box::new(FenwickTree::new(group, initial)?),
            StructureKind::SwTree => Box::new(SouthwestTree::build(group, initial)?),
        })
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.id() == s.trim())
            .ok_or_else(|| Error::UnknownStructure(s.to_string()))
    }
}

impl<G: Group> PrefixStructure<G> for SouthwestTree<G> {
    fn kind(&self) -> StructureKind {
        StructureKind::SwTree
    }

    fn len(&self) -> usize {
        SouthwestTree::len(self)
    }

    fn storage_len(&self) -> usize {
        SouthwestTree::storage_len(self)
    }

    fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)> {
        SouthwestTree::prefix_counted(self, count)
    }

    fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats> {
        SouthwestTree::update_counted(self, index, delta)
    }

    fn build_stats(&self) -> Option<BuildStats> {
        Some(SouthwestTree::build_stats(self))
    }
}
