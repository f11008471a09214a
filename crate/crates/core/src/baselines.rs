//! Reference structures for differential testing and storage comparisons.
//!
//! * [`PrefixOracle`] keeps the logical array untouched and folds on demand.
//!   It is the ground truth.
//! * [`SegmentTree`] is the classic bottom-up layout: `2N - 1` nodes, works
//!   for non-commutative groups.
//! * [`FenwickTree`] uses `N` nodes but only works when the group commutes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{find_noncommuting_pair, Group, COMMUTATIVITY_SEED};
use crate::structure::{PrefixStructure, StructureKind};
use crate::tree::OpStats;

/// Random pairs sampled before a Fenwick tree accepts a group.
pub const COMMUTATIVITY_TRIALS: usize = 100;

fn validate_all<G: Group>(group: &G, items: &[G::Element]) -> Result<()> {
    if items.is_empty() {
        return Err(Error::EmptyStructure);
    }
    items.iter().try_for_each(|e| group.validate(e))
}

fn check_count(count: usize, len: usize) -> Result<()> {
    if count == 0 || count > len {
        return Err(Error::CountOutOfRange { count, len });
    }
    Ok(())
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    Ok(())
}

/// The plain array with O(N) prefix folds.
#[derive(Debug, Clone)]
pub struct PrefixOracle<G: Group> {
    group: G,
    shadow: Vec<G::Element>,
}

impl<G: Group> PrefixOracle<G> {
    pub fn new(group: G, initial: Vec<G::Element>) -> Result<Self> {
        validate_all(&group, &initial)?;
        Ok(Self {
            group,
            shadow: initial,
        })
    }

    /// The current logical array.
    pub fn values(&self) -> &[G::Element] {
        &self.shadow
    }

    /// Left-to-right fold of `values()[range]`.
    pub fn fold(&self, range: std::ops::Range<usize>) -> G::Element {
        let g = &self.group;
        self.shadow[range]
            .iter()
            .fold(g.identity(), |acc, x| g.combine(&acc, x))
    }
}

impl<G: Group> PrefixStructure<G> for PrefixOracle<G> {
    fn kind(&self) -> StructureKind {
        StructureKind::Oracle
    }

    fn len(&self) -> usize {
        self.shadow.len()
    }

    fn storage_len(&self) -> usize {
        self.shadow.len()
    }

    fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)> {
        check_count(count, self.shadow.len())?;
        let stats = OpStats {
            visited: count as u64,
            combines: count as u64,
            writes: 0,
            max_slot: count,
        };
        Ok((self.fold(0..count), stats))
    }

    fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats> {
        check_index(index, self.shadow.len())?;
        self.group.validate(delta)?;
        self.shadow[index] = self.group.combine(&self.shadow[index], delta);
        Ok(OpStats {
            visited: 1,
            combines: 1,
            writes: 1,
            max_slot: index + 1,
        })
    }
}

/// Bottom-up segment tree without padding.
///
/// Node `k` (one-based, `1 <= k < 2N`) lives at `nodes[k - 1]`; leaves are
/// `N..2N` and internal node `k` holds `nodes[2k] · nodes[2k + 1]`.
#[derive(Debug, Clone)]
pub struct SegmentTree<G: Group> {
    group: G,
    nodes: Vec<G::Element>,
    len: usize,
}

impl<G: Group> SegmentTree<G> {
    pub fn new(group: G, initial: Vec<G::Element>) -> Result<Self> {
        validate_all(&group, &initial)?;
        let len = initial.len();
        let mut nodes = Vec::with_capacity(2 * len - 1);
        nodes.resize(len - 1, group.identity());
        nodes.extend(initial);
        let mut tree = Self { group, nodes, len };
        for k in (1..len).rev() {
            tree.pull(k);
        }
        Ok(tree)
    }

    fn node(&self, k: usize) -> &G::Element {
        &self.nodes[k - 1]
    }

    fn pull(&mut self, k: usize) {
        let value = self.group.combine(self.node(2 * k), self.node(2 * k + 1));
        self.nodes[k - 1] = value;
    }

    /// Ordered fold over the half-open leaf range `[lo, hi)`.
    fn fold(&self, lo: usize, hi: usize, stats: &mut OpStats) -> G::Element {
        let g = &self.group;
        let mut left_acc = g.identity();
        let mut right_acc = g.identity();
        let (mut l, mut r) = (lo + self.len, hi + self.len);
        while l < r {
            if l & 1 == 1 {
                left_acc = g.combine(&left_acc, self.node(l));
                stats.visited += 1;
                stats.combines += 1;
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                right_acc = g.combine(self.node(r), &right_acc);
                stats.visited += 1;
                stats.combines += 1;
            }
            l >>= 1;
            r >>= 1;
        }
        stats.combines += 1;
        g.combine(&left_acc, &right_acc)
    }
}

impl<G: Group> PrefixStructure<G> for SegmentTree<G> {
    fn kind(&self) -> StructureKind {
        StructureKind::SegTree
    }

    fn len(&self) -> usize {
        self.len
    }

    fn storage_len(&self) -> usize {
        self.nodes.len()
    }

    fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)> {
        check_count(count, self.len)?;
        let mut stats = OpStats::default();
        let value = self.fold(0, count, &mut stats);
        Ok((value, stats))
    }

    fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats> {
        check_index(index, self.len)?;
        self.group.validate(delta)?;
        let mut k = index + self.len;
        self.nodes[k - 1] = self.group.combine(self.node(k), delta);
        let mut stats = OpStats {
            visited: 1,
            combines: 1,
            writes: 1,
            max_slot: k,
        };
        while k > 1 {
            k >>= 1;
            self.pull(k);
            stats.visited += 1;
            stats.combines += 1;
            stats.writes += 1;
        }
        Ok(stats)
    }
}

/// Binary indexed tree; node `i` (one-based) holds the fold of
/// `I[i - lowbit(i) + 1 ..= i]`.
#[derive(Debug, Clone)]
pub struct FenwickTree<G: Group> {
    group: G,
    nodes: Vec<G::Element>,
}

#[inline]
fn lowbit(i: usize) -> usize {
    i & i.wrapping_neg()
}

impl<G: Group> FenwickTree<G> {
    /// Fails with [`Error::NonCommutative`] if a non-commuting pair turns up
    /// among [`COMMUTATIVITY_TRIALS`] random samples.
    pub fn new(group: G, initial: Vec<G::Element>) -> Result<Self> {
        validate_all(&group, &initial)?;
        let mut rng = ChaCha8Rng::seed_from_u64(COMMUTATIVITY_SEED);
        if let Some((a, b)) = find_noncommuting_pair(&group, &mut rng, COMMUTATIVITY_TRIALS) {
            return Err(Error::NonCommutative(format!(
                "a Fenwick tree needs a commutative group, but {a:?} and {b:?} do not commute"
            )));
        }
        let mut nodes = initial;
        let n = nodes.len();
        for i in 1..=n {
            let parent = i + lowbit(i);
            if parent <= n {
                let value = group.combine(&nodes[parent - 1], &nodes[i - 1]);
                nodes[parent - 1] = value;
            }
        }
        Ok(Self { group, nodes })
    }
}

impl<G: Group> PrefixStructure<G> for FenwickTree<G> {
    fn kind(&self) -> StructureKind {
        StructureKind::Fenwick
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }

    fn storage_len(&self) -> usize {
        self.nodes.len()
    }

    fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)> {
        check_count(count, self.nodes.len())?;
        let mut stats = OpStats {
            max_slot: count,
            ..OpStats::default()
        };
        let mut i = count;
        let mut acc = self.group.identity();
        while i > 0 {
            acc = self.group.combine(&self.nodes[i - 1], &acc);
            stats.visited += 1;
            stats.combines += 1;
            i -= lowbit(i);
        }
        Ok((acc, stats))
    }

    fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats> {
        check_index(index, self.nodes.len())?;
        self.group.validate(delta)?;
        let mut stats = OpStats::default();
        let mut i = index + 1;
        while i <= self.nodes.len() {
            self.nodes[i - 1] = self.group.combine(&self.nodes[i - 1], delta);
            stats.visited += 1;
            stats.combines += 1;
            stats.writes += 1;
            stats.max_slot = i;
            i += lowbit(i);
        }
        Ok(stats)
    }
}
