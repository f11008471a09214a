//! The Southwest tree: prefix accumulation stored in place over the input.
//!
//! The `N` input elements are rewritten into the nodes of a perfect binary
//! tree numbered in post-order, so that every node left of or below a node
//! has a smaller index. With one-based indices, a node `i` of height `h`
//! (leaves have height 1) has
//!
//! * right child `i - 1`,
//! * left child `i - 2^(h-1)`,
//! * stored value `A[i] = A[left] · A[right] · I[i]`, which is the ordered
//!   fold of `I[i - 2^h + 2 ..= i]`.
//!
//! The root sits at `2^(⌊log₂N⌋+1) - 1`. Indices above `N` are *phantom*
//! nodes: they take part in the index arithmetic but have no storage, so
//! the structure holds exactly `N` elements. Heights are never stored;
//! every walk carries the halving child offset `left = 2^(h-1)` instead.
//!
//! The public API takes zero-based element indices for [`SouthwestTree::update`]
//! and a prefix length `count ∈ 1..=N` for [`SouthwestTree::prefix`]. Node
//! numbers reported by the geometry helpers and traces are one-based.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::group::Group;

/// One-based left child of node `index` at height `height` (`height >= 2`).
#[inline]
pub fn left_child(index: usize, height: u32) -> usize {
    index - (1 << (height - 1))
}

/// One-based right child of a non-leaf node.
#[inline]
pub fn right_child(index: usize) -> usize {
    index - 1
}

/// Root of the subtree the walk toward `target` enters next from `curr`,
/// where `left` is `curr`'s child offset. Goes left iff `target <= curr - left`.
///
/// Works for one-based and zero-based numbering alike.
#[inline]
pub fn get_child(target: usize, curr: usize, left: usize) -> usize {
    let diff = if target <= curr - left { left } else { 1 };
    curr - diff
}

/// Number of phantom nodes in the tree over `n` elements.
pub fn phantom_count(n: usize) -> Result<usize> {
    Ok(TreeGeometry::new(n)?.phantom_count())
}

/// The element range folded into stored node `index` of the tree over `n`
/// elements, both one-based.
pub fn node_range(index: usize, n: usize) -> Result<RangeInclusive<usize>> {
    TreeGeometry::new(n)?.node_range(index)
}

/// Shape of the tree over `N` elements. All indices are one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeGeometry {
    len: usize,
    root_left: usize,
}

impl TreeGeometry {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyStructure);
        }
        let root_left = 1usize << (usize::BITS - 1 - len.leading_zeros());
        Ok(Self { len, root_left })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always `false`; construction rejects empty input.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `2^(⌊log₂N⌋+1) - 1`.
    pub fn root_index(&self) -> usize {
        2 * self.root_left - 1
    }

    /// Distance from the root to its left child, `2^⌊log₂N⌋`.
    pub fn root_left(&self) -> usize {
        self.root_left
    }

    /// `⌊log₂N⌋ + 1`; also the most nodes any root-to-node walk visits.
    pub fn root_height(&self) -> u32 {
        self.root_left.trailing_zeros() + 1
    }

    /// Stored plus phantom nodes.
    pub fn node_count(&self) -> usize {
        self.root_index()
    }

    pub fn phantom_count(&self) -> usize {
        self.node_count() - self.len
    }

    pub fn is_phantom(&self, index: usize) -> bool {
        index > self.len
    }

    /// Child offset `2^(h-1)` of node `index`, found by walking down from the
    /// root. Phantom nodes are accepted.
    pub fn child_offset(&self, index: usize) -> Result<usize> {
        if index == 0 || index > self.node_count() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.node_count(),
            });
        }
        let mut curr = self.root_index();
        let mut left = self.root_left;
        while curr != index {
            curr = get_child(index, curr, left);
            left >>= 1;
        }
        Ok(left)
    }

    pub fn node_height(&self, index: usize) -> Result<u32> {
        Ok(self.child_offset(index)?.trailing_zeros() + 1)
    }

    /// Elements `I[lo..=hi]` whose ordered fold node `index` stores.
    pub fn node_range(&self, index: usize) -> Result<RangeInclusive<usize>> {
        if index == 0 || index > self.len {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        let left = self.child_offset(index)?;
        Ok(index + 2 - 2 * left..=index)
    }

    fn root0(&self) -> usize {
        2 * self.root_left - 2
    }
}

/// Work done by a single operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    /// Node indices on the walk, stored or phantom.
    pub visited: u64,
    /// Calls into the group's `combine`.
    pub combines: u64,
    /// Stored nodes rewritten.
    pub writes: u64,
    /// Highest one-based storage slot read or written, 0 if none.
    pub max_slot: usize,
}

impl OpStats {
    #[inline]
    fn touch(&mut self, slot0: usize) {
        self.max_slot = self.max_slot.max(slot0 + 1);
    }
}

/// Running totals over every operation on a tree.
#[derive(Debug, Default)]
struct Counters {
    operations: AtomicU64,
    visited: AtomicU64,
    combines: AtomicU64,
    writes: AtomicU64,
    max_visited: AtomicU64,
    max_slot: AtomicU64,
}

/// Snapshot of a tree's cumulative counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CounterSnapshot {
    pub operations: u64,
    pub visited: u64,
    pub combines: u64,
    pub writes: u64,
    /// Largest `visited` of any single prefix or update.
    pub max_visited: u64,
    pub max_slot: usize,
}

impl Counters {
    fn record(&self, stats: &OpStats) {
        self.operations.fetch_add(1, Ordering::Relaxed);
        self.visited.fetch_add(stats.visited, Ordering::Relaxed);
        self.combines.fetch_add(stats.combines, Ordering::Relaxed);
        self.writes.fetch_add(stats.writes, Ordering::Relaxed);
        self.max_visited.fetch_max(stats.visited, Ordering::Relaxed);
        self.max_slot
            .fetch_max(stats.max_slot as u64, Ordering::Relaxed);
    }

    fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            operations: self.operations.load(Ordering::Relaxed),
            visited: self.visited.load(Ordering::Relaxed),
            combines: self.combines.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
            max_visited: self.max_visited.load(Ordering::Relaxed),
            max_slot: self.max_slot.load(Ordering::Relaxed) as usize,
        }
    }

    fn reset(&self) {
        for c in [
            &self.operations,
            &self.visited,
            &self.combines,
            &self.writes,
            &self.max_visited,
            &self.max_slot,
        ] {
            c.store(0, Ordering::Relaxed);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

/// One node index on a prefix walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub node: usize,
    pub phantom: bool,
    /// Direction taken from this node; `None` at the target.
    pub turn: Option<Turn>,
}

/// A stored node folded into a prefix result and the one-based element
/// range it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub node: usize,
    pub range: RangeInclusive<usize>,
}

/// Full record of one prefix computation.
#[derive(Debug, Clone, PartialEq)]
pub struct AccumulateTrace<E> {
    pub count: usize,
    pub value: E,
    pub steps: Vec<TraceStep>,
    /// In fold order, left to right.
    pub contributions: Vec<TraceEntry>,
    pub stats: OpStats,
}

impl<E> AccumulateTrace<E> {
    pub fn turns(&self) -> Vec<Turn> {
        self.steps.iter().filter_map(|s| s.turn).collect()
    }

    /// Checks that the contribution ranges are ascending, disjoint and
    /// contiguous, and that together they cover exactly `1..=count`.
    pub fn check_partition(&self) -> std::result::Result<(), String> {
        let mut next = 1;
        for entry in &self.contributions {
            if *entry.range.start() != next {
                return Err(format!(
                    "node {} covers {:?} but the next uncovered element is {next}",
                    entry.node, entry.range
                ));
            }
            if entry.range.end() < entry.range.start() {
                return Err(format!("node {} has an empty range", entry.node));
            }
            next = entry.range.end() + 1;
        }
        if next != self.count + 1 {
            return Err(format!(
                "contributions cover 1..{next} instead of 1..={}",
                self.count
            ));
        }
        Ok(())
    }
}

/// Counts from building a tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Every node of the geometry, phantoms included, is visited once.
    pub visited: u64,
    pub combines: u64,
    /// Internal stored nodes rewritten, at most `N`.
    pub writes: u64,
    pub max_slot: usize,
}

/// Prefix accumulation over `N` group elements in exactly `N` slots.
///
/// Reads ([`prefix`](Self::prefix), [`trace`](Self::trace)) take `&self` and
/// may run concurrently; [`update`](Self::update) needs `&mut self`.
#[derive(Debug)]
pub struct SouthwestTree<G: Group> {
    group: G,
    elements: Vec<G::Element>,
    geometry: TreeGeometry,
    build_stats: BuildStats,
    counters: Counters,
}

impl<G: Group + Clone> Clone for SouthwestTree<G> {
    fn clone(&self) -> Self {
        Self {
            group: self.group.clone(),
            elements: self.elements.clone(),
            geometry: self.geometry,
            build_stats: self.build_stats,
            counters: Counters::default(),
        }
    }
}

impl<G: Group> SouthwestTree<G> {
    /// Validates `initial` and rewrites it in place into tree form.
    pub fn build(group: G, initial: Vec<G::Element>) -> Result<Self> {
        let geometry = TreeGeometry::new(initial.len())?;
        for element in &initial {
            group.validate(element)?;
        }
        let mut tree = Self {
            group,
            elements: initial,
            geometry,
            build_stats: BuildStats::default(),
            counters: Counters::default(),
        };
        let mut stats = OpStats::default();
        tree.build_rec(geometry.root0(), geometry.root_left, &mut stats);
        tree.build_stats = BuildStats {
            visited: stats.visited,
            combines: stats.combines,
            writes: stats.writes,
            max_slot: stats.max_slot,
        };
        Ok(tree)
    }

    fn build_rec(&mut self, i: usize, left: usize, stats: &mut OpStats) {
        stats.visited += 1;
        if left == 1 {
            return;
        }
        self.build_rec(i - left, left >> 1, stats);
        self.build_rec(i - 1, left >> 1, stats);
        self.combine_children0(i, left, stats);
    }

    /// `A[i] ← A[i-left] · A[i-1] · A[i]` for stored `i`; phantoms are skipped.
    fn combine_children0(&mut self, i: usize, left: usize, stats: &mut OpStats) {
        if i < self.elements.len() {
            let g = &self.group;
            let e = &self.elements;
            let children = g.combine(&e[i - left], &e[i - 1]);
            let value = g.combine(&children, &e[i]);
            self.elements[i] = value;
            stats.combines += 2;
            stats.writes += 1;
            stats.touch(i);
        }
    }

    /// `A[i] ← inv(A[i-1]) · inv(A[i-left]) · A[i]` for stored `i`, which
    /// recovers `I[i]` while the children still hold tree values.
    fn invert_children0(&mut self, i: usize, left: usize, stats: &mut OpStats) {
        if i < self.elements.len() {
            let g = &self.group;
            let e = &self.elements;
            let inv = g.combine(&g.invert(&e[i - 1]), &g.invert(&e[i - left]));
            let value = g.combine(&inv, &e[i]);
            self.elements[i] = value;
            stats.combines += 2;
            stats.writes += 1;
            stats.touch(i);
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; empty trees cannot be built.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn geometry(&self) -> TreeGeometry {
        self.geometry
    }

    /// The stored array `A`, one slot per input element.
    pub fn as_slice(&self) -> &[G::Element] {
        &self.elements
    }

    pub fn storage_len(&self) -> usize {
        self.elements.len()
    }

    pub fn build_stats(&self) -> BuildStats {
        self.build_stats
    }

    pub fn counters(&self) -> CounterSnapshot {
        self.counters.snapshot()
    }

    pub fn reset_counters(&self) {
        self.counters.reset();
    }

    fn check_count(&self, count: usize) -> Result<()> {
        if count == 0 || count > self.len() {
            return Err(Error::CountOutOfRange {
                count,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Ordered fold `I[0] · I[1] · … · I[count-1]` for `count ∈ 1..=N`.
    pub fn prefix(&self, count: usize) -> Result<G::Element> {
        self.prefix_counted(count).map(|(v, _)| v)
    }

    pub fn prefix_counted(&self, count: usize) -> Result<(G::Element, OpStats)> {
        self.check_count(count)?;
        let (value, stats) = self.walk_prefix(count - 1, |_, _, _| {});
        self.counters.record(&stats);
        Ok((value, stats))
    }

    /// Like [`prefix`](Self::prefix), also recording the walk and every
    /// stored node folded into the result.
    pub fn trace(&self, count: usize) -> Result<AccumulateTrace<G::Element>> {
        self.check_count(count)?;
        let len = self.len();
        let mut steps = Vec::new();
        let mut contributions = Vec::new();
        let (value, stats) = self.walk_prefix(count - 1, |curr, left, turn| {
            let node = curr + 1;
            steps.push(TraceStep {
                node,
                phantom: node > len,
                turn,
            });
            match turn {
                Some(Turn::Right) => {
                    let child = node - left;
                    contributions.push(TraceEntry {
                        node: child,
                        range: child + 2 - left..=child,
                    });
                }
                None => contributions.push(TraceEntry {
                    node,
                    range: node + 2 - 2 * left..=node,
                }),
                Some(Turn::Left) => {}
            }
        });
        self.counters.record(&stats);
        Ok(AccumulateTrace {
            count,
            value,
            steps,
            contributions,
            stats,
        })
    }

    /// Walks from the root to zero-based `target`, folding left to right.
    /// Going right folds in the left child, which is never phantom because
    /// it lies below `target`.
    fn walk_prefix(
        &self,
        target: usize,
        mut visit: impl FnMut(usize, usize, Option<Turn>),
    ) -> (G::Element, OpStats) {
        let g = &self.group;
        let mut stats = OpStats::default();
        let mut acc: Option<G::Element> = None;
        let fold = |acc: &mut Option<G::Element>, slot: usize, stats: &mut OpStats| {
            let v = &self.elements[slot];
            stats.touch(slot);
            *acc = Some(match acc.take() {
                None => v.clone(),
                Some(a) => {
                    stats.combines += 1;
                    g.combine(&a, v)
                }
            });
        };
        let mut curr = self.geometry.root0();
        let mut left = self.geometry.root_left;
        loop {
            stats.visited += 1;
            if curr == target {
                visit(curr, left, None);
                fold(&mut acc, curr, &mut stats);
                break;
            }
            let left_child = curr - left;
            if target <= left_child {
                visit(curr, left, Some(Turn::Left));
                curr = left_child;
            } else {
                visit(curr, left, Some(Turn::Right));
                fold(&mut acc, left_child, &mut stats);
                curr -= 1;
            }
            left >>= 1;
        }
        (acc.expect("walk ends at the target"), stats)
    }

    /// `I[index] ← I[index] · delta` for zero-based `index`.
    pub fn update(&mut self, index: usize, delta: &G::Element) -> Result<()> {
        self.update_counted(index, delta).map(|_| ())
    }

    pub fn update_counted(&mut self, index: usize, delta: &G::Element) -> Result<OpStats> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        self.group.validate(delta)?;
        let mut stats = OpStats::default();
        self.update_rec(
            index,
            delta,
            self.geometry.root0(),
            self.geometry.root_left,
            &mut stats,
        );
        self.counters.record(&stats);
        Ok(stats)
    }

    fn update_rec(
        &mut self,
        target: usize,
        delta: &G::Element,
        curr: usize,
        left: usize,
        stats: &mut OpStats,
    ) {
        stats.visited += 1;
        if curr == target {
            let value = self.group.combine(&self.elements[curr], delta);
            self.elements[curr] = value;
            stats.combines += 1;
            stats.writes += 1;
            stats.touch(curr);
            return;
        }
        self.invert_children0(curr, left, stats);
        self.update_rec(
            target,
            delta,
            get_child(target, curr, left),
            left >> 1,
            stats,
        );
        self.combine_children0(curr, left, stats);
    }

    fn node_offset(&self, index: usize, left: usize) -> Result<usize> {
        let invalid = Error::InvalidNode { index, left };
        let actual = self
            .geometry
            .child_offset(index)
            .map_err(|_| invalid.clone())?;
        if actual != left || left < 2 {
            return Err(invalid);
        }
        Ok(index - 1)
    }

    /// Applies the node-value rule at one-based internal node `index` with
    /// child offset `left`. Phantom nodes are left alone.
    ///
    /// This is a raw building block: calling it on a node already in tree
    /// form folds its children in twice. Pair it with
    /// [`invert_children`](Self::invert_children).
    pub fn combine_children(&mut self, index: usize, left: usize) -> Result<()> {
        let i = self.node_offset(index, left)?;
        self.combine_children0(i, left, &mut OpStats::default());
        Ok(())
    }

    /// Strips the children's values from one-based internal node `index`,
    /// leaving the bare input element there. Phantom nodes are left alone.
    pub fn invert_children(&mut self, index: usize, left: usize) -> Result<()> {
        let i = self.node_offset(index, left)?;
        self.invert_children0(i, left, &mut OpStats::default());
        Ok(())
    }

    /// Recovers the current logical input array, reusing the same storage.
    pub fn into_initial(mut self) -> Vec<G::Element> {
        let mut stats = OpStats::default();
        let (root, left) = (self.geometry.root0(), self.geometry.root_left);
        self.unbuild_rec(root, left, &mut stats);
        self.elements
    }

    /// Parents are inverted before their children so that each inversion
    /// still sees tree-form children.
    fn unbuild_rec(&mut self, i: usize, left: usize, stats: &mut OpStats) {
        if left == 1 {
            return;
        }
        self.invert_children0(i, left, stats);
        self.unbuild_rec(i - left, left >> 1, stats);
        self.unbuild_rec(i - 1, left >> 1, stats);
    }
}
