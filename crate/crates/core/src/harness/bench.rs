//! Operation-count and wall-time benchmarks.
//!
//! Everything under `deterministic` depends only on the configuration and is
//! byte-identical across runs; wall-clock figures live under
//! `nondeterministic_timing`.

use std::time::Instant;

use serde::Serialize;

use super::workload::{initial_array, random_ops, Op};
use super::HarnessError;
use crate::group::AnyGroup;
use crate::structure::StructureKind;
use crate::tree::TreeGeometry;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub group: AnyGroup,
    pub sizes: Vec<usize>,
    pub ops: usize,
    pub seed: u64,
    pub structures: Vec<StructureKind>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BenchReport {
    pub group: String,
    pub seed: u64,
    pub ops_per_size: usize,
    pub deterministic: Vec<SizeCounts>,
    pub nondeterministic_timing: Vec<SizeTiming>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SizeCounts {
    pub n: usize,
    /// `⌊log₂N⌋ + 1`.
    pub depth_bound: u32,
    pub tree_nodes: usize,
    pub phantom_nodes: usize,
    pub structures: Vec<StructureCounts>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StructureCounts {
    pub structure: String,
    pub storage_elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_node_visits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_combine_writes: Option<u64>,
    pub prefix_ops: usize,
    pub update_ops: usize,
    pub mean_visited: f64,
    pub max_visited: u64,
    pub max_slot: usize,
    /// Only reported for the Southwest tree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_depth_bound: Option<bool>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SizeTiming {
    pub n: usize,
    pub structures: Vec<StructureTiming>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StructureTiming {
    pub structure: String,
    pub build_ns: u64,
    pub op_p50_ns: u64,
    pub op_p90_ns: u64,
    pub op_p99_ns: u64,
    pub op_max_ns: u64,
}

fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[rank]
}

/// Runs every structure over the same generated workload per size.
/// Sizes run one after another so timings do not interfere.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, HarnessError> {
    let mut deterministic = Vec::new();
    let mut timing = Vec::new();
    for &n in &config.sizes {
        let geometry = TreeGeometry::new(n)?;
        let init = initial_array(&config.group, n, config.seed);
        let ops = random_ops(&config.group, n, config.ops, config.seed);
        let mut counts = Vec::new();
        let mut times = Vec::new();
        for &kind in &config.structures {
            let start = Instant::now();
            let mut s = kind.build(config.group, init.clone()).map_err(|source| {
                HarnessError::Construction {
                    structure: kind,
                    source,
                }
            })?;
            let build_ns = start.elapsed().as_nanos() as u64;
            let build = s.build_stats();

            let mut visited_total = 0u64;
            let mut max_visited = 0u64;
            let mut max_slot = 0usize;
            let (mut prefix_ops, mut update_ops) = (0, 0);
            let mut op_ns = Vec::with_capacity(ops.len());
            for op in &ops {
                let start = Instant::now();
                let stats = match op {
                    Op::Update { index, delta } => {
                        update_ops += 1;
                        s.update_counted(index - 1, delta)?
                    }
                    Op::Accumulate { count, .. } => {
                        prefix_ops += 1;
                        s.prefix_counted(*count)?.1
                    }
                };
                op_ns.push(start.elapsed().as_nanos() as u64);
                visited_total += stats.visited;
                max_visited = max_visited.max(stats.visited);
                max_slot = max_slot.max(stats.max_slot);
            }
            op_ns.sort_unstable();

            let is_sw = kind == StructureKind::SwTree;
            counts.push(StructureCounts {
                structure: kind.id().to_string(),
                storage_elements: s.storage_len(),
                build_node_visits: build.map(|b| b.visited),
                build_combine_writes: build.map(|b| b.writes),
                prefix_ops,
                update_ops,
                mean_visited: if ops.is_empty() {
                    0.0
                } else {
                    visited_total as f64 / ops.len() as f64
                },
                max_visited,
                max_slot,
                within_depth_bound: is_sw.then(|| max_visited <= geometry.root_height() as u64),
            });
            times.push(StructureTiming {
                structure: kind.id().to_string(),
                build_ns,
                op_p50_ns: percentile(&op_ns, 0.50),
                op_p90_ns: percentile(&op_ns, 0.90),
                op_p99_ns: percentile(&op_ns, 0.99),
                op_max_ns: op_ns.last().copied().unwrap_or(0),
            });
        }
        deterministic.push(SizeCounts {
            n,
            depth_bound: geometry.root_height(),
            tree_nodes: geometry.node_count(),
            phantom_nodes: geometry.phantom_count(),
            structures: counts,
        });
        timing.push(SizeTiming {
            n,
            structures: times,
        });
    }
    Ok(BenchReport {
        group: config.group.to_string(),
        seed: config.seed,
        ops_per_size: config.ops,
        deterministic,
        nondeterministic_timing: timing,
    })
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without timings; stable across runs.
    pub fn deterministic_json(&self) -> String {
        serde_json::to_string_pretty(&self.deterministic).expect("report serializes")
    }
}
