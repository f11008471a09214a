//! Differential replay: every structure sees the same operations and each
//! accumulate is compared exactly against the oracle.

use rayon::prelude::*;

use super::shrink::shrink;
use super::workload::{Op, WorkloadTrace};
use super::HarnessError;
use crate::baselines::PrefixOracle;
use crate::group::{AnyElement, AnyGroup};
use crate::structure::{PrefixStructure, StructureKind};

/// Builds a structure for replay. Tests substitute faulty structures here.
pub type Factory = dyn Fn(
        StructureKind,
        AnyGroup,
        Vec<AnyElement>,
    ) -> crate::Result<Box<dyn PrefixStructure<AnyGroup>>>
    + Sync;

pub fn default_factory(
    kind: StructureKind,
    group: AnyGroup,
    init: Vec<AnyElement>,
) -> crate::Result<Box<dyn PrefixStructure<AnyGroup>>> {
    kind.build(group, init)
}

/// First disagreement found during a replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// One-based position of the operation in the trace.
    pub op: usize,
    pub count: usize,
    /// `None` when the trace's own expected literal disagreed with the oracle.
    pub structure: Option<StructureKind>,
    pub expected: AnyElement,
    pub actual: AnyElement,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.structure {
            Some(s) => write!(
                f,
                "op {}: {s} accumulate({}) returned {} but the oracle gives {}",
                self.op, self.count, self.actual, self.expected
            ),
            None => write!(
                f,
                "op {}: trace expects accumulate({}) = {} but the oracle gives {}",
                self.op, self.count, self.expected, self.actual
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplayReport {
    pub updates: usize,
    pub accumulates: usize,
    pub mismatch: Option<Mismatch>,
}

/// Replays `trace` through its structures, stopping at the first mismatch.
pub fn replay(trace: &WorkloadTrace, factory: &Factory) -> Result<ReplayReport, HarnessError> {
    replay_ops(trace, &trace.ops, factory)
}

fn replay_ops(
    trace: &WorkloadTrace,
    ops: &[Op],
    factory: &Factory,
) -> Result<ReplayReport, HarnessError> {
    let group = trace.group;
    let mut oracle = PrefixOracle::new(group, trace.init.clone())?;
    let mut structures = trace
        .structures
        .iter()
        .map(|&kind| {
            factory(kind, group, trace.init.clone()).map_err(|source| HarnessError::Construction {
                structure: kind,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = ReplayReport::default();
    for (ordinal, op) in ops.iter().enumerate() {
        match op {
            Op::Update { index, delta } => {
                oracle.update(index - 1, delta)?;
                for s in &mut structures {
                    s.update(index - 1, delta)?;
                }
                report.updates += 1;
            }
            Op::Accumulate { count, expected } => {
                report.accumulates += 1;
                let truth = oracle.prefix(*count)?;
                if let Some(expected) = expected {
                    if *expected != truth {
                        report.mismatch = Some(Mismatch {
                            op: ordinal + 1,
                            count: *count,
                            structure: None,
                            expected: expected.clone(),
                            actual: truth,
                        });
                        return Ok(report);
                    }
                }
                for s in &structures {
                    let actual = s.prefix(*count)?;
                    if actual != truth {
                        report.mismatch = Some(Mismatch {
                            op: ordinal + 1,
                            count: *count,
                            structure: Some(s.kind()),
                            expected: truth,
                            actual,
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Fills every accumulate's expected value from the oracle.
pub fn annotate_expected(trace: &mut WorkloadTrace) -> Result<(), HarnessError> {
    let mut oracle = PrefixOracle::new(trace.group, trace.init.clone())?;
    for op in &mut trace.ops {
        match op {
            Op::Update { index, delta } => oracle.update(*index - 1, delta)?,
            Op::Accumulate { count, expected } => *expected = Some(oracle.prefix(*count)?),
        }
    }
    Ok(())
}

/// Reduces a failing trace to a small one that still fails, with oracle
/// values attached to every accumulate.
pub fn minimize(trace: &WorkloadTrace, factory: &Factory) -> Result<WorkloadTrace, HarnessError> {
    let fails =
        |ops: &[Op]| matches!(replay_ops(trace, ops, factory), Ok(r) if r.mismatch.is_some());
    let ops = shrink(&trace.ops, fails);
    let mut small = WorkloadTrace {
        ops,
        ..trace.clone()
    };
    annotate_expected(&mut small)?;
    Ok(small)
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub group: AnyGroup,
    pub sizes: Vec<usize>,
    pub ops: usize,
    pub seed: u64,
    pub structures: Vec<StructureKind>,
}

#[derive(Debug, Clone)]
pub struct SizeOutcome {
    pub n: usize,
    pub report: ReplayReport,
    /// Minimized reproducer when `report.mismatch` is set.
    pub reproducer: Option<WorkloadTrace>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub outcomes: Vec<SizeOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.report.mismatch.is_none())
    }

    pub fn first_failure(&self) -> Option<&SizeOutcome> {
        self.outcomes.iter().find(|o| o.report.mismatch.is_some())
    }

    pub fn total_accumulates(&self) -> usize {
        self.outcomes.iter().map(|o| o.report.accumulates).sum()
    }

    /// One line per size, identical across runs for the same config.
    pub fn render(&self, config: &VerifyConfig) -> String {
        let ids: Vec<_> = config.structures.iter().map(|s| s.id()).collect();
        let mut out = format!(
            "verify group={} seed={} ops={} structures={}\n",
            config.group,
            config.seed,
            config.ops,
            ids.join(",")
        );
        for o in &self.outcomes {
            match &o.report.mismatch {
                None => out.push_str(&format!(
                    "n={} updates={} accumulates={} ok\n",
                    o.n, o.report.updates, o.report.accumulates
                )),
                Some(m) => out.push_str(&format!("n={} FAIL {m}\n", o.n)),
            }
        }
        let failed = self
            .outcomes
            .iter()
            .filter(|o| o.report.mismatch.is_some())
            .count();
        out.push_str(&format!(
            "summary: {} sizes, {} accumulates checked, {} failing sizes\n",
            self.outcomes.len(),
            self.total_accumulates(),
            failed
        ));
        out
    }
}

/// Runs one generated workload per size, in parallel across sizes.
pub fn verify(config: &VerifyConfig, factory: &Factory) -> Result<VerifyReport, HarnessError> {
    let outcomes = config
        .sizes
        .par_iter()
        .map(|&n| {
            let trace = WorkloadTrace::generate(
                config.group,
                n,
                config.ops,
                config.seed,
                config.structures.clone(),
            );
            let report = replay(&trace, factory)?;
            let reproducer = match report.mismatch {
                Some(_) => Some(minimize(&trace, factory)?),
                None => None,
            };
            Ok(SizeOutcome {
                n,
                report,
                reproducer,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(VerifyReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::OpStats;

    /// Southwest tree whose prefix is wrong once element 3 has been updated
    /// twice.
    struct Faulty {
        inner: Box<dyn PrefixStructure<AnyGroup>>,
        hits: usize,
    }

    impl PrefixStructure<AnyGroup> for Faulty {
        fn kind(&self) -> StructureKind {
            StructureKind::SwTree
        }
        fn len(&self) -> usize {
            self.inner.len()
        }
        fn storage_len(&self) -> usize {
            self.inner.storage_len()
        }
        fn prefix_counted(&self, count: usize) -> crate::Result<(AnyElement, OpStats)> {
            let (v, s) = self.inner.prefix_counted(count)?;
            if self.hits >= 2 && count >= 3 {
                return Ok((AnyElement::Int(-12345), s));
            }
            Ok((v, s))
        }
        fn update_counted(&mut self, index: usize, delta: &AnyElement) -> crate::Result<OpStats> {
            if index == 2 {
                self.hits += 1;
            }
            self.inner.update_counted(index, delta)
        }
    }

    fn faulty_factory(
        kind: StructureKind,
        group: AnyGroup,
        init: Vec<AnyElement>,
    ) -> crate::Result<Box<dyn PrefixStructure<AnyGroup>>> {
        Ok(Box::new(Faulty {
            inner: kind.build(group, init)?,
            hits: 0,
        }))
    }

    fn config(group: &str, sizes: Vec<usize>, structures: Vec<StructureKind>) -> VerifyConfig {
        VerifyConfig {
            group: group.parse().unwrap(),
            sizes,
            ops: 300,
            seed: 7,
            structures,
        }
    }

    #[test]
    fn clean_structures_pass() {
        let cfg = config(
            "perm:8",
            (1..=40).collect(),
            vec![StructureKind::SwTree, StructureKind::SegTree],
        );
        let report = verify(&cfg, &default_factory).unwrap();
        assert!(report.passed());
        assert_eq!(
            report.render(&cfg),
            verify(&cfg, &default_factory).unwrap().render(&cfg)
        );
    }

    #[test]
    fn faulty_structure_is_caught_and_minimized() {
        let cfg = config("wrap-add", vec![9], vec![StructureKind::SwTree]);
        let report = verify(&cfg, &faulty_factory).unwrap();
        assert!(!report.passed());
        let failure = report.first_failure().unwrap();
        let small = failure.reproducer.as_ref().unwrap();
        // two updates to element 3 and one accumulate covering it
        assert_eq!(small.ops.len(), 3, "{}", small.emit());
        assert!(replay(small, &faulty_factory).unwrap().mismatch.is_some());
        assert!(replay(small, &default_factory).unwrap().mismatch.is_none());
        let reparsed = WorkloadTrace::parse(&small.emit()).unwrap();
        assert_eq!(&reparsed, small);
    }

    #[test]
    fn wrong_expected_value_cites_the_op() {
        let text = "group wrap-add\nn 9\nseed 0\ninit 1 3 5 7 9 11 13 15 17\n\
                    U 3 100\nA 3 109\nA 2 5\n";
        let trace = WorkloadTrace::parse(text).unwrap();
        let m = replay(&trace, &default_factory).unwrap().mismatch.unwrap();
        assert_eq!(m.op, 3);
        assert_eq!(m.structure, None);
        assert_eq!(m.actual, AnyElement::Int(4));
    }

    #[test]
    fn fenwick_on_permutations_fails_to_build() {
        let cfg = config("perm:3", vec![1, 2], vec![StructureKind::Fenwick]);
        match verify(&cfg, &default_factory) {
            Err(HarnessError::Construction { structure, source }) => {
                assert_eq!(structure, StructureKind::Fenwick);
                assert!(matches!(source, crate::Error::NonCommutative(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
