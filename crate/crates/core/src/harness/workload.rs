//! Workload traces: a header followed by one operation per line.
//!
//! ```text
//! # comments and blank lines are ignored
//! group perm:3
//! n 4
//! seed 7
//! structures swtree,segtree
//! init (0,1,2) (1,2,0) (2,0,1) (0,2,1)
//! U 3 (1,0,2)
//! A 3 (2,1,0)
//! A 1
//! ```
//!
//! `U <i> <delta>` right-composes `delta` onto element `i`; `A <i>
//! [expected]` accumulates the first `i` elements and, when `expected` is
//! given, checks it. Indices are one-based. Header lines come first; `init`
//! is optional and is regenerated from `seed` when missing.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::group::{AnyElement, AnyGroup, Group};
use crate::structure::StructureKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Update {
        index: usize,
        delta: AnyElement,
    },
    Accumulate {
        count: usize,
        expected: Option<AnyElement>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadTrace {
    pub group: AnyGroup,
    pub n: usize,
    pub seed: u64,
    pub structures: Vec<StructureKind>,
    pub init: Vec<AnyElement>,
    pub ops: Vec<Op>,
}

/// Deterministic generator for one `(seed, n)` pair. `stream` separates the
/// initial array from the operation sequence.
fn rng_for(seed: u64, n: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((n as u64) << 1 | stream);
    rng
}

pub fn initial_array(group: &AnyGroup, n: usize, seed: u64) -> Vec<AnyElement> {
    let mut rng = rng_for(seed, n, 0);
    (0..n).map(|_| group.random_element(&mut rng)).collect()
}

/// Half updates, half accumulates, uniformly spread over the indices.
pub fn random_ops(group: &AnyGroup, n: usize, count: usize, seed: u64) -> Vec<Op> {
    let mut rng = rng_for(seed, n, 1);
    (0..count)
        .map(|_| {
            let index = rng.gen_range(1..=n);
            if rng.gen_bool(0.5) {
                Op::Update {
                    index,
                    delta: group.random_element(&mut rng),
                }
            } else {
                Op::Accumulate {
                    count: index,
                    expected: None,
                }
            }
        })
        .collect()
}

impl WorkloadTrace {
    pub fn generate(
        group: AnyGroup,
        n: usize,
        ops: usize,
        seed: u64,
        structures: Vec<StructureKind>,
    ) -> Self {
        Self {
            init: initial_array(&group, n, seed),
            ops: random_ops(&group, n, ops, seed),
            group,
            n,
            seed,
            structures,
        }
    }

    /// Canonical text form; `parse(emit(t)) == t`.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let ids: Vec<_> = self.structures.iter().map(|s| s.id()).collect();
        let _ = writeln!(out, "group {}", self.group);
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "structures {}", ids.join(","));
        out.push_str("init");
        for e in &self.init {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
        for op in &self.ops {
            let _ = match op {
                Op::Update { index, delta } => writeln!(out, "U {index} {delta}"),
                Op::Accumulate {
                    count,
                    expected: Some(e),
                } => writeln!(out, "A {count} {e}"),
                Op::Accumulate {
                    count,
                    expected: None,
                } => writeln!(out, "A {count}"),
            };
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut group: Option<AnyGroup> = None;
        let mut n: Option<usize> = None;
        let mut seed: Option<u64> = None;
        let mut structures: Option<Vec<StructureKind>> = None;
        let mut init: Option<Vec<AnyElement>> = None;
        let mut ops = Vec::new();

        for (number, raw) in text.lines().enumerate() {
            let line = number + 1;
            let err = |message: String| HarnessError::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let key = fields.next().expect("non-empty line");
            let rest: Vec<&str> = fields.collect();
            let single = |what: &str| -> Result<&str, HarnessError> {
                match rest.as_slice() {
                    [v] => Ok(*v),
                    _ => Err(err(format!("`{key}` takes exactly one {what}"))),
                }
            };
            let header_done = !ops.is_empty();
            let late = || err(format!("header line `{key}` after the first operation"));
            match key {
                "group" => {
                    if header_done {
                        return Err(late());
                    }
                    group = Some(
                        single("group id")?
                            .parse()
                            .map_err(|e| err(format!("{e}")))?,
                    );
                }
                "n" => {
                    if header_done {
                        return Err(late());
                    }
                    let v: usize = single("size")?
                        .parse()
                        .map_err(|e| err(format!("bad size: {e}")))?;
                    if v == 0 {
                        return Err(err("n must be at least 1".into()));
                    }
                    n = Some(v);
                }
                "seed" => {
                    if header_done {
                        return Err(late());
                    }
                    seed = Some(
                        single("seed")?
                            .parse()
                            .map_err(|e| err(format!("bad seed: {e}")))?,
                    );
                }
                "structures" => {
                    if header_done {
                        return Err(late());
                    }
                    let list = rest.join("");
                    structures = Some(
                        list.split(',')
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse().map_err(|e| err(format!("{e}"))))
                            .collect::<Result<_, _>>()?,
                    );
                }
                "init" => {
                    if header_done {
                        return Err(late());
                    }
                    let g = group.ok_or_else(|| err("`init` before `group`".into()))?;
                    init = Some(
                        rest.iter()
                            .map(|lit| g.parse_element(lit).map_err(|e| err(e.to_string())))
                            .collect::<Result<_, _>>()?,
                    );
                }
                "U" | "A" => {
                    let g = group.ok_or_else(|| err("operation before `group`".into()))?;
                    let size = n.ok_or_else(|| err("operation before `n`".into()))?;
                    let (index, literal) = match rest.as_slice() {
                        [i] => (*i, None),
                        [i, lit] => (*i, Some(*lit)),
                        _ => return Err(err(format!("malformed `{key}` record"))),
                    };
                    let index: usize = index
                        .parse()
                        .map_err(|e| err(format!("bad index `{index}`: {e}")))?;
                    if index == 0 || index > size {
                        return Err(err(format!("index {index} is outside 1..={size}")));
                    }
                    let element = literal
                        .map(|lit| g.parse_element(lit).map_err(|e| err(e.to_string())))
                        .transpose()?;
                    ops.push(if key == "U" {
                        Op::Update {
                            index,
                            delta: element
                                .ok_or_else(|| err("`U` needs a delta element".into()))?,
                        }
                    } else {
                        Op::Accumulate {
                            count: index,
                            expected: element,
                        }
                    });
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }

        let missing = |what: &str| HarnessError::Parse {
            line: 0,
            message: format!("missing `{what}` header"),
        };
        let group = group.ok_or_else(|| missing("group"))?;
        let n = n.ok_or_else(|| missing("n"))?;
        let seed = seed.ok_or_else(|| missing("seed"))?;
        let init = match init {
            Some(init) if init.len() != n => {
                return Err(HarnessError::Parse {
                    line: 0,
                    message: format!("`init` has {} elements but n is {n}", init.len()),
                })
            }
            Some(init) => init,
            None => initial_array(&group, n, seed),
        };
        Ok(Self {
            group,
            n,
            seed,
            structures: structures.unwrap_or_else(|| vec![StructureKind::SwTree]),
            init,
            ops,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::WrappingAdd;

    fn sample() -> WorkloadTrace {
        WorkloadTrace {
            group: AnyGroup::WrappingAdd(WrappingAdd),
            n: 9,
            seed: 7,
            structures: vec![StructureKind::SwTree, StructureKind::SegTree],
            init: (0..9).map(|i| AnyElement::Int(2 * i + 1)).collect(),
            ops: vec![
                Op::Update {
                    index: 3,
                    delta: AnyElement::Int(100),
                },
                Op::Accumulate {
                    count: 3,
                    expected: Some(AnyElement::Int(109)),
                },
                Op::Accumulate {
                    count: 2,
                    expected: None,
                },
            ],
        }
    }

    #[test]
    fn emits_canonical_text() {
        let text = sample().emit();
        assert_eq!(
            text,
            "group wrap-add\nn 9\nseed 7\nstructures swtree,segtree\n\
             init 1 3 5 7 9 11 13 15 17\nU 3 100\nA 3 109\nA 2\n"
        );
        assert_eq!(WorkloadTrace::parse(&text).unwrap(), sample());
    }

    #[test]
    fn missing_init_is_regenerated() {
        let t = WorkloadTrace::parse("group perm:4\nn 5\nseed 3\nA 5\n").unwrap();
        let g: AnyGroup = "perm:4".parse().unwrap();
        assert_eq!(t.init, initial_array(&g, 5, 3));
        assert_eq!(t.structures, vec![StructureKind::SwTree]);
    }

    #[test]
    fn generation_is_deterministic() {
        let g: AnyGroup = "perm:8".parse().unwrap();
        let a = WorkloadTrace::generate(g, 33, 50, 42, vec![StructureKind::SwTree]);
        let b = WorkloadTrace::generate(g, 33, 50, 42, vec![StructureKind::SwTree]);
        assert_eq!(a, b);
        let c = WorkloadTrace::generate(g, 34, 50, 42, vec![StructureKind::SwTree]);
        assert_ne!(a.init[..33], c.init[..33]);
        assert!(a
            .init
            .iter()
            .all(|e| matches!(e, AnyElement::Perm(p) if p.degree() == 8)));
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("group wrap-add\nn 3\nseed 1\nX 1\n", 4),
            ("group wrap-add\nn 3\nseed 1\nA 4\n", 4),
            ("group wrap-add\nn 3\nseed 1\nA 0\n", 4),
            ("group wrap-add\nn 3\nseed 1\nU 1\n", 4),
            ("group perm:3\nn 3\nseed 1\nU 1 (0,0,1)\n", 4),
            ("group nope\n", 1),
            ("n 3\nA 1\n", 2),
            ("group wrap-add\nn 3\nseed 1\nA 1\nn 4\n", 5),
        ];
        for (text, line) in cases {
            match WorkloadTrace::parse(text) {
                Err(HarnessError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(WorkloadTrace::parse("group wrap-add\nn 3\n").is_err());
        assert!(WorkloadTrace::parse("group wrap-add\nn 3\nseed 1\ninit 1 2\n").is_err());
    }
}
