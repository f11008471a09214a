use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use swtree::baselines::{PrefixOracle, SegmentTree};
use swtree::group::Group;
use swtree::harness::shrink::shrink;
use swtree::harness::workload::WorkloadTrace;
use swtree::{AnyElement, AnyGroup, PrefixStructure, SouthwestTree, StructureKind};

fn any_group() -> impl Strategy<Value = AnyGroup> {
    prop_oneof![
        Just("wrap-add"),
        Just("mod-add:7"),
        Just("perm:3"),
        Just("perm:8"),
        Just("gl2:2"),
        Just("gl2:251"),
    ]
    .prop_map(|id| id.parse().unwrap())
}

fn elements(g: AnyGroup, n: usize, seed: u64) -> Vec<AnyElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| g.random_element(&mut rng)).collect()
}

/// (is_update, raw index, element seed)
fn raw_ops() -> impl Strategy<Value = Vec<(bool, usize, u64)>> {
    prop::collection::vec((any::<bool>(), any::<usize>(), any::<u64>()), 0..60)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prefix_and_update_agree_with_oracle(
        g in any_group(),
        n in 1usize..300,
        seed in any::<u64>(),
        ops in raw_ops(),
    ) {
        let init = elements(g, n, seed);
        let mut tree = SouthwestTree::build(g, init.clone()).unwrap();
        let mut seg = SegmentTree::new(g, init.clone()).unwrap();
        let mut oracle = PrefixOracle::new(g, init).unwrap();
        for (is_update, raw, eseed) in ops {
            if is_update {
                let d = elements(g, 1, eseed).pop().unwrap();
                let i = raw % n;
                tree.update(i, &d).unwrap();
                seg.update(i, &d).unwrap();
                oracle.update(i, &d).unwrap();
            } else {
                let c = raw % n + 1;
                let truth = oracle.prefix(c).unwrap();
                prop_assert_eq!(&tree.prefix(c).unwrap(), &truth);
                prop_assert_eq!(&seg.prefix(c).unwrap(), &truth);
            }
        }
    }

    #[test]
    fn nodes_hold_their_range_folds(
        g in any_group(),
        n in 1usize..200,
        seed in any::<u64>(),
        ops in raw_ops(),
    ) {
        let mut shadow = elements(g, n, seed);
        let mut tree = SouthwestTree::build(g, shadow.clone()).unwrap();
        for (_, raw, eseed) in ops {
            let d = elements(g, 1, eseed).pop().unwrap();
            let i = raw % n;
            tree.update(i, &d).unwrap();
            shadow[i] = g.combine(&shadow[i], &d);
        }
        let geo = tree.geometry();
        for index in 1..=n {
            let r = geo.node_range(index).unwrap();
            let want = shadow[r.start() - 1..*r.end()]
                .iter()
                .fold(g.identity(), |acc, x| g.combine(&acc, x));
            prop_assert_eq!(&tree.as_slice()[index - 1], &want, "node {}", index);
        }
    }

    #[test]
    fn round_trip_after_updates(
        g in any_group(),
        n in 1usize..200,
        seed in any::<u64>(),
        ops in raw_ops(),
    ) {
        let mut current = elements(g, n, seed);
        let mut tree = SouthwestTree::build(g, current.clone()).unwrap();
        for (_, raw, eseed) in ops {
            let d = elements(g, 1, eseed).pop().unwrap();
            let i = raw % n;
            tree.update(i, &d).unwrap();
            current[i] = g.combine(&current[i], &d);
        }
        prop_assert_eq!(tree.into_initial(), current);
    }

    #[test]
    fn trace_partitions_and_stays_in_bounds(n in 1usize..5000, raw in any::<usize>()) {
        let init: Vec<i64> = (1..=n as i64).collect();
        let tree = SouthwestTree::build(swtree::group::WrappingAdd, init).unwrap();
        let count = raw % n + 1;
        let trace = tree.trace(count).unwrap();
        prop_assert!(trace.check_partition().is_ok());
        prop_assert_eq!(trace.value, (count * (count + 1) / 2) as i64);
        prop_assert!(trace.stats.visited <= tree.geometry().root_height() as u64);
        prop_assert!(trace.stats.max_slot <= n);
    }

    #[test]
    fn node_reads_never_pass_the_array(n in 1usize..3000, raw in any::<usize>(), d in any::<i64>()) {
        let mut tree = SouthwestTree::build(swtree::group::WrappingAdd, vec![0i64; n]).unwrap();
        prop_assert!(tree.build_stats().max_slot <= n);
        let stats = tree.update_counted(raw % n, &d).unwrap();
        prop_assert!(stats.max_slot <= n);
        prop_assert!(stats.visited <= tree.geometry().root_height() as u64);
        prop_assert!(tree.build_stats().writes <= n as u64);
    }

    #[test]
    fn trace_files_round_trip(
        g in any_group(),
        n in 1usize..40,
        ops in 0usize..50,
        seed in any::<u64>(),
    ) {
        let trace = WorkloadTrace::generate(
            g, n, ops, seed, vec![StructureKind::SwTree, StructureKind::SegTree],
        );
        let text = trace.emit();
        let parsed = WorkloadTrace::parse(&text).unwrap();
        prop_assert_eq!(parsed.emit(), text);
        prop_assert_eq!(parsed, trace);
    }

    #[test]
    fn shrink_reaches_a_single_culprit(
        items in prop::collection::vec(0u8..20, 0..80),
        needle in 0u8..20,
    ) {
        prop_assume!(items.contains(&needle));
        let small = shrink(&items, |xs: &[u8]| xs.contains(&needle));
        prop_assert_eq!(small, vec![needle]);
    }
}
