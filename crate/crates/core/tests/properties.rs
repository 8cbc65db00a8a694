use proptest::prelude::*;

use ugs_pursuit::information::{
    delay_classes, partition, realizable_sets, realizable_sets_with, update_green, update_red, TieOrder,
};
use ugs_pursuit::network::{count_paths, euclidean_metric, speed_floor, PursuerMetric};
use ugs_pursuit::random::{layered_instance, LayeredConfig};
use ugs_pursuit::solver::{base_case, base_case_max_form, solve, Resolution, SolveOptions};
use ugs_pursuit::time::EPS_T;
use ugs_pursuit::{Instance, NodeId, PathSet};

fn mid_sized() -> LayeredConfig {
    LayeredConfig {
        paths: 1..=7,
        nodes: 2..=14,
        layers: 3..=7,
        ..Default::default()
    }
}

fn instance(seed: u64) -> Instance {
    layered_instance(seed, &mid_sized())
}

fn at_speed(inst: &Instance, v: f64) -> Instance {
    inst.with_metric(euclidean_metric(&inst.network, v).unwrap()).unwrap()
}

fn modes() -> impl Strategy<Value = Resolution> {
    prop_oneof![Just(Resolution::Eager), Just(Resolution::Strict)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn paths_and_schedule_agree(seed in 0u64..100_000) {
        let inst = instance(seed);
        let g = &inst.network;
        prop_assert_eq!(inst.path_count(), count_paths(g));
        for p in &inst.paths {
            prop_assert_eq!(p.nodes[0], NodeId::ENTRY);
            prop_assert!(g.is_goal(p.exit()));
            prop_assert_eq!(p.arrival[0], 0.0);
            let mut t = 0.0;
            for w in p.nodes.windows(2) {
                t += g.edge_time(w[0], w[1]).expect("consecutive nodes share an edge");
            }
            prop_assert!((t - p.length()).abs() < 1e-12);
            prop_assert!(p.arrival.windows(2).all(|w| w[0] < w[1]));

            let from_schedule: Vec<NodeId> = {
                let mut v: Vec<(f64, NodeId)> = g
                    .nodes()
                    .filter(|&j| inst.schedule.visit(j, p.index).is_finite())
                    .map(|j| (inst.schedule.visit(j, p.index), j))
                    .collect();
                v.sort_by(|a, b| a.0.total_cmp(&b.0));
                v.into_iter().map(|(_, j)| j).collect()
            };
            prop_assert_eq!(&from_schedule, &p.nodes);
        }
        for &goal in g.goals() {
            prop_assert!(inst.paths.iter().any(|p| p.exit() == goal));
        }
    }

    #[test]
    fn euclidean_metric_scales_inversely(seed in 0u64..100_000) {
        let inst = instance(seed);
        let v = 1.5 * speed_floor(&inst.network).unwrap();
        let slow = euclidean_metric(&inst.network, v).unwrap();
        let fast = euclidean_metric(&inst.network, 2.0 * v).unwrap();
        for i in inst.network.nodes() {
            for j in inst.network.nodes() {
                let (a, b) = (slow.get(i, j), fast.get(i, j));
                prop_assert!((a - 2.0 * b).abs() <= 1e-12 * a.max(1.0));
            }
        }
    }

    #[test]
    fn singleton_forms_agree(seed in 0u64..100_000) {
        let inst = instance(seed);
        for p in &inst.paths {
            for j in inst.network.nodes() {
                let a = base_case(j, p.index, &inst.schedule, &inst.metric);
                let b = base_case_max_form(j, p, &inst.metric);
                prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn singleton_value_is_linear_in_distance(seed in 0u64..100_000) {
        let inst = instance(seed);
        let v = speed_floor(&inst.network).unwrap() * 1.3;
        let a = at_speed(&inst, v);
        let b = at_speed(&inst, 2.0 * v);
        for k in 1..=inst.path_count() {
            let exit = inst.schedule.exit(k);
            for j in inst.network.nodes() {
                let delta = a.metric.get(j, exit) - b.metric.get(j, exit);
                let da = base_case(j, k, &a.schedule, &a.metric);
                let db = base_case(j, k, &b.schedule, &b.metric);
                prop_assert!((db - da - delta).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn lower_bound_on_sets_through_a_node(seed in 0u64..100_000, res in modes()) {
        let inst = instance(seed);
        let r = solve(&inst, None, SolveOptions::pruned(res)).unwrap();
        for &set in &r.order {
            for j in inst.network.nodes() {
                if set.is_subset(inst.schedule.through(j)) {
                    let d = r.latest(j, set).unwrap();
                    prop_assert!(d >= inst.schedule.earliest(j, set) - EPS_T, "D({}|{}) = {}", j, set, d);
                }
            }
        }
    }

    #[test]
    fn pruning_is_neutral_on_every_realizable_set(seed in 0u64..100_000, res in modes()) {
        let inst = instance(seed);
        let fam = realizable_sets(&inst.schedule);
        let pruned = solve(&inst, Some(&fam), SolveOptions::pruned(res)).unwrap();
        let full = solve(&inst, None, SolveOptions::full_lattice(res)).unwrap();
        prop_assert_eq!(pruned.root_latest(), full.root_latest());
        for &set in &fam.sets {
            for j in inst.network.nodes() {
                prop_assert_eq!(pruned.latest(j, set), full.latest(j, set));
            }
        }
    }

    #[test]
    fn faster_pursuer_never_loses_time(seed in 0u64..100_000, res in modes(), factor in 1.0f64..3.0) {
        let inst = instance(seed);
        let v = speed_floor(&inst.network).unwrap() * 1.05;
        let slow = solve(&at_speed(&inst, v), None, SolveOptions::full_lattice(res)).unwrap();
        let fast = solve(&at_speed(&inst, v * factor), None, SolveOptions::full_lattice(res)).unwrap();
        for &set in &slow.order {
            for j in inst.network.nodes() {
                let (a, b) = (slow.latest(j, set).unwrap(), fast.latest(j, set).unwrap());
                prop_assert!(b >= a - EPS_T, "D({}|{}): {} at V, {} faster", j, set, a, b);
            }
        }
    }

    #[test]
    fn sweep_family_is_closed_and_tie_independent(seed in 0u64..100_000) {
        let inst = instance(seed);
        let fam = realizable_sets(&inst.schedule);
        let reversed = realizable_sets_with(&inst.schedule, TieOrder::NodeDescending);
        let mut a = fam.sorted();
        let mut b = reversed.sorted();
        a.dedup();
        b.dedup();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), fam.len());
        prop_assert!(fam.len() < (1usize << inst.path_count()));

        let root = inst.initial_set();
        for &child in &fam.sets {
            if child == root {
                continue;
            }
            let has_parent = fam.sets.iter().any(|&parent| {
                child.is_strict_nonempty_subset(parent) && fam.contains(parent.difference(child))
            });
            prop_assert!(has_parent, "{} has no parent split in the family", child);
        }
    }

    #[test]
    fn updates_only_discard(seed in 0u64..100_000, pick in any::<u64>(), t in 0.0f64..40.0) {
        let inst = instance(seed);
        let sched = &inst.schedule;
        let n = inst.path_count();
        let set = PathSet::from_bits((pick as u128 % ((1u128 << n) - 1)) + 1);
        for u in inst.network.nodes() {
            let (red, green) = partition(set, u, sched);
            prop_assert_eq!(red.union(green), set);
            prop_assert!(red.intersection(green).is_empty());

            let classes = delay_classes(set, u, sched);
            let union = classes.iter().fold(PathSet::EMPTY, |acc, &(_, c)| {
                assert!(acc.intersection(c).is_empty());
                acc.union(c)
            });
            prop_assert_eq!(union, red);

            let g = update_green(set, u, t, sched).ok();
            if let Some(g) = g {
                prop_assert!(g.is_subset(set));
            }
            for &(tau, _) in &classes {
                if tau <= t {
                    let r = update_red(set, u, t, t - tau, sched).unwrap();
                    prop_assert!(r.is_subset(set));
                    if let Some(g) = g {
                        prop_assert!(r.intersection(g).is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn zero_metric_gives_the_earliest_exit() {
    for seed in 0..20 {
        let inst = instance(seed);
        let zero = inst.with_metric(PursuerMetric::zero(inst.node_count())).unwrap();
        let shortest = (1..=inst.path_count())
            .map(|k| inst.schedule.length(k))
            .fold(f64::INFINITY, f64::min);
        let d = solve(&zero, None, SolveOptions::default()).unwrap().root_latest();
        assert!(d <= shortest + EPS_T, "seed {seed}: {d} beyond earliest exit {shortest}");
    }
}
