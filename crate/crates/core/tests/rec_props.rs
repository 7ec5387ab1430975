mod common;

use proptest::prelude::*;
use recotree::graph::is_spanning_tree;
use recotree::oracle::{brute_force_rec_st, rec_st_profile, OracleLimits, TreeTable};
use recotree::rec::{solve_rec_st, solve_rec_st_with, verify_pair_state, PairState, RecOptions, Step};
use recotree::robust::ScenarioModel;
use recotree::Cost;

fn costs(seed: u64, n: usize, m: usize, hi: Cost) -> (recotree::Graph, Vec<Cost>, Vec<Cost>) {
    let inst = common::random_instance(seed, n, m, 0, hi, 0, ScenarioModel::Interval, 0);
    (inst.graph, inst.first_cost, inst.nominal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matches_exhaustive_search_for_every_k(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, hi in 0i64..12) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let (g, first, second) = costs(seed, n, m, hi);
        let limits = OracleLimits::default();
        let table = TreeTable::new(&g, &limits).unwrap();
        let profile = rec_st_profile(&g, &first, &second, &table, &limits).unwrap();
        for k in 0..n {
            let sol = solve_rec_st(&g, &first, &second, k).unwrap();
            let best = recotree::oracle::best_with_target(&profile, n - 1 - k).unwrap();
            prop_assert_eq!(sol.total_cost, best.cost);
            prop_assert_eq!(sol.first_stage.cost(&first) + sol.recovery.cost(&second), sol.total_cost);
            prop_assert!(sol.first_stage.intersection_size(&sol.recovery) + k >= n - 1);
            prop_assert_eq!(sol.state.dual_bound(), sol.total_cost);
        }
    }

    #[test]
    fn objective_is_non_increasing_in_k(seed in any::<u64>(), n in 3usize..9, extra in 0usize..10) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let (g, first, second) = costs(seed, n, m, 30);
        let values: Vec<Cost> = (0..n).map(|k| solve_rec_st(&g, &first, &second, k).unwrap().total_cost).collect();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]), "{:?}", values);
    }

    #[test]
    fn scaling_costs_scales_objective(seed in any::<u64>(), n in 3usize..9, extra in 0usize..10, factor in 1i64..6, k in 0usize..8) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let k = k.min(n - 1);
        let (g, first, second) = costs(seed, n, m, 15);
        let base = solve_rec_st(&g, &first, &second, k).unwrap();
        let scale = |v: &[Cost]| v.iter().map(|c| c * factor).collect::<Vec<_>>();
        let scaled = solve_rec_st(&g, &scale(&first), &scale(&second), k).unwrap();
        prop_assert_eq!(scaled.total_cost, factor * base.total_cost);
        prop_assert_eq!(scaled.state.theta, factor * base.state.theta);
    }

    #[test]
    fn swapping_stages_with_full_overlap_is_symmetric(seed in any::<u64>(), n in 3usize..8, extra in 0usize..8) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let (g, first, second) = costs(seed, n, m, 20);
        let a = solve_rec_st(&g, &first, &second, 0).unwrap().total_cost;
        let b = solve_rec_st(&g, &second, &first, 0).unwrap().total_cost;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn invariants_hold_at_every_step(seed in any::<u64>(), n in 3usize..9, extra in 0usize..12, k in 0usize..8) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let k = k.min(n - 1);
        let (g, first, second) = costs(seed, n, m, 10);
        let mut last: Option<usize> = None;
        let mut bad = Vec::new();
        let mut obs = |step: Step<'_>, st: &PairState| {
            let check = verify_pair_state(&g, st);
            if !check.holds() {
                bad.push(format!("{check:?}"));
            }
            if let Step::Augment { .. } = step {
                if Some(st.intersection_size()) != last.map(|z| z + 1) {
                    bad.push("augmentation did not add exactly one shared edge".into());
                }
                if !is_spanning_tree(&g, st.x.edges()) || !is_spanning_tree(&g, st.y.edges()) {
                    bad.push("augmentation broke a tree".into());
                }
            }
            last = Some(st.intersection_size());
        };
        let sol = solve_rec_st_with(&g, &first, &second, k, RecOptions::default(), &mut obs).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
        prop_assert!(sol.stats.max_shifts_per_phase <= m);
        let st = &sol.state;
        prop_assert!(st.intersection_size() >= st.target);
        prop_assert_eq!(st.theta * (st.intersection_size() as Cost - st.target as Cost), 0);
    }
}

#[test]
fn tree_graph_has_one_answer() {
    // m = n - 1: the only spanning tree is the graph itself
    for seed in 0..30 {
        let (g, first, second) = costs(seed, 7, 6, 20);
        for k in 0..7 {
            let sol = solve_rec_st(&g, &first, &second, k).unwrap();
            assert_eq!(sol.first_stage.edges(), &[0, 1, 2, 3, 4, 5]);
            assert_eq!(sol.first_stage, sol.recovery);
            assert_eq!(sol.total_cost, brute_force_rec_st(&g, &first, &second, k).unwrap().cost);
        }
    }
}

#[test]
fn traces_report_augmentations() {
    let mut seen = 0;
    for seed in 0..40 {
        let (g, first, second) = costs(seed, 6, 11, 20);
        let initial = recotree::rec::initial_pair(&g, &first, &second, 0).unwrap();
        let sol = solve_rec_st_with(&g, &first, &second, 0, RecOptions { trace: true }, &mut ()).unwrap();
        let augments = sol
            .trace
            .iter()
            .filter(|e| matches!(e, recotree::rec::TraceEvent::Augment { .. }))
            .count();
        assert_eq!(augments, initial.target - initial.intersection_size().min(initial.target));
        if augments > 0 {
            seen += 1;
        }
    }
    assert!(seen > 0);
}
