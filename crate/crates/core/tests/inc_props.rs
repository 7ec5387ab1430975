mod common;

use proptest::prelude::*;
use recotree::inc::{inc_st, inc_st_by};
use recotree::oracle::{brute_force_inc_st, enumerate_spanning_trees};
use recotree::robust::ScenarioModel;
use recotree::{rational, Rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matches_exhaustive_search(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, hi in 0i64..15) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let inst = common::random_instance(seed, n, m, 0, hi, 0, ScenarioModel::Interval, 0);
        let g = &inst.graph;
        let trees = enumerate_spanning_trees(g).unwrap();
        let base = &trees[(seed as usize) % trees.len()];
        for k in 0..n {
            let sol = inc_st(g, &inst.nominal, base, k).unwrap();
            let (_, best) = brute_force_inc_st(g, &inst.nominal, base, k).unwrap();
            prop_assert_eq!(sol.cost, best);
            prop_assert_eq!(sol.tree.cost(&inst.nominal), sol.cost);
            prop_assert_eq!(sol.intersection, sol.tree.intersection_size(base));
            prop_assert!(sol.intersection + k >= n - 1);
        }
    }

    #[test]
    fn rational_costs_agree_with_integer_costs(seed in any::<u64>(), n in 2usize..8, extra in 0usize..8, k in 0usize..7) {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        let k = k.min(n - 1);
        let inst = common::random_instance(seed, n, m, 0, 20, 0, ScenarioModel::Interval, 0);
        let base = recotree::mst::minimum_spanning_tree(&inst.graph, &inst.first_cost).unwrap();
        let int = inc_st(&inst.graph, &inst.nominal, &base, k).unwrap();
        // thirds keep the order of costs, so the optimum scales exactly
        let thirds: Vec<Rational> = inst.nominal.iter().map(|&c| Rational::new(c.into(), 3.into())).collect();
        let frac = inc_st_by(&inst.graph, &thirds, &base, k).unwrap();
        prop_assert_eq!(frac.cost * rational(3), rational(int.cost));
    }
}
