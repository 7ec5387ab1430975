//! Exhaustive ground truth for the fast solvers.
//!
//! Everything here is exact: integer costs, and arbitrary-precision
//! rationals for the budgeted adversary LP. Work beyond the configured
//! limits is refused with [`Error::TooLarge`] rather than approximated.

mod enumerate;
mod simplex;

pub use enumerate::{
    enumerate_spanning_trees, enumerate_spanning_trees_capped, for_each_spanning_tree, DEFAULT_TREE_CAP,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, Graph, Tree};
use crate::inc::inc_st_by;
use crate::robust::{IntervalInstance, ScenarioModel};
use crate::{rational, Rational};
use simplex::{maximize, Lp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_trees: usize,
    /// Cap on tree pairs examined by the pair search.
    pub max_pairs: u64,
    /// Cap on deviation subsets per first-stage tree.
    pub max_subsets: u64,
    /// Cap on cutting planes in the budgeted adversary LP.
    pub max_cuts: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_trees: DEFAULT_TREE_CAP,
            max_pairs: 200_000_000,
            max_subsets: 1_000_000,
            max_cuts: 10_000,
        }
    }
}

/// Enumerated spanning trees with bitmasks for fast intersection counts.
#[derive(Debug, Clone)]
pub struct TreeTable {
    pub trees: Vec<Tree>,
    masks: Vec<u128>,
}

impl TreeTable {
    pub fn new(graph: &Graph, limits: &OracleLimits) -> Result<Self> {
        if graph.edge_count() > 128 {
            return Err(Error::TooLarge(format!("{} edges; the oracle handles at most 128", graph.edge_count())));
        }
        let trees = enumerate_spanning_trees_capped(graph, limits.max_trees)?;
        let masks = trees.iter().map(|t| mask_of(t.edges())).collect();
        Ok(TreeTable { trees, masks })
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Indices of trees sharing at least `target` edges with `x`.
    fn recovery_set(&self, x: &Tree, target: usize) -> Vec<usize> {
        let xm = mask_of(x.edges());
        (0..self.trees.len())
            .filter(|&i| (self.masks[i] & xm).count_ones() as usize >= target)
            .collect()
    }
}

fn mask_of(edges: &[EdgeId]) -> u128 {
    edges.iter().fold(0u128, |m, &e| m | (1u128 << e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOptimum {
    pub x: Tree,
    pub y: Tree,
    pub cost: Cost,
}

/// Best pair for every exact intersection size, from one pass over all pairs.
/// Entry `z` is `None` when no pair shares exactly `z` edges.
pub fn rec_st_profile(
    graph: &Graph,
    first: &[Cost],
    second: &[Cost],
    table: &TreeTable,
    limits: &OracleLimits,
) -> Result<Vec<Option<PairOptimum>>> {
    graph.check_input_costs(first)?;
    graph.check_input_costs(second)?;
    let t = table.len() as u64;
    if t * t > limits.max_pairs {
        return Err(Error::TooLarge(format!("{t} trees give more than {} pairs", limits.max_pairs)));
    }
    let firsts: Vec<Cost> = table.trees.iter().map(|x| x.cost(first)).collect();
    let seconds: Vec<Cost> = table.trees.iter().map(|y| y.cost(second)).collect();
    let mut best: Vec<Option<(Cost, usize, usize)>> = vec![None; graph.node_count()];
    for (i, (&xm, &xc)) in table.masks.iter().zip(&firsts).enumerate() {
        for (j, (&ym, &yc)) in table.masks.iter().zip(&seconds).enumerate() {
            let z = (xm & ym).count_ones() as usize;
            let cost = xc + yc;
            if best[z].is_none_or(|(c, _, _)| cost < c) {
                best[z] = Some((cost, i, j));
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|b| {
            b.map(|(cost, i, j)| PairOptimum {
                x: table.trees[i].clone(),
                y: table.trees[j].clone(),
                cost,
            })
        })
        .collect())
}

/// Minimum of `C(X) + c(Y)` over all tree pairs with `|X ∩ Y| >= n - 1 - k`.
pub fn brute_force_rec_st(graph: &Graph, first: &[Cost], second: &[Cost], k: usize) -> Result<PairOptimum> {
    graph.check_recovery(k)?;
    let limits = OracleLimits::default();
    let table = TreeTable::new(graph, &limits)?;
    let profile = rec_st_profile(graph, first, second, &table, &limits)?;
    best_with_target(&profile, graph.tree_size() - k)
}

/// Minimum of `costs(Y)` over spanning trees sharing at least `n - 1 - k`
/// edges with `base`.
pub fn brute_force_inc_st(graph: &Graph, costs: &[Cost], base: &Tree, k: usize) -> Result<(Tree, Cost)> {
    graph.check_input_costs(costs)?;
    graph.check_recovery(k)?;
    let base = Tree::new(graph, base.edges().iter().copied())?;
    let table = TreeTable::new(graph, &OracleLimits::default())?;
    table
        .recovery_set(&base, graph.tree_size() - k)
        .into_iter()
        .map(|j| (j, table.trees[j].cost(costs)))
        .min_by_key(|&(_, c)| c)
        .map(|(j, c)| (table.trees[j].clone(), c))
        .ok_or_else(|| Error::Internal("base tree missing from its recovery set".into()))
}

/// Reads the optimum for intersection target `target` off a profile.
pub fn best_with_target(profile: &[Option<PairOptimum>], target: usize) -> Result<PairOptimum> {
    profile
        .iter()
        .skip(target)
        .flatten()
        .min_by_key(|p| p.cost)
        .cloned()
        .ok_or_else(|| Error::Internal("no feasible pair".into()))
}

/// Exhaustive evaluation of `F(X)` for one instance.
#[derive(Debug, Clone)]
pub struct RobustOracle<'a> {
    inst: &'a IntervalInstance,
    table: TreeTable,
    limits: OracleLimits,
}

impl<'a> RobustOracle<'a> {
    pub fn new(inst: &'a IntervalInstance) -> Result<Self> {
        Self::with_limits(inst, OracleLimits::default())
    }

    pub fn with_limits(inst: &'a IntervalInstance, limits: OracleLimits) -> Result<Self> {
        let table = TreeTable::new(&inst.graph, &limits)?;
        Ok(RobustOracle { inst, table, limits })
    }

    pub fn trees(&self) -> &[Tree] {
        &self.table.trees
    }

    /// `F(X) = C(X) + max_S min_{Y in recovery set} c^S(Y)`, exactly.
    pub fn f_value(&self, x: &Tree) -> Result<Rational> {
        let inst = self.inst;
        let first = rational(x.cost(&inst.first_cost));
        let inner = match inst.model {
            ScenarioModel::Interval => rational(self.interval_inner(x)),
            ScenarioModel::DiscreteBudget => rational(self.discrete_inner(x)?),
            ScenarioModel::ContinuousBudget => {
                adversary_lp(inst, x, &self.limits, LpMode::CuttingPlane)?
            }
        };
        Ok(first + inner)
    }

    /// The budgeted adversary LP with every recovery tree as a constraint.
    pub fn continuous_inner_full(&self, x: &Tree) -> Result<Rational> {
        adversary_lp(
            self.inst,
            x,
            &self.limits,
            LpMode::Full {
                table: &self.table,
            },
        )
    }

    /// Minimum over all first-stage trees of `F(X)`; ties keep the first tree
    /// in enumeration order.
    pub fn rob_rec(&self) -> Result<(Tree, Rational)> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, x) in self.table.trees.iter().enumerate() {
            let v = self.f_value(x)?;
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((i, v));
            }
        }
        let (i, v) = best.ok_or_else(|| Error::Internal("graph has no spanning tree".into()))?;
        Ok((self.table.trees[i].clone(), v))
    }

    fn target(&self) -> usize {
        self.inst.graph.tree_size() - self.inst.k
    }

    fn interval_inner(&self, x: &Tree) -> Cost {
        let upper = self.inst.upper_costs();
        self.table
            .recovery_set(x, self.target())
            .into_iter()
            .map(|j| self.table.trees[j].cost(&upper))
            .min()
            .expect("X itself is in its recovery set")
    }

    fn discrete_inner(&self, x: &Tree) -> Result<Cost> {
        let inst = self.inst;
        let positive: Vec<EdgeId> = (0..inst.graph.edge_count())
            .filter(|&e| inst.deviation[e] > 0)
            .collect();
        let size = (inst.gamma.max(0) as usize).min(positive.len());
        let count = binomial(positive.len() as u64, size as u64);
        if count > self.limits.max_subsets as u128 {
            return Err(Error::TooLarge(format!("{count} deviation subsets")));
        }
        let recovery: Vec<&Tree> = self
            .table
            .recovery_set(x, self.target())
            .into_iter()
            .map(|j| &self.table.trees[j])
            .collect();
        let nominal: Vec<Cost> = recovery.iter().map(|y| y.cost(&inst.nominal)).collect();

        let mut best = Cost::MIN;
        let mut raised = vec![false; inst.graph.edge_count()];
        for_each_combination(positive.len(), size, |subset| {
            raised.iter_mut().for_each(|r| *r = false);
            for &i in subset {
                raised[positive[i]] = true;
            }
            let worst_response = recovery
                .iter()
                .zip(&nominal)
                .map(|(y, base)| {
                    base + y
                        .edges()
                        .iter()
                        .filter(|&&e| raised[e])
                        .map(|&e| inst.deviation[e])
                        .sum::<Cost>()
                })
                .min()
                .expect("X itself is in its recovery set");
            best = best.max(worst_response);
        });
        Ok(best)
    }
}

/// `F(X)` by exhaustive search; builds a fresh tree table.
#[allow(non_snake_case)]
pub fn brute_force_F(x: &Tree, inst: &IntervalInstance) -> Result<Rational> {
    RobustOracle::new(inst)?.f_value(x)
}

pub fn brute_force_rob_rec(inst: &IntervalInstance) -> Result<(Tree, Rational)> {
    RobustOracle::new(inst)?.rob_rec()
}

/// Exact value of `max_S min_Y c^S(Y)` under the continuous budget set, by
/// cutting planes with the incremental solver as separation oracle.
pub fn continuous_adversary_value(inst: &IntervalInstance, x: &Tree, limits: &OracleLimits) -> Result<Rational> {
    adversary_lp(inst, x, limits, LpMode::CuttingPlane)
}

enum LpMode<'t> {
    CuttingPlane,
    Full { table: &'t TreeTable },
}

// Variables: t, then delta_e for every edge.
//   max t
//   t - sum_{e in Y} delta_e <= c(Y)   for each recovery tree Y in the cut set
//   delta_e <= d_e
//   sum_e delta_e <= Gamma
fn adversary_lp(inst: &IntervalInstance, x: &Tree, limits: &OracleLimits, mode: LpMode<'_>) -> Result<Rational> {
    let graph = &inst.graph;
    let m = graph.edge_count();
    let k = inst.k;
    let target = graph.tree_size() - k;
    let nominal: Vec<Rational> = inst.nominal.iter().map(|&c| rational(c)).collect();
    let one = rational(1);

    let mut fixed_rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for e in 0..m {
        let mut row = vec![Rational::zero(); m + 1];
        row[e + 1] = one.clone();
        fixed_rows.push((row, rational(inst.deviation[e])));
    }
    let mut budget = vec![one.clone(); m + 1];
    budget[0] = Rational::zero();
    fixed_rows.push((budget, rational(inst.gamma)));

    let cut_row = |y: &Tree| {
        let mut row = vec![Rational::zero(); m + 1];
        row[0] = one.clone();
        for &e in y.edges() {
            row[e + 1] = -one.clone();
        }
        (row, rational(y.cost(&inst.nominal)))
    };
    let solve = |cuts: &[(Vec<Rational>, Rational)]| {
        let mut objective = vec![Rational::zero(); m + 1];
        objective[0] = one.clone();
        let rows = cuts.iter().chain(&fixed_rows).cloned().collect();
        maximize(&Lp { objective, rows })
    };

    match mode {
        LpMode::Full { table } => {
            let cuts: Vec<_> = table
                .recovery_set(x, target)
                .into_iter()
                .map(|j| cut_row(&table.trees[j]))
                .collect();
            Ok(solve(&cuts)?.value)
        }
        LpMode::CuttingPlane => {
            let first = inc_st_by(graph, &nominal, x, k)?;
            let mut seen = vec![first.tree.clone()];
            let mut cuts = vec![cut_row(&first.tree)];
            loop {
                let sol = solve(&cuts)?;
                let scenario: Vec<Rational> = (0..m).map(|e| &nominal[e] + &sol.x[e + 1]).collect();
                let response = inc_st_by(graph, &scenario, x, k)?;
                if response.cost >= sol.value {
                    return Ok(sol.value);
                }
                if seen.contains(&response.tree) {
                    return Err(Error::Internal("separation returned an existing cut".into()));
                }
                if cuts.len() >= limits.max_cuts {
                    return Err(Error::TooLarge(format!("more than {} cutting planes", limits.max_cuts)));
                }
                cuts.push(cut_row(&response.tree));
                seen.push(response.tree);
            }
        }
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k as u128).fold(1u128, |acc, i| acc.saturating_mul(n as u128 - i) / (i + 1))
}

/// Visits every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        visit(&idx);
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(3, 0, |s| {
            assert!(s.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
        let mut count = 0;
        for_each_combination(3, 3, |_| count += 1);
        assert_eq!(count, 1);
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
    }
}
