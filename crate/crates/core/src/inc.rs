//! Incremental spanning tree: the cheapest tree sharing at least
//! `n - 1 - k` edges with a fixed base tree.
//!
//! Solved by Lagrangian relaxation of the intersection constraint. Base
//! edges are discounted by a multiplier `lambda`; the number of base edges
//! in the Kruskal tree is monotone in `lambda` and only changes at the
//! finitely many differences `c_e - c_g` between a base edge `e` and a
//! non-base edge `g`. Binary search finds the smallest breakpoint where the
//! base-preferring tree is feasible; the base-avoiding tree at the same
//! breakpoint is infeasible, and equal-cost exchanges between the two walk
//! the intersection up to exactly `n - 1 - k`.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, Graph, RootedTree, Tree};
use crate::mst::{kruskal_by, path_violations_by};

/// Exact ordered cost arithmetic used by the incremental solver.
pub trait CostValue: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> CostValue for T {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncSolution<T = Cost> {
    pub tree: Tree,
    pub cost: T,
    /// Multiplier certifying optimality: `tree` is a minimum spanning tree
    /// for costs with base edges discounted by it, and either it is zero or
    /// the intersection with the base equals the target.
    pub multiplier: T,
    pub intersection: usize,
}

pub fn inc_st(graph: &Graph, costs: &[Cost], base: &Tree, k: usize) -> Result<IncSolution> {
    graph.check_input_costs(costs)?;
    inc_st_by(graph, costs, base, k)
}

/// [`inc_st`] over any exact ordered cost type (integers, rationals).
pub fn inc_st_by<T: CostValue>(graph: &Graph, costs: &[T], base: &Tree, k: usize) -> Result<IncSolution<T>> {
    if costs.len() != graph.edge_count() {
        return Err(Error::LengthMismatch {
            expected: graph.edge_count(),
            got: costs.len(),
        });
    }
    graph.check_recovery(k)?;
    graph.ensure_connected()?;
    let base = Tree::new(graph, base.edges().iter().copied())?;
    let target = graph.tree_size() - k;
    let in_base = |e: EdgeId| base.contains(e);
    let shifted = |e: EdgeId, lambda: &T| {
        if in_base(e) {
            costs[e].clone() - lambda.clone()
        } else {
            costs[e].clone()
        }
    };
    let prefer_base = |lambda: &T| kruskal_by(graph, |e| (shifted(e, lambda), !in_base(e)));
    let avoid_base = |lambda: &T| kruskal_by(graph, |e| (shifted(e, lambda), in_base(e)));
    let count = |t: &Tree| t.intersection_size(&base);
    let finish = |tree: Tree, multiplier: T| {
        let cost = tree.edges().iter().fold(T::zero(), |acc, &e| acc + costs[e].clone());
        let intersection = count(&tree);
        IncSolution {
            tree,
            cost,
            multiplier,
            intersection,
        }
    };

    if target == 0 {
        let tree = kruskal_by(graph, |e| costs[e].clone())?;
        return Ok(finish(tree, T::zero()));
    }
    let at_zero = prefer_base(&T::zero())?;
    if count(&at_zero) >= target {
        return Ok(finish(at_zero, T::zero()));
    }

    let mut breakpoints: Vec<T> = Vec::new();
    for &e in base.edges() {
        for g in (0..graph.edge_count()).filter(|&g| !in_base(g)) {
            if costs[e] > costs[g] {
                breakpoints.push(costs[e].clone() - costs[g].clone());
            }
        }
    }
    breakpoints.sort();
    breakpoints.dedup();
    // The largest breakpoint orders every base edge first, so the base itself
    // is selected. Find the first breakpoint that is feasible.
    let (mut lo, mut hi) = (0, breakpoints.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if count(&prefer_base(&breakpoints[mid])?) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let lambda = breakpoints
        .get(lo)
        .cloned()
        .ok_or_else(|| Error::Internal("no feasible multiplier breakpoint".into()))?;

    let upper = prefer_base(&lambda)?;
    let mut tree = avoid_base(&lambda)?;
    while count(&tree) < target {
        tree = exchange_towards(graph, &tree, &upper, &base)?;
    }

    let weights: Vec<T> = (0..graph.edge_count()).map(|e| shifted(e, &lambda)).collect();
    let rooted = RootedTree::new(graph, &tree);
    if count(&tree) != target || !path_violations_by(graph, &tree, &rooted, &weights).is_empty() {
        return Err(Error::Internal("incremental tree fails its Lagrangian certificate".into()));
    }
    Ok(finish(tree, lambda))
}

/// One equal-weight exchange moving `tree` towards `upper`, both minimum
/// spanning trees for the same weights. Adds a base edge of `upper` and
/// removes an edge of `tree` crossing the cut that edge leaves in `upper`.
fn exchange_towards(graph: &Graph, tree: &Tree, upper: &Tree, base: &Tree) -> Result<Tree> {
    let entering = upper
        .edges()
        .iter()
        .copied()
        .find(|&e| base.contains(e) && !tree.contains(e))
        .ok_or_else(|| Error::Internal("no base edge left to exchange".into()))?;

    // side of each node in `upper` minus `entering`
    let n = graph.node_count();
    let mut side = vec![false; n];
    let start = graph.edge(entering).u;
    side[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &id in graph.incident(v) {
            if id == entering || !upper.contains(id) {
                continue;
            }
            let w = graph.edge(id).other(v);
            if !side[w] {
                side[w] = true;
                stack.push(w);
            }
        }
    }

    let path = RootedTree::new(graph, tree).edge_path(graph, entering);
    let leaving = path
        .into_iter()
        .find(|&f| {
            let edge = graph.edge(f);
            !upper.contains(f) && side[edge.u] != side[edge.v]
        })
        .ok_or_else(|| Error::Internal("no crossing edge on the exchange cycle".into()))?;

    let mut mask = tree.mask().to_vec();
    mask[entering] = true;
    mask[leaving] = false;
    Tree::from_mask(graph, mask)
}
