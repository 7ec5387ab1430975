use crate::error::Result;
use crate::graph::{partition_of, Cost, EdgeClass, EdgePartition, Graph, RootedTree, Tree};
use crate::mst::{minimum_spanning_tree, path_violations_by};

/// Primal-dual state of the recoverable spanning tree algorithm: a pair of
/// trees together with the multipliers certifying that the pair solves the
/// Lagrangian relaxation for the current `theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairState {
    pub x: Tree,
    pub y: Tree,
    pub partition: EdgePartition,
    pub theta: Cost,
    pub alpha: Vec<Cost>,
    pub beta: Vec<Cost>,
    /// `C* = C - alpha`
    pub first_reduced: Vec<Cost>,
    /// `c* = c - beta`
    pub second_reduced: Vec<Cost>,
    pub first_cost: Vec<Cost>,
    pub second_cost: Vec<Cost>,
    /// Required intersection size `L = n - 1 - k`.
    pub target: usize,
}

impl PairState {
    pub fn intersection_size(&self) -> usize {
        self.partition.intersection_size()
    }

    /// `C(X) + c(Y)` under the original costs.
    pub fn objective(&self) -> Cost {
        self.x.cost(&self.first_cost) + self.y.cost(&self.second_cost)
    }

    /// Lagrangian lower bound `C*(X) + c*(Y) + theta * L`.
    pub fn dual_bound(&self) -> Cost {
        self.x.cost(&self.first_reduced)
            + self.y.cost(&self.second_reduced)
            + self.theta * self.target as Cost
    }
}

/// MSTs under the original costs with all multipliers at zero.
pub fn initial_pair(graph: &Graph, first: &[Cost], second: &[Cost], k: usize) -> Result<PairState> {
    graph.check_input_costs(first)?;
    graph.check_input_costs(second)?;
    graph.check_recovery(k)?;
    graph.ensure_connected()?;
    let x = minimum_spanning_tree(graph, first)?;
    let y = minimum_spanning_tree(graph, second)?;
    let partition = partition_of(graph, &x, &y)?;
    let m = graph.edge_count();
    Ok(PairState {
        x,
        y,
        partition,
        theta: 0,
        alpha: vec![0; m],
        beta: vec![0; m],
        first_reduced: first.to_vec(),
        second_reduced: second.to_vec(),
        first_cost: first.to_vec(),
        second_cost: second.to_vec(),
        target: graph.tree_size() - k,
    })
}

/// Result of [`verify_pair_state`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairCheck {
    pub violations: Vec<String>,
    /// `|E_Z| >= L` and `theta * (|E_Z| - L) = 0`.
    pub globally_optimal: bool,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the sufficient pair optimality conditions and the bookkeeping
/// identities between costs, multipliers and reduced costs.
pub fn verify_pair_state(graph: &Graph, state: &PairState) -> PairCheck {
    let mut check = PairCheck::default();
    let v = &mut check.violations;
    let m = graph.edge_count();

    let vectors = [
        ("alpha", &state.alpha),
        ("beta", &state.beta),
        ("first_reduced", &state.first_reduced),
        ("second_reduced", &state.second_reduced),
        ("first_cost", &state.first_cost),
        ("second_cost", &state.second_cost),
    ];
    for (name, vec) in vectors {
        if vec.len() != m {
            v.push(format!("{name} has length {}, expected {m}", vec.len()));
        }
    }
    if !v.is_empty() {
        return check;
    }
    let partition = match partition_of(graph, &state.x, &state.y) {
        Ok(p) => p,
        Err(err) => {
            v.push(format!("trees: {err}"));
            return check;
        }
    };
    if partition != state.partition {
        v.push("stored partition does not match the pair".into());
    }
    if state.theta < 0 {
        v.push(format!("theta = {} is negative", state.theta));
    }

    for e in 0..m {
        let (a, b) = (state.alpha[e], state.beta[e]);
        if a < 0 || b < 0 {
            v.push(format!("edge {e}: negative multiplier (alpha={a}, beta={b})"));
        }
        if a + b != state.theta {
            v.push(format!("edge {e}: alpha + beta = {} != theta = {}", a + b, state.theta));
        }
        match partition.class(e) {
            EdgeClass::X if a != 0 => v.push(format!("edge {e} in E_X has alpha = {a}")),
            EdgeClass::Y if b != 0 => v.push(format!("edge {e} in E_Y has beta = {b}")),
            _ => {}
        }
        if state.first_reduced[e] != state.first_cost[e] - a {
            v.push(format!("edge {e}: C* != C - alpha"));
        }
        if state.second_reduced[e] != state.second_cost[e] - b {
            v.push(format!("edge {e}: c* != c - beta"));
        }
    }

    let rx = RootedTree::new(graph, &state.x);
    for viol in path_violations_by(graph, &state.x, &rx, &state.first_reduced) {
        v.push(format!(
            "X not minimal under C*: edge {} cheaper than {}",
            viol.entering, viol.leaving
        ));
    }
    let ry = RootedTree::new(graph, &state.y);
    for viol in path_violations_by(graph, &state.y, &ry, &state.second_reduced) {
        v.push(format!(
            "Y not minimal under c*: edge {} cheaper than {}",
            viol.entering, viol.leaving
        ));
    }

    let z = partition.intersection_size();
    check.globally_optimal = z >= state.target && state.theta * (z - state.target) as Cost == 0;
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn initial_state_is_valid() {
        let g = k4();
        let s = initial_pair(&g, &[1, 2, 3, 4, 5, 6], &[6, 5, 4, 3, 2, 1], 1).unwrap();
        let check = verify_pair_state(&g, &s);
        assert!(check.holds(), "{:?}", check.violations);
        assert_eq!(check.globally_optimal, s.intersection_size() >= s.target);
        assert_eq!(s.intersection_size(), s.x.intersection_size(&s.y));
    }

    #[test]
    fn equal_costs_give_identical_trees() {
        let g = k4();
        let costs = [3, 1, 4, 1, 5, 9];
        let s = initial_pair(&g, &costs, &costs, 0).unwrap();
        assert_eq!(s.x, s.y);
        assert_eq!(s.intersection_size(), 3);
        assert!(verify_pair_state(&g, &s).globally_optimal);
    }

    #[test]
    fn broken_alpha_on_first_only_edge_is_caught() {
        let g = k4();
        let mut s = initial_pair(&g, &[1, 2, 3, 4, 5, 6], &[6, 5, 4, 3, 2, 1], 1).unwrap();
        let e = s.partition.only_x[0];
        s.alpha[e] = 1;
        s.first_reduced[e] -= 1;
        s.theta = 1;
        for f in 0..6 {
            if f != e {
                s.beta[f] = 1;
                s.second_reduced[f] -= 1;
            }
        }
        let check = verify_pair_state(&g, &s);
        assert!(!check.holds());
        assert!(check.violations.iter().any(|m| m.contains("E_X")));
    }

    #[test]
    fn rejects_bad_k_and_negative_costs() {
        let g = k4();
        assert!(initial_pair(&g, &[1; 6], &[1; 6], 4).is_err());
        assert!(initial_pair(&g, &[1, 1, 1, 1, 1, -1], &[1; 6], 1).is_err());
        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(initial_pair(&split, &[1; 2], &[1; 2], 1).is_err());
    }
}
