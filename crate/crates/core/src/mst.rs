//! Kruskal minimum spanning trees and the path optimality check.

use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, Graph, RootedTree, Tree, UnionFind};

/// Kruskal over edges sorted by `(key(e), e)`.
pub(crate) fn kruskal_by<K: Ord>(graph: &Graph, key: impl Fn(EdgeId) -> K) -> Result<Tree> {
    let mut order: Vec<(K, EdgeId)> = (0..graph.edge_count()).map(|e| (key(e), e)).collect();
    order.sort();
    let mut uf = UnionFind::new(graph.node_count());
    let mut mask = vec![false; graph.edge_count()];
    let mut taken = 0;
    for (_, e) in order {
        if taken == graph.tree_size() {
            break;
        }
        let edge = graph.edge(e);
        if uf.union(edge.u, edge.v) {
            mask[e] = true;
            taken += 1;
        }
    }
    if taken != graph.tree_size() {
        return Err(Error::Disconnected);
    }
    Ok(Tree::from_mask_unchecked(mask))
}

/// Minimum spanning tree, ties broken by ascending edge id.
pub fn minimum_spanning_tree(graph: &Graph, costs: &[Cost]) -> Result<Tree> {
    graph.check_costs(costs)?;
    kruskal_by(graph, |e| costs[e])
}

/// A non-tree edge `entering` cheaper than the tree edge `leaving` on its cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub entering: EdgeId,
    pub leaving: EdgeId,
}

pub(crate) fn path_violations_by<T: Ord>(
    graph: &Graph,
    tree: &Tree,
    rooted: &RootedTree,
    costs: &[T],
) -> Vec<Violation> {
    let mut out = Vec::new();
    for e in 0..graph.edge_count() {
        if tree.contains(e) {
            continue;
        }
        for f in rooted.edge_path(graph, e) {
            if costs[e] < costs[f] {
                out.push(Violation {
                    entering: e,
                    leaving: f,
                });
            }
        }
    }
    out
}

/// Every pair `(e ∉ tree, f ∈ P_tree(e))` with `costs[e] < costs[f]`.
/// The list is empty exactly when `tree` is a minimum spanning tree.
pub fn check_path_optimality(graph: &Graph, tree: &Tree, costs: &[Cost]) -> Result<Vec<Violation>> {
    graph.check_costs(costs)?;
    let tree = Tree::new(graph, tree.edges().iter().copied())?;
    let rooted = RootedTree::new(graph, &tree);
    Ok(path_violations_by(graph, &tree, &rooted, costs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = minimum_spanning_tree(&g, &[1, 2, 3]).unwrap();
        assert_eq!(t.edges(), &[0, 1]);
        assert_eq!(t.cost(&[1, 2, 3]), 3);
        assert!(check_path_optimality(&g, &t, &[1, 2, 3]).unwrap().is_empty());

        let bad = Tree::new(&g, [1, 2]).unwrap();
        assert_eq!(
            check_path_optimality(&g, &bad, &[1, 2, 3]).unwrap(),
            vec![
                Violation {
                    entering: 0,
                    leaving: 2
                },
                Violation {
                    entering: 0,
                    leaving: 1
                }
            ]
        );
    }

    #[test]
    fn equal_costs_take_lowest_ids() {
        // edges 0 and 1 are parallel, so edge 1 is skipped
        let g = Graph::new(4, [(0, 1), (0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let t = minimum_spanning_tree(&g, &[5; 5]).unwrap();
        assert_eq!(t.edges(), &[0, 2, 3]);
    }

    #[test]
    fn disconnected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(minimum_spanning_tree(&g, &[1, 1]), Err(Error::Disconnected));
    }

    #[test]
    fn wrong_length() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert!(matches!(
            minimum_spanning_tree(&g, &[1, 2]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
