//! Undirected multigraphs, spanning trees and the four-way edge partition
//! induced by a pair of trees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;
pub type Cost = i64;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected multigraph with dense edge ids `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("graph must have at least one node".into()));
        }
        let mut list = Vec::new();
        let mut incidence = vec![Vec::new(); node_count];
        for (id, (u, v)) in edges.into_iter().enumerate() {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} = {{{u},{v}}} has an endpoint outside 0..{node_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {id} is a self-loop on node {u}")));
            }
            incidence[u].push(id);
            incidence[v].push(id);
            list.push(Edge { u, v });
        }
        Ok(Graph {
            node_count,
            edges: list,
            incidence,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge ids incident to `node`, in ascending order.
    pub fn incident(&self, node: NodeId) -> &[EdgeId] {
        &self.incidence[node]
    }

    /// Number of edges in every spanning tree.
    pub fn tree_size(&self) -> usize {
        self.node_count - 1
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.node_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.components() == 1
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn check_costs(&self, costs: &[Cost]) -> Result<()> {
        if costs.len() != self.edge_count() {
            return Err(Error::LengthMismatch {
                expected: self.edge_count(),
                got: costs.len(),
            });
        }
        Ok(())
    }

    /// Like [`Graph::check_costs`], additionally rejecting negative entries.
    pub fn check_input_costs(&self, costs: &[Cost]) -> Result<()> {
        self.check_costs(costs)?;
        match costs.iter().position(|&c| c < 0) {
            Some(edge) => Err(Error::NegativeCost {
                edge,
                value: costs[edge],
            }),
            None => Ok(()),
        }
    }

    pub fn check_recovery(&self, k: usize) -> Result<()> {
        if k > self.tree_size() {
            return Err(Error::InvalidRecovery {
                k,
                max: self.tree_size(),
            });
        }
        Ok(())
    }
}

/// A spanning tree of a particular graph, stored as a sorted edge-id list
/// plus a membership mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    edges: Vec<EdgeId>,
    member: Vec<bool>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Tree").field(&self.edges).finish()
    }
}

impl Tree {
    /// Validates that `ids` is a spanning tree of `graph`.
    pub fn new(graph: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut member = vec![false; graph.edge_count()];
        let mut edges = Vec::new();
        for id in ids {
            if id >= graph.edge_count() {
                return Err(Error::InvalidTree(format!("edge id {id} out of range")));
            }
            if member[id] {
                return Err(Error::InvalidTree(format!("edge {id} listed twice")));
            }
            member[id] = true;
            edges.push(id);
        }
        edges.sort_unstable();
        let tree = Tree { edges, member };
        tree.validate(graph)?;
        Ok(tree)
    }

    pub(crate) fn from_mask_unchecked(member: Vec<bool>) -> Self {
        let edges = member
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Tree { edges, member }
    }

    /// Builds a tree from a membership mask, validating it.
    pub fn from_mask(graph: &Graph, member: Vec<bool>) -> Result<Self> {
        if member.len() != graph.edge_count() {
            return Err(Error::LengthMismatch {
                expected: graph.edge_count(),
                got: member.len(),
            });
        }
        let tree = Tree::from_mask_unchecked(member);
        tree.validate(graph)?;
        Ok(tree)
    }

    fn validate(&self, graph: &Graph) -> Result<()> {
        if self.member.len() != graph.edge_count() {
            return Err(Error::InvalidTree("tree belongs to a different graph".into()));
        }
        if self.edges.len() != graph.tree_size() {
            return Err(Error::InvalidTree(format!(
                "{} edges, a spanning tree needs {}",
                self.edges.len(),
                graph.tree_size()
            )));
        }
        let mut uf = UnionFind::new(graph.node_count());
        for &id in &self.edges {
            let e = graph.edge(id);
            if !uf.union(e.u, e.v) {
                return Err(Error::InvalidTree(format!("edge {id} closes a cycle")));
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.member.get(id).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.member
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn cost(&self, costs: &[Cost]) -> Cost {
        self.edges.iter().map(|&e| costs[e]).sum()
    }

    pub fn intersection_size(&self, other: &Tree) -> usize {
        self.edges.iter().filter(|&&e| other.contains(e)).count()
    }
}

/// True iff `ids` forms a spanning tree of `graph`.
pub fn is_spanning_tree(graph: &Graph, ids: &[EdgeId]) -> bool {
    Tree::new(graph, ids.iter().copied()).is_ok()
}

/// Rooted view of a spanning tree answering path queries in O(path length).
#[derive(Debug, Clone)]
pub struct RootedTree {
    parent: Vec<Option<(NodeId, EdgeId)>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn new(graph: &Graph, tree: &Tree) -> Self {
        let n = graph.node_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(node) = stack.pop() {
            for &id in graph.incident(node) {
                if !tree.contains(id) {
                    continue;
                }
                let next = graph.edge(id).other(node);
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, id));
                    depth[next] = depth[node] + 1;
                    stack.push(next);
                }
            }
        }
        RootedTree { parent, depth }
    }

    /// Tree edges on the path from `from` to `to`, in walking order.
    pub fn path(&self, from: NodeId, to: NodeId) -> Vec<EdgeId> {
        let (mut a, mut b) = (from, to);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, e) = self.parent[a].expect("non-root has a parent");
            head.push(e);
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, e) = self.parent[b].expect("non-root has a parent");
            tail.push(e);
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent[a].expect("non-root has a parent");
            let (pb, eb) = self.parent[b].expect("non-root has a parent");
            head.push(ea);
            tail.push(eb);
            a = pa;
            b = pb;
        }
        head.extend(tail.into_iter().rev());
        head
    }

    /// P_T(e) for a non-tree edge, oriented from `e.u` to `e.v`.
    pub fn edge_path(&self, graph: &Graph, e: EdgeId) -> Vec<EdgeId> {
        let edge = graph.edge(e);
        self.path(edge.u, edge.v)
    }
}

/// Path in `tree` joining the endpoints of the non-tree edge `e`.
pub fn tree_path(graph: &Graph, tree: &Tree, e: EdgeId) -> Result<Vec<EdgeId>> {
    tree.validate(graph)?;
    if e >= graph.edge_count() {
        return Err(Error::InvalidGraph(format!("edge id {e} out of range")));
    }
    if tree.contains(e) {
        return Err(Error::EdgeInTree(e));
    }
    Ok(RootedTree::new(graph, tree).edge_path(graph, e))
}

/// Exchange `remove` for `add`; `remove` must lie on the tree path of `add`.
pub fn apply_move(graph: &Graph, tree: &Tree, add: EdgeId, remove: EdgeId) -> Result<Tree> {
    let path = tree_path(graph, tree, add)?;
    if !path.contains(&remove) {
        return Err(Error::IllegalMove { add, remove });
    }
    let mut mask = tree.member.clone();
    mask[add] = true;
    mask[remove] = false;
    Ok(Tree::from_mask_unchecked(mask))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    /// In X only.
    X,
    /// In Y only.
    Y,
    /// In both trees.
    Z,
    /// In neither tree.
    W,
}

/// The partition (E_X, E_Y, E_Z, E_W) of the edge set induced by a pair of trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    class: Vec<EdgeClass>,
    pub only_x: Vec<EdgeId>,
    pub only_y: Vec<EdgeId>,
    pub both: Vec<EdgeId>,
    pub neither: Vec<EdgeId>,
}

impl EdgePartition {
    pub fn class(&self, e: EdgeId) -> EdgeClass {
        self.class[e]
    }

    pub fn intersection_size(&self) -> usize {
        self.both.len()
    }

    pub(crate) fn build(x: &Tree, y: &Tree) -> Self {
        let m = x.member.len();
        let mut p = EdgePartition {
            class: Vec::with_capacity(m),
            only_x: Vec::new(),
            only_y: Vec::new(),
            both: Vec::new(),
            neither: Vec::new(),
        };
        for e in 0..m {
            let class = match (x.member[e], y.member[e]) {
                (true, false) => EdgeClass::X,
                (false, true) => EdgeClass::Y,
                (true, true) => EdgeClass::Z,
                (false, false) => EdgeClass::W,
            };
            match class {
                EdgeClass::X => p.only_x.push(e),
                EdgeClass::Y => p.only_y.push(e),
                EdgeClass::Z => p.both.push(e),
                EdgeClass::W => p.neither.push(e),
            }
            p.class.push(class);
        }
        p
    }
}

pub fn partition_of(graph: &Graph, x: &Tree, y: &Tree) -> Result<EdgePartition> {
    x.validate(graph)?;
    y.validate(graph)?;
    Ok(EdgePartition::build(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_bad_endpoints() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::InvalidGraph(_))));
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn triangle_path() {
        let g = triangle();
        let t = Tree::new(&g, [0, 1]).unwrap();
        assert_eq!(tree_path(&g, &t, 2).unwrap(), vec![0, 1]);
        assert_eq!(tree_path(&g, &t, 0), Err(Error::EdgeInTree(0)));
    }

    #[test]
    fn k4_path_by_dfs() {
        // DFS from node 0 to node 3 over tree edges {0,1},{1,2},{2,3}
        // visits 0 -e0- 1 -e1- 2 -e2- 3.
        let g = k4();
        let t = Tree::new(&g, [0, 1, 2]).unwrap();
        assert_eq!(tree_path(&g, &t, 3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn moves() {
        let g = triangle();
        let t = Tree::new(&g, [0, 1]).unwrap();
        assert_eq!(apply_move(&g, &t, 2, 0).unwrap().edges(), &[1, 2]);
        assert_eq!(apply_move(&g, &t, 0, 0), Err(Error::EdgeInTree(0)));

        let g = k4();
        let t = Tree::new(&g, [0, 1, 2]).unwrap();
        let moved = apply_move(&g, &t, 3, 1).unwrap();
        assert_eq!(moved.edges(), &[0, 2, 3]);
        assert!(is_spanning_tree(&g, moved.edges()));
        // edge 5 = {1,3}: path 1-2-3 does not contain edge 0
        assert_eq!(
            apply_move(&g, &t, 5, 0),
            Err(Error::IllegalMove { add: 5, remove: 0 })
        );
    }

    #[test]
    fn invalid_trees() {
        let g = k4();
        assert!(Tree::new(&g, [0, 1]).is_err());
        assert!(Tree::new(&g, [0, 1, 4]).is_err()); // triangle 0-1-2
        assert!(Tree::new(&g, [0, 0, 1]).is_err());
        assert!(Tree::new(&g, [0, 1, 9]).is_err());
    }

    #[test]
    fn partitions() {
        let g = k4();
        let x = Tree::new(&g, [0, 1, 2]).unwrap();
        let p = partition_of(&g, &x, &x).unwrap();
        assert_eq!(p.both, vec![0, 1, 2]);
        assert!(p.only_x.is_empty() && p.only_y.is_empty());

        // {0,1},{1,2},{2,3} vs {0,3},{0,2},{1,3} are edge-disjoint
        let y = Tree::new(&g, [3, 4, 5]).unwrap();
        let p = partition_of(&g, &x, &y).unwrap();
        assert!(p.both.is_empty());
        assert_eq!(p.only_x.len(), 3);
        assert_eq!(p.only_y.len(), 3);
        assert!(p.neither.is_empty());
    }

    #[test]
    fn six_node_pair_partition() {
        // Ten edges e1..e10 mapped to ids 0..9 on a six-node graph; the two
        // trees are X = {e2,e3,e4,e6,e10} and Y = {e1,e3,e5,e9,e10}.
        let g = Graph::new(
            6,
            [
                (0, 1), // e1
                (0, 2), // e2
                (1, 2), // e3
                (1, 3), // e4
                (2, 4), // e5
                (3, 5), // e6
                (3, 4), // e7
                (4, 5), // e8
                (2, 3), // e9
                (4, 5), // e10
            ],
        )
        .unwrap();
        let x = Tree::new(&g, [1, 2, 3, 5, 9]).unwrap();
        let y = Tree::new(&g, [0, 2, 4, 8, 9]).unwrap();
        let p = partition_of(&g, &x, &y).unwrap();
        assert_eq!(p.both, vec![2, 9]);
        assert_eq!(p.only_x.len(), p.only_y.len());
    }
}
