use crate::error::{Error, Result};
use crate::graph::{Graph, Tree, UnionFind};

pub const DEFAULT_TREE_CAP: usize = 1_000_000;

/// Calls `visit` for every spanning tree of `graph`, in a fixed order, by
/// contraction-deletion branching on edges in id order. Deleting an edge is
/// only explored while the remaining edges still connect the graph.
pub fn for_each_spanning_tree(graph: &Graph, cap: usize, mut visit: impl FnMut(Tree)) -> Result<usize> {
    graph.ensure_connected()?;
    let mut search = Search {
        graph,
        cap,
        found: 0,
        chosen: vec![false; graph.edge_count()],
    };
    let uf = UnionFind::new(graph.node_count());
    search.branch(0, uf, 0, &mut visit)?;
    Ok(search.found)
}

/// All spanning trees, refusing graphs with more than `cap` of them.
pub fn enumerate_spanning_trees_capped(graph: &Graph, cap: usize) -> Result<Vec<Tree>> {
    let mut out = Vec::new();
    for_each_spanning_tree(graph, cap, |t| out.push(t))?;
    Ok(out)
}

pub fn enumerate_spanning_trees(graph: &Graph) -> Result<Vec<Tree>> {
    enumerate_spanning_trees_capped(graph, DEFAULT_TREE_CAP)
}

struct Search<'g> {
    graph: &'g Graph,
    cap: usize,
    found: usize,
    chosen: Vec<bool>,
}

impl Search<'_> {
    fn branch(&mut self, next: usize, uf: UnionFind, taken: usize, visit: &mut impl FnMut(Tree)) -> Result<()> {
        if taken == self.graph.tree_size() {
            self.found += 1;
            if self.found > self.cap {
                return Err(Error::TooLarge(format!("more than {} spanning trees", self.cap)));
            }
            visit(Tree::from_mask_unchecked(self.chosen.clone()));
            return Ok(());
        }
        if next == self.graph.edge_count() {
            return Ok(());
        }
        let edge = self.graph.edge(next);

        // contract: take the edge if it joins two components
        let mut with = uf.clone();
        if with.union(edge.u, edge.v) {
            self.chosen[next] = true;
            self.branch(next + 1, with, taken + 1, visit)?;
            self.chosen[next] = false;
        }

        // delete: skip the edge if the rest still spans
        let mut rest = uf.clone();
        for e in &self.graph.edges()[next + 1..] {
            rest.union(e.u, e.v);
        }
        if rest.components() == 1 {
            self.branch(next + 1, uf, taken, visit)?;
        }
        Ok(())
    }
}
