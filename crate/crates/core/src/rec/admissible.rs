//! Admissible graph construction and augmenting path search.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::state::PairState;
use crate::graph::{EdgeClass, EdgeId, EdgePartition, Graph, RootedTree, Tree};

/// Tree paths `P_T(e)` for every non-tree edge of one tree.
#[derive(Debug, Clone)]
pub(crate) struct TreePaths {
    paths: Vec<Vec<EdgeId>>,
}

impl TreePaths {
    pub(crate) fn new(graph: &Graph, tree: &Tree) -> Self {
        let rooted = RootedTree::new(graph, tree);
        let paths = (0..graph.edge_count())
            .map(|e| {
                if tree.contains(e) {
                    Vec::new()
                } else {
                    rooted.edge_path(graph, e)
                }
            })
            .collect();
        TreePaths { paths }
    }

    pub(crate) fn of(&self, e: EdgeId) -> &[EdgeId] {
        &self.paths[e]
    }
}

/// Paths in both trees of a pair. Valid as long as the trees do not change.
#[derive(Debug, Clone)]
pub(crate) struct PairPaths {
    pub(crate) x: TreePaths,
    pub(crate) y: TreePaths,
}

impl PairPaths {
    pub(crate) fn new(graph: &Graph, state: &PairState) -> Self {
        PairPaths {
            x: TreePaths::new(graph, &state.x),
            y: TreePaths::new(graph, &state.y),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcLabel {
    pub x_arc: bool,
    pub y_arc: bool,
}

/// Directed arc between edge nodes. An X-arc `(e, f)` encodes the move
/// `X + e - f`; a Y-arc `(f, e)` encodes `Y + e - f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: EdgeId,
    pub head: EdgeId,
    pub label: ArcLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleGraph {
    admissible: Vec<bool>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl AdmissibleGraph {
    pub fn is_admissible(&self, e: EdgeId) -> bool {
        self.admissible[e]
    }

    pub fn admissible_nodes(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.admissible
            .iter()
            .enumerate()
            .filter_map(|(e, &a)| a.then_some(e))
    }

    /// Retained arcs sorted by `(tail, head)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, tail: EdgeId, head: EdgeId) -> Option<&Arc> {
        self.out[tail]
            .iter()
            .map(|&i| &self.arcs[i])
            .find(|a| a.head == head)
    }

    pub fn successors(&self, e: EdgeId) -> impl Iterator<Item = &Arc> + '_ {
        self.out[e].iter().map(move |&i| &self.arcs[i])
    }

    pub fn node_count(&self) -> usize {
        self.admissible.len()
    }
}

/// Tight-exchange graph on edge nodes, pruned to nodes reachable from E_Y.
pub fn build_admissible_graph(graph: &Graph, state: &PairState) -> AdmissibleGraph {
    build_with(state, &PairPaths::new(graph, state))
}

pub(crate) fn build_with(state: &PairState, paths: &PairPaths) -> AdmissibleGraph {
    let m = state.alpha.len();
    let mut labels: BTreeMap<(EdgeId, EdgeId), ArcLabel> = BTreeMap::new();
    for e in 0..m {
        if !state.x.contains(e) {
            for &f in paths.x.of(e) {
                if state.first_reduced[e] == state.first_reduced[f] {
                    labels.entry((e, f)).or_default().x_arc = true;
                }
            }
        }
        if !state.y.contains(e) {
            for &f in paths.y.of(e) {
                if state.second_reduced[e] == state.second_reduced[f] {
                    labels.entry((f, e)).or_default().y_arc = true;
                }
            }
        }
    }

    let mut all_out: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
    for &(tail, head) in labels.keys() {
        all_out[tail].push(head);
    }
    let mut admissible = vec![false; m];
    let mut queue: VecDeque<EdgeId> = state.partition.only_y.iter().copied().collect();
    for &e in &queue {
        admissible[e] = true;
    }
    while let Some(e) = queue.pop_front() {
        for &f in &all_out[e] {
            if !admissible[f] {
                admissible[f] = true;
                queue.push_back(f);
            }
        }
    }

    let mut arcs = Vec::new();
    let mut out = vec![Vec::new(); m];
    for ((tail, head), label) in labels {
        if admissible[tail] {
            out[tail].push(arcs.len());
            arcs.push(Arc { tail, head, label });
        }
    }
    AdmissibleGraph {
        admissible,
        arcs,
        out,
    }
}

/// Which tree an arc of an augmenting path modifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    X,
    Y,
}

/// Shape of an augmenting path, named after the exchange pattern it induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AugmentCase {
    /// Single arc from E_Y to E_X.
    #[serde(rename = "1")]
    Direct,
    /// X, Y, X, ... through E_Z/E_W, last arc Y (leaves E_Z).
    #[serde(rename = "2a")]
    FirstTreeLeadsEven,
    /// X, Y, X, ... ending with an X-arc out of E_W.
    #[serde(rename = "2b")]
    FirstTreeLeadsOdd,
    /// Y, X, Y, ... through E_W/E_Z, last arc X (leaves E_W).
    #[serde(rename = "3a")]
    SecondTreeLeadsEven,
    /// Y, X, Y, ... ending with a Y-arc out of E_Z.
    #[serde(rename = "3b")]
    SecondTreeLeadsOdd,
}

impl AugmentCase {
    pub fn label(&self) -> &'static str {
        match self {
            AugmentCase::Direct => "1",
            AugmentCase::FirstTreeLeadsEven => "2a",
            AugmentCase::FirstTreeLeadsOdd => "2b",
            AugmentCase::SecondTreeLeadsEven => "3a",
            AugmentCase::SecondTreeLeadsOdd => "3b",
        }
    }
}

impl fmt::Display for AugmentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    /// Edge nodes from an E_Y node to an E_X node.
    pub nodes: Vec<EdgeId>,
    /// `moves[i]` is the move applied for arc `nodes[i] -> nodes[i + 1]`.
    pub moves: Vec<Move>,
    pub case: AugmentCase,
}

impl AugmentingPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Shortest path from any E_Y node to any E_X node; among shortest paths the
/// lexicographically smallest node sequence is returned.
pub fn find_augmenting_path(ag: &AdmissibleGraph, partition: &EdgePartition) -> Option<AugmentingPath> {
    let m = ag.node_count();
    // distance to the nearest admissible E_X node, by reverse BFS
    let mut incoming: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
    for arc in &ag.arcs {
        incoming[arc.head].push(arc.tail);
    }
    let mut dist = vec![usize::MAX; m];
    let mut queue = VecDeque::new();
    for &f in &partition.only_x {
        if ag.admissible[f] {
            dist[f] = 0;
            queue.push_back(f);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &incoming[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }

    let best = partition.only_y.iter().map(|&e| dist[e]).min()?;
    if best == usize::MAX {
        return None;
    }
    let start = *partition.only_y.iter().find(|&&e| dist[e] == best)?;

    let mut nodes = vec![start];
    let mut moves = Vec::new();
    let mut cur = start;
    while dist[cur] > 0 {
        let arc = ag
            .successors(cur)
            .find(|a| dist[a.head] == dist[cur] - 1)
            .expect("BFS layer has a successor");
        moves.push(if arc.label.x_arc { Move::X } else { Move::Y });
        nodes.push(arc.head);
        cur = arc.head;
    }

    let case = classify(&nodes, &moves, partition);
    Some(AugmentingPath { nodes, moves, case })
}

fn classify(nodes: &[EdgeId], moves: &[Move], partition: &EdgePartition) -> AugmentCase {
    if moves.len() == 1 {
        return AugmentCase::Direct;
    }
    let last = *moves.last().expect("non-empty path");
    match partition.class(nodes[1]) {
        EdgeClass::Z => {
            if last == Move::Y {
                AugmentCase::FirstTreeLeadsEven
            } else {
                AugmentCase::FirstTreeLeadsOdd
            }
        }
        _ => {
            if last == Move::X {
                AugmentCase::SecondTreeLeadsEven
            } else {
                AugmentCase::SecondTreeLeadsOdd
            }
        }
    }
}
