//! Vertex ordering by x coordinate, increasing spanning trees and spanning
//! tree enumeration.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{connected_with, EdgeGraph, Polyhedron, Topology};
use crate::transform::ARM_ANGLE_BOUND;
use crate::verify::{Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("vertex {vertex} has no neighbor with larger x coordinate")]
    NoRightwardEdge { vertex: usize },
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
}

/// Preorder on vertices by x coordinate; ties broken by index.
#[derive(Debug, Clone)]
pub struct VertexOrder {
    xs: Vec<f64>,
    pub y_min: usize,
    pub z_max: usize,
}

impl VertexOrder {
    pub fn new(p: &Polyhedron) -> Self {
        let xs: Vec<f64> = p.vertices().iter().map(|v| v.x).collect();
        let cmp = |a: &usize, b: &usize| xs[*a].total_cmp(&xs[*b]).then(a.cmp(b));
        let y_min = (0..xs.len()).min_by(cmp).unwrap_or(0);
        let z_max = (0..xs.len()).max_by(cmp).unwrap_or(0);
        VertexOrder { xs, y_min, z_max }
    }

    pub fn x(&self, v: usize) -> f64 {
        self.xs[v]
    }

    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.xs[a].total_cmp(&self.xs[b]).then(a.cmp(&b))
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.xs.len()).collect();
        v.sort_by(|&a, &b| self.cmp(a, b));
        v
    }
}

/// How [`build_increasing_tree`] picks among rightward neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Neighbor with the largest x.
    #[default]
    SteepestAscent,
    /// Lowest-index rightward neighbor.
    FirstByIndex,
    /// Uniform choice from a seeded generator.
    Random(u64),
}

/// A spanning tree of the edge graph rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    /// `parent[root] == root`.
    pub parent: Vec<usize>,
    /// Mesh edge indices, sorted.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: usize,
    /// `[child, parent]` pairs.
    pub edges: Vec<[usize; 2]>,
}

impl SpanningTree {
    /// Orients the edge set `edges` toward `root`, checking that it spans.
    pub fn from_edges(
        topology: &Topology,
        mut edges: Vec<usize>,
        root: usize,
    ) -> Result<Self, TreeError> {
        let n = topology.vertex_count();
        edges.sort_unstable();
        edges.dedup();
        if root >= n {
            return Err(TreeError::NotSpanningTree(format!(
                "root {root} out of range"
            )));
        }
        if edges.len() + 1 != n {
            return Err(TreeError::NotSpanningTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &e in &edges {
            let edge = topology
                .edges()
                .get(e)
                .ok_or_else(|| TreeError::NotSpanningTree(format!("edge {e} out of range")))?;
            adj[edge.a].push(edge.b);
            adj[edge.b].push(edge.a);
        }
        let mut parent = vec![usize::MAX; n];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(TreeError::NotSpanningTree(
                "edge set is disconnected".into(),
            ));
        }
        Ok(SpanningTree {
            root,
            parent,
            edges,
        })
    }

    /// Builds from `[child, parent]` pairs.
    pub fn from_parent_pairs(
        topology: &Topology,
        pairs: &[[usize; 2]],
        root: usize,
    ) -> Result<Self, TreeError> {
        let edges = pairs
            .iter()
            .map(|&[c, p]| {
                topology.edge_between(c, p).ok_or_else(|| {
                    TreeError::NotSpanningTree(format!("({c}, {p}) is not a mesh edge"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tree = Self::from_edges(topology, edges, root)?;
        for &[c, p] in pairs {
            if tree.parent[c] != p {
                return Err(TreeError::NotSpanningTree(format!(
                    "pair ({c}, {p}) disagrees with root {root}"
                )));
            }
        }
        Ok(tree)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Non-root vertices with no children.
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.parent.len()];
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                has_child[p] = true;
            }
        }
        (0..self.parent.len())
            .filter(|&v| v != self.root && !has_child[v])
            .collect()
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            root: self.root,
            edges: (0..self.parent.len())
                .filter(|&v| v != self.root)
                .map(|v| [v, self.parent[v]])
                .collect(),
        }
    }
}

/// Every non-root vertex takes a strictly rightward neighbor as parent.
pub fn build_increasing_tree(q: &Polyhedron, rule: TieRule) -> Result<SpanningTree, TreeError> {
    let order = VertexOrder::new(q);
    let topo = q.topology();
    let mut rng = match rule {
        TieRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let n = q.vertex_count();
    let mut parent = vec![order.z_max; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v == order.z_max {
            continue;
        }
        let mut right: Vec<usize> = topo
            .neighbors(v)
            .into_iter()
            .filter(|&w| order.x(w) > order.x(v))
            .collect();
        right.sort_unstable();
        let chosen = match (rule, rng.as_mut()) {
            (_, _) if right.is_empty() => return Err(TreeError::NoRightwardEdge { vertex: v }),
            (TieRule::SteepestAscent, _) => *right
                .iter()
                .max_by(|&&a, &&b| order.cmp(a, b))
                .expect("non-empty"),
            (TieRule::FirstByIndex, _) => right[0],
            (TieRule::Random(_), Some(r)) => right[r.random_range(0..right.len())],
            (TieRule::Random(_), None) => unreachable!("generator initialised for Random"),
        };
        parent[v] = chosen;
        edges.push(topo.edge_between(v, chosen).expect("neighbor is adjacent"));
    }
    SpanningTree::from_edges(topo, edges, order.z_max)
}

/// Whether every tree edge climbs (weakly) in x toward the root.
pub fn is_increasing(q: &Polyhedron, t: &SpanningTree) -> bool {
    let order = VertexOrder::new(q);
    t.root == order.z_max
        && (0..t.vertex_count())
            .filter(|&v| v != t.root)
            .all(|v| order.x(t.parent[v]) >= order.x(v))
}

/// Number of increasing trees: product of rightward-neighbor counts.
pub fn count_increasing_trees(q: &Polyhedron) -> u128 {
    let order = VertexOrder::new(q);
    (0..q.vertex_count())
        .filter(|&v| v != order.z_max)
        .map(|v| {
            q.topology()
                .neighbors(v)
                .into_iter()
                .filter(|&w| order.x(w) > order.x(v))
                .count() as u128
        })
        .product()
}

/// Leaf edges, oriented leaf→parent, must point rightward within the arm
/// angle bound.
pub fn terminal_edge_check(q: &Polyhedron, t: &SpanningTree) -> Verdict {
    let mut verdict = Verdict::net();
    for leaf in t.leaves() {
        let d = q.vertex(t.parent[leaf]) - q.vertex(leaf);
        let angle = d.yz_norm().atan2(d.x);
        if !(d.x > 0.0 && angle < ARM_ANGLE_BOUND) {
            verdict.failures.push(format!(
                "leaf {leaf} edge to {} makes angle {angle}",
                t.parent[leaf]
            ));
        }
    }
    let ok = verdict.failures.is_empty();
    verdict.checks.insert("terminal_edges".into(), ok);
    if !ok {
        verdict.status = Status::PreconditionFailure;
    }
    verdict
}

/// Spanning trees of `q`'s edge graph, rooted at the x-maximal vertex, in a
/// deterministic order; at most `cap`.
pub fn enumerate_spanning_trees(
    q: &Polyhedron,
    cap: usize,
) -> impl Iterator<Item = SpanningTree> + '_ {
    let root = VertexOrder::new(q).z_max;
    let graph = q.edge_graph();
    SpanningTrees::new(graph, cap).map(move |edges| {
        SpanningTree::from_edges(q.topology(), edges, root)
            .expect("enumeration yields spanning trees")
    })
}

/// Deletion/contraction enumeration over a multigraph, yielding edge index
/// sets.
///
/// Edges are decided in index order; including an edge contracts it, which
/// turns parallel copies into loops that must then be deleted. The invariant
/// that included edges form a forest and included plus undecided edges stay
/// connected means every branch ends in a tree.
#[derive(Debug, Clone)]
pub struct SpanningTrees {
    graph: EdgeGraph,
    decisions: Vec<bool>,
    included: usize,
    cap: usize,
    emitted: usize,
    started: bool,
    done: bool,
}

impl SpanningTrees {
    pub fn new(graph: EdgeGraph, cap: usize) -> Self {
        SpanningTrees {
            graph,
            decisions: Vec::new(),
            included: 0,
            cap,
            emitted: 0,
            started: false,
            done: false,
        }
    }

    fn can_include(&self, i: usize) -> bool {
        let (a, b) = self.graph.edges[i];
        if a == b {
            return false;
        }
        // Reachability of b from a over included edges.
        let mut adj = vec![Vec::new(); self.graph.vertex_count];
        for (j, &inc) in self.decisions.iter().enumerate() {
            if inc {
                let (u, v) = self.graph.edges[j];
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut seen = vec![false; self.graph.vertex_count];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(u) = stack.pop() {
            if u == b {
                return false;
            }
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        true
    }

    fn can_exclude(&self, i: usize) -> bool {
        let kept = self.decisions[..i]
            .iter()
            .enumerate()
            .filter(|(_, &inc)| inc)
            .map(|(j, _)| self.graph.edges[j])
            .chain(self.graph.edges[i + 1..].iter().copied());
        connected_with(self.graph.vertex_count, kept)
    }

    fn target(&self) -> usize {
        self.graph.vertex_count.saturating_sub(1)
    }

    fn descend(&mut self) {
        while self.included < self.target() {
            let i = self.decisions.len();
            if self.can_include(i) {
                self.decisions.push(true);
                self.included += 1;
            } else {
                debug_assert!(self.can_exclude(i));
                self.decisions.push(false);
            }
        }
    }

    fn current(&self) -> Vec<usize> {
        self.decisions
            .iter()
            .enumerate()
            .filter(|(_, &inc)| inc)
            .map(|(j, _)| j)
            .collect()
    }
}

impl Iterator for SpanningTrees {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done || self.emitted >= self.cap {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.graph.vertex_count == 0 || !self.graph.is_connected() {
                self.done = true;
                return None;
            }
            self.descend();
        } else {
            loop {
                match self.decisions.pop() {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(false) => continue,
                    Some(true) => {
                        self.included -= 1;
                        let i = self.decisions.len();
                        if self.can_exclude(i) {
                            self.decisions.push(false);
                            self.descend();
                            break;
                        }
                    }
                }
            }
        }
        self.emitted += 1;
        Some(self.current())
    }
}
