//! Symmetric port-labeled graphs.
//!
//! Every node `v` owns ports `1..=deg(v)`; port `p` at `v` leads to a
//! neighbor `w` and arrives there through the reverse port `q`, and port `q`
//! at `w` leads back to `v` through `p`. Graphs are simple and immutable once
//! built. Adjacency is stored in compressed rows indexed by `port - 1`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A port number. Ports are 1-based at every node.
pub type Port = u32;

/// Dense node identifier in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(u32::try_from(i).expect("node index exceeds u32"))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One endpoint of an edge as seen from its owner: the neighbor and the port
/// through which the neighbor is entered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub neighbor: NodeId,
    pub reverse_port: Port,
}

/// An undirected edge with its two port labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: NodeId,
    pub v: NodeId,
    pub port_u: Port,
    pub port_v: Port,
}

impl EdgeRecord {
    pub fn is_symmetric(&self) -> bool {
        self.port_u == self.port_v
    }
}

/// A broken invariant, located at `(node, port)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A port number is used that exceeds the node's degree.
    PortOutOfRange { node: NodeId, port: Port, degree: usize },
    /// Ports are not the consecutive set `1..=deg`.
    MissingPort { node: NodeId, port: Port },
    NeighborOutOfRange { node: NodeId, port: Port, neighbor: NodeId },
    /// `adjacency[node][port] = (neighbor, reverse_port)` but the entry at
    /// `(neighbor, reverse_port)` does not point back.
    Reciprocity {
        node: NodeId,
        port: Port,
        neighbor: NodeId,
        reverse_port: Port,
        found: Option<(NodeId, Port)>,
    },
    SelfLoop { node: NodeId, port: Port },
    ParallelEdge { node: NodeId, port: Port, neighbor: NodeId },
}

impl Violation {
    /// The `(node, port)` location the violation is reported at.
    pub fn location(&self) -> (NodeId, Port) {
        match *self {
            Violation::PortOutOfRange { node, port, .. }
            | Violation::MissingPort { node, port }
            | Violation::NeighborOutOfRange { node, port, .. }
            | Violation::Reciprocity { node, port, .. }
            | Violation::SelfLoop { node, port }
            | Violation::ParallelEdge { node, port, .. } => (node, port),
        }
    }

    pub fn is_reciprocity(&self) -> bool {
        matches!(self, Violation::Reciprocity { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PortOutOfRange { node, port, degree } => write!(
                f,
                "port out of range at ({node},{port}): node has degree {degree}"
            ),
            Violation::MissingPort { node, port } => {
                write!(f, "missing port at ({node},{port}): ports are not consecutive")
            }
            Violation::NeighborOutOfRange { node, port, neighbor } => {
                write!(f, "neighbor out of range at ({node},{port}): {neighbor}")
            }
            Violation::Reciprocity { node, port, neighbor, reverse_port, found } => {
                write!(
                    f,
                    "reciprocity violation at ({node},{port}): points to ({neighbor},{reverse_port}) which "
                )?;
                match found {
                    Some((w, q)) => write!(f, "points to ({w},{q})"),
                    None => write!(f, "does not exist"),
                }
            }
            Violation::SelfLoop { node, port } => write!(f, "self-loop at ({node},{port})"),
            Violation::ParallelEdge { node, port, neighbor } => {
                write!(f, "parallel edge at ({node},{port}): second edge to {neighbor}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("port {port} out of range at node {node} (degree {degree})")]
    PortOutOfRange { node: NodeId, port: Port, degree: usize },
    #[error("node {0} out of range")]
    NodeOutOfRange(NodeId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph must have at least one node")]
    Empty,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid graph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    let shown: Vec<String> = violations.iter().take(5).map(|v| v.to_string()).collect();
    let mut out = shown.join("; ");
    if violations.len() > 5 {
        out.push_str(&format!("; and {} more", violations.len() - 5));
    }
    out
}

/// Immutable simple graph with a symmetric port labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortLabeledGraph {
    offsets: Vec<usize>,
    halves: Vec<HalfEdge>,
}

impl PortLabeledGraph {
    /// Builds a graph from per-node adjacency lists indexed by `port - 1`,
    /// rejecting anything that violates the invariants.
    pub fn from_adjacency(adjacency: Vec<Vec<HalfEdge>>) -> Result<Self, GraphError> {
        let graph = Self::from_adjacency_unchecked(adjacency);
        if graph.node_count() == 0 {
            return Err(GraphError::Empty);
        }
        let violations = graph.validate();
        if violations.is_empty() {
            Ok(graph)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// Builds a graph without checking invariants. Navigation on a graph
    /// whose `validate()` is nonempty may panic.
    pub fn from_adjacency_unchecked(adjacency: Vec<Vec<HalfEdge>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut halves = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for row in adjacency {
            halves.extend(row);
            offsets.push(halves.len());
        }
        PortLabeledGraph { offsets, halves }
    }

    /// Builds a graph from undirected edge records.
    pub fn from_edges(node_count: usize, edges: &[EdgeRecord]) -> Result<Self, GraphError> {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut degree = vec![0usize; node_count];
        let mut violations = Vec::new();
        for e in edges {
            for (x, y, px) in [(e.u, e.v, e.port_u), (e.v, e.u, e.port_v)] {
                if x.index() >= node_count {
                    return Err(GraphError::NodeOutOfRange(x));
                }
                if y.index() >= node_count {
                    return Err(GraphError::NodeOutOfRange(y));
                }
                if px == 0 {
                    violations.push(Violation::MissingPort { node: x, port: 0 });
                }
                degree[x.index()] += 1;
            }
        }
        let mut slots: Vec<Vec<Option<HalfEdge>>> =
            degree.iter().map(|&d| vec![None; d]).collect();
        for e in edges {
            for (x, y, px, py) in [(e.u, e.v, e.port_u, e.port_v), (e.v, e.u, e.port_v, e.port_u)] {
                if px == 0 {
                    continue;
                }
                let row = &mut slots[x.index()];
                match row.get_mut(px as usize - 1) {
                    Some(slot) => {
                        *slot = Some(HalfEdge { neighbor: y, reverse_port: py });
                    }
                    None => violations.push(Violation::PortOutOfRange {
                        node: x,
                        port: px,
                        degree: degree[x.index()],
                    }),
                }
            }
        }
        violations.extend(check_slots(
            node_count,
            |v| slots[v].len(),
            |v, p| slots[v][p as usize - 1],
        ));
        if !violations.is_empty() {
            violations.sort_by_key(|v| v.location());
            return Err(GraphError::Invalid(violations));
        }
        let adjacency = slots
            .into_iter()
            .map(|row| row.into_iter().map(|h| h.expect("slot checked")).collect())
            .collect();
        Self::from_adjacency(adjacency)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.halves.len() / 2
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::from)
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// The half-edges of `v`, indexed by `port - 1`.
    #[inline]
    pub fn ports(&self, v: NodeId) -> &[HalfEdge] {
        &self.halves[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    pub fn half_edge(&self, v: NodeId, p: Port) -> Result<HalfEdge, GraphError> {
        if v.index() >= self.node_count() {
            return Err(GraphError::NodeOutOfRange(v));
        }
        let row = self.ports(v);
        if p == 0 || p as usize > row.len() {
            return Err(GraphError::PortOutOfRange { node: v, port: p, degree: row.len() });
        }
        Ok(row[p as usize - 1])
    }

    /// The neighbor reached from `v` through port `p`.
    pub fn next(&self, v: NodeId, p: Port) -> Result<NodeId, GraphError> {
        self.half_edge(v, p).map(|h| h.neighbor)
    }

    /// The port through which `next(v, p)` is entered.
    pub fn end(&self, v: NodeId, p: Port) -> Result<Port, GraphError> {
        self.half_edge(v, p).map(|h| h.reverse_port)
    }

    /// Every invariant violation, ordered by node and then port.
    pub fn validate(&self) -> Vec<Violation> {
        check_slots(
            self.node_count(),
            |v| self.offsets[v + 1] - self.offsets[v],
            |v, p| Some(self.halves[self.offsets[v] + p as usize - 1]),
        )
    }

    /// Each undirected edge once, with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> Vec<EdgeRecord> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.nodes() {
            for (i, h) in self.ports(u).iter().enumerate() {
                if u < h.neighbor {
                    out.push(EdgeRecord {
                        u,
                        v: h.neighbor,
                        port_u: i as Port + 1,
                        port_v: h.reverse_port,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// BFS distances from `source`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[source.index()] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.index()].unwrap();
            for h in self.ports(x) {
                if dist[h.neighbor.index()].is_none() {
                    dist[h.neighbor.index()] = Some(d + 1);
                    queue.push_back(h.neighbor);
                }
            }
        }
        dist
    }

    /// Exact diameter by breadth-first search from every node.
    ///
    /// Sources are processed 64 at a time with one bit per source, so each
    /// BFS level of a batch is a single pass over the adjacency.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let n = self.node_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let batches: Vec<usize> = (0..n).step_by(64).collect();
        let eccentricities = batches
            .par_iter()
            .map(|&start| self.batch_eccentricity(start))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(eccentricities.into_iter().max().unwrap_or(0))
    }

    fn batch_eccentricity(&self, start: usize) -> Result<usize, GraphError> {
        let n = self.node_count();
        let width = (n - start).min(64);
        let full: u64 = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        let mut visited = vec![0u64; n];
        let mut frontier = vec![0u64; n];
        for b in 0..width {
            visited[start + b] |= 1 << b;
            frontier[start + b] = 1 << b;
        }
        let mut next = vec![0u64; n];
        let mut depth = 0;
        loop {
            let mut grew = false;
            for v in 0..n {
                let reached = self.halves[self.offsets[v]..self.offsets[v + 1]]
                    .iter()
                    .fold(0u64, |acc, h| acc | frontier[h.neighbor.index()]);
                let fresh = reached & !visited[v];
                next[v] = fresh;
                grew |= fresh != 0;
            }
            if !grew {
                break;
            }
            for v in 0..n {
                visited[v] |= next[v];
            }
            std::mem::swap(&mut frontier, &mut next);
            depth += 1;
        }
        if visited.iter().any(|&m| m != full) {
            return Err(GraphError::Disconnected);
        }
        Ok(depth)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &PortLabeledGraph) -> PortLabeledGraph {
        let shift = self.node_count() as u32;
        let mut halves = self.halves.clone();
        halves.extend(other.halves.iter().map(|h| HalfEdge {
            neighbor: NodeId(h.neighbor.0 + shift),
            reverse_port: h.reverse_port,
        }));
        let base = self.halves.len();
        let mut offsets = self.offsets.clone();
        offsets.extend(other.offsets[1..].iter().map(|o| o + base));
        PortLabeledGraph { offsets, halves }
    }

    /// Disjoint union of `self` and `other` plus an edge between `v1` (in
    /// `self`) and `v2` (in `other`) carrying port `d + 1` at both ends, where
    /// `d` is the common degree of the two endpoints.
    pub fn join_with_bridge(
        &self,
        v1: NodeId,
        other: &PortLabeledGraph,
        v2: NodeId,
    ) -> Result<PortLabeledGraph, GraphError> {
        if v1.index() >= self.node_count() {
            return Err(GraphError::NodeOutOfRange(v1));
        }
        if v2.index() >= other.node_count() {
            return Err(GraphError::NodeOutOfRange(v2));
        }
        let (d1, d2) = (self.degree(v1), other.degree(v2));
        if d1 != d2 {
            return Err(GraphError::DegreeMismatch { left: d1, right: d2 });
        }
        let bridge_port = d1 as Port + 1;
        let shifted_v2 = NodeId(v2.0 + self.node_count() as u32);
        let union = self.disjoint_union(other);
        let mut adjacency: Vec<Vec<HalfEdge>> =
            union.nodes().map(|v| union.ports(v).to_vec()).collect();
        adjacency[v1.index()].push(HalfEdge { neighbor: shifted_v2, reverse_port: bridge_port });
        adjacency[shifted_v2.index()].push(HalfEdge { neighbor: v1, reverse_port: bridge_port });
        PortLabeledGraph::from_adjacency(adjacency)
    }
}

/// Checks the graph invariants over a possibly incomplete slot table.
fn check_slots<D, S>(n: usize, degree: D, slot: S) -> Vec<Violation>
where
    D: Fn(usize) -> usize,
    S: Fn(usize, Port) -> Option<HalfEdge>,
{
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for v in 0..n {
        let node = NodeId::from(v);
        seen.clear();
        for p in 1..=degree(v) as Port {
            let Some(h) = slot(v, p) else {
                violations.push(Violation::MissingPort { node, port: p });
                continue;
            };
            let w = h.neighbor;
            if w.index() >= n {
                violations.push(Violation::NeighborOutOfRange { node, port: p, neighbor: w });
                continue;
            }
            if w == node {
                violations.push(Violation::SelfLoop { node, port: p });
            } else if !seen.insert(w) {
                violations.push(Violation::ParallelEdge { node, port: p, neighbor: w });
            }
            let q = h.reverse_port;
            let back = if q >= 1 && q as usize <= degree(w.index()) {
                slot(w.index(), q)
            } else {
                None
            };
            let points_back = back
                .map(|b| b.neighbor == node && b.reverse_port == p)
                .unwrap_or(false);
            if !points_back {
                violations.push(Violation::Reciprocity {
                    node,
                    port: p,
                    neighbor: w,
                    reverse_port: q,
                    found: back.map(|b| (b.neighbor, b.reverse_port)),
                });
            }
        }
    }
    violations
}
