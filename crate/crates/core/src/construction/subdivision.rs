//! Edge subdivision with label-isomorphic interior paths.
//!
//! Every edge `{u, v}` becomes a path `u = x_0, x_1, ..., x_D = v`. The end
//! ports keep their original labels. Interior nodes have degree 2 and their
//! labels depend only on the ordered port pair of the original edge, read
//! from its canonical end (the end with the smaller port; either end of a
//! symmetric edge):
//!
//! * asymmetric edge: port 1 points back toward the canonical end, port 2 forward;
//! * symmetric edge (`D` odd): the first `⌊D/2⌋` interior nodes use port 1
//!   backward, the rest use port 1 forward, so the path reads the same from
//!   both ends.

use serde::{Deserialize, Serialize};

use super::family::PortTable;
use super::ConstructionError;
use crate::graph::{EdgeRecord, NodeId, Port, PortLabeledGraph};
use crate::views::LabelSequence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedEdge {
    pub original: EdgeRecord,
    /// Interior nodes, in order from `original.u` to `original.v`.
    pub interior: Vec<NodeId>,
}

/// Original nodes keep their ids; interior nodes follow in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionMap {
    pub length: usize,
    pub original_node_count: usize,
    pub edges: Vec<SubdividedEdge>,
}

impl SubdivisionMap {
    pub fn image(&self, v: NodeId) -> NodeId {
        debug_assert!(v.index() < self.original_node_count);
        v
    }
}

pub fn has_symmetric_edge(graph: &PortLabeledGraph) -> bool {
    graph.edges().iter().any(EdgeRecord::is_symmetric)
}

/// Replaces every edge with a path of `length` edges.
pub fn subdivide(graph: &PortLabeledGraph, length: usize) -> Result<(PortLabeledGraph, SubdivisionMap), ConstructionError> {
    if length == 0 {
        return Err(ConstructionError::ZeroSubdivision);
    }
    let edges = graph.edges();
    if length.is_multiple_of(2) && edges.iter().any(EdgeRecord::is_symmetric) {
        return Err(ConstructionError::EvenSubdivision { length });
    }
    let n = graph.node_count();
    let interior_per_edge = length - 1;
    let total = n + interior_per_edge * edges.len();
    let degrees = graph
        .nodes()
        .map(|v| graph.degree(v))
        .chain(std::iter::repeat_n(2, total - n));
    let mut table = PortTable::with_degrees(degrees);
    let half = length / 2;

    let mut map_edges = Vec::with_capacity(edges.len());
    for (k, e) in edges.iter().enumerate() {
        let base = n + k * interior_per_edge;
        let interior: Vec<NodeId> = (0..interior_per_edge).map(|t| NodeId::from(base + t)).collect();
        // Orient from the canonical end.
        let (start, start_port, finish, finish_port, path): (NodeId, Port, NodeId, Port, Vec<NodeId>) =
            if e.port_v < e.port_u {
                (e.v, e.port_v, e.u, e.port_u, interior.iter().rev().copied().collect())
            } else {
                (e.u, e.port_u, e.v, e.port_v, interior.clone())
            };
        let symmetric = e.is_symmetric();
        // Ports at x_j toward x_{j-1} and toward x_{j+1}, for j in 1..length.
        let ports_at = |j: usize| -> (Port, Port) {
            if symmetric && j > half {
                (2, 1)
            } else {
                (1, 2)
            }
        };
        let node_at = |j: usize| -> NodeId {
            match j {
                0 => start,
                _ if j == length => finish,
                _ => path[j - 1],
            }
        };
        for j in 0..length {
            let out_port = if j == 0 { start_port } else { ports_at(j).1 };
            let in_port = if j + 1 == length { finish_port } else { ports_at(j + 1).0 };
            table.link(node_at(j), out_port, node_at(j + 1), in_port)?;
        }
        map_edges.push(SubdividedEdge { original: *e, interior });
    }

    let subdivided = table.finish()?;
    Ok((
        subdivided,
        SubdivisionMap { length, original_node_count: n, edges: map_edges },
    ))
}

/// Label sequence of the subdivided path that leaves `from` through `port`
/// and continues straight for `length` steps.
pub fn path_labels(graph: &PortLabeledGraph, from: NodeId, port: Port, length: usize) -> Result<LabelSequence, ConstructionError> {
    let mut labels = Vec::with_capacity(length);
    let mut at = from;
    let mut out = port;
    for step in 0..length {
        let h = graph.half_edge(at, out)?;
        labels.push((out, h.reverse_port));
        at = h.neighbor;
        if step + 1 < length {
            // Interior nodes have ports {1, 2}; leave by the one not entered.
            out = 3 - h.reverse_port;
        }
    }
    Ok(LabelSequence(labels))
}
