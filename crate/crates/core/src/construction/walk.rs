//! Replay of the port-2 walk that separates the witness pair.
//!
//! From `a = v_l(0)` the walk visits `v_{l-i}(0)`; from `b = v_l(2^(l-1))` it
//! visits `v_{l-i}(2^(l-1-i))` for `i < l`. After `l` steps both sides sit in
//! level 0 at columns 0 and 1, and step `l + 1` enters `v_0(1)` through port
//! 1 on one side and `v_{l+1}(1)` through port `2^l` on the other.

use serde::{Deserialize, Serialize};

use super::family::GridIndex;
use super::ConstructionError;
use crate::graph::{NodeId, Port, PortLabeledGraph};
use crate::views::LabelSequence;

pub const WALK_PORT: Port = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishingWalk {
    /// Nodes visited from `a`, starting with `a` itself (`l + 2` entries).
    pub from_a: Vec<NodeId>,
    pub from_b: Vec<NodeId>,
    #[serde(skip)]
    pub labels_a: LabelSequence,
    #[serde(skip)]
    pub labels_b: LabelSequence,
    /// Entry ports of the final step, `(from a, from b)`.
    pub final_entry_ports: (Port, Port),
}

impl DistinguishingWalk {
    /// Index of the first step whose label pair differs between the sides.
    pub fn first_divergence(&self) -> Option<usize> {
        self.labels_a.0.iter().zip(&self.labels_b.0).position(|(x, y)| x != y)
    }
}

fn replay(graph: &PortLabeledGraph, start: NodeId, steps: usize) -> Result<(Vec<NodeId>, LabelSequence), ConstructionError> {
    let mut nodes = vec![start];
    let mut labels = Vec::with_capacity(steps);
    let mut at = start;
    for _ in 0..steps {
        let h = graph.half_edge(at, WALK_PORT)?;
        labels.push((WALK_PORT, h.reverse_port));
        at = h.neighbor;
        nodes.push(at);
    }
    Ok((nodes, LabelSequence(labels)))
}

/// Walks port 2 for `l + 1` steps from both witnesses and checks every
/// visited node and the final entry ports.
pub fn distinguishing_walk(graph: &PortLabeledGraph, grid: &GridIndex) -> Result<DistinguishingWalk, ConstructionError> {
    let l = grid.l;
    let steps = l as usize + 1;
    let w = grid.witnesses();
    let (from_a, labels_a) = replay(graph, w.a, steps)?;
    let (from_b, labels_b) = replay(graph, w.b, steps)?;

    let expected = |side: char, i: u32| -> NodeId {
        match (side, i) {
            ('a', i) if i <= l => grid.node_of(l - i, 0),
            ('a', _) => grid.node_of(0, 1),
            (_, i) if i < l => grid.node_of(l - i, 1 << (l - 1 - i)),
            (_, i) if i == l => grid.node_of(0, 1),
            _ => grid.node_of(l + 1, 1),
        }
    };
    for (side, trajectory) in [('a', &from_a), ('b', &from_b)] {
        for (i, &found) in trajectory.iter().enumerate() {
            let want = expected(side, i as u32);
            if found != want {
                return Err(ConstructionError::TrajectoryMismatch {
                    side,
                    step: i,
                    expected: grid.coords(want),
                    found: grid.coords(found),
                });
            }
        }
    }

    let final_entry_ports = (labels_a.0[steps - 1].1, labels_b.0[steps - 1].1);
    if final_entry_ports != (1, grid.column_count() as Port) {
        return Err(ConstructionError::EntryPortMismatch {
            found: final_entry_ports,
            expected: (1, grid.column_count() as Port),
        });
    }
    Ok(DistinguishingWalk { from_a, from_b, labels_a, labels_b, final_entry_ports })
}
