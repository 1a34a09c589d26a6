//! Truncated-view equivalence by port-aware partition refinement.
//!
//! Round 0 gives every node the same color. Round `k + 1` colors a node by
//! its degree together with, for each port in order, the entry port at the
//! neighbor and the neighbor's round-`k` color. Two nodes share a round-`k`
//! color exactly when their views truncated to depth `k` coincide.

mod oracle;

pub use oracle::{
    naive_view_tree, nonbacktracking_label_sequences, nonbacktracking_label_sequences_up_to,
    LabelSequence, OracleError, ViewTree, ORACLE_BUDGET,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{NodeId, Port, PortLabeledGraph};

/// Colorings per refinement round.
///
/// Rounds are stored until the first round that repeats its predecessor;
/// that repeated round is not stored, and every later round equals the last
/// stored one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementPartition {
    pub rounds: Vec<Vec<u32>>,
    pub stabilization_round: Option<usize>,
}

impl RefinementPartition {
    fn start(graph: &PortLabeledGraph) -> Self {
        RefinementPartition {
            rounds: vec![vec![0; graph.node_count()]],
            stabilization_round: None,
        }
    }

    /// Advances one round. Returns `false` once stable.
    fn advance(&mut self, graph: &PortLabeledGraph) -> bool {
        if self.stabilization_round.is_some() {
            return false;
        }
        let last = self.rounds.last().expect("round 0 exists");
        let next = refine_round(graph, last);
        if &next == last {
            self.stabilization_round = Some(self.rounds.len() - 1);
            false
        } else {
            self.rounds.push(next);
            true
        }
    }

    /// Coloring at round `k`, if it is known.
    pub fn coloring(&self, k: usize) -> Option<&[u32]> {
        match self.rounds.get(k) {
            Some(c) => Some(c),
            None if self.stabilization_round.is_some() => self.rounds.last().map(Vec::as_slice),
            None => None,
        }
    }

    /// Number of stored rounds.
    pub fn computed_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn class_count(&self, k: usize) -> Option<usize> {
        self.coloring(k)
            .map(|c| c.iter().copied().max().map_or(0, |m| m as usize + 1))
    }

    /// Final coloring (the stabilized one when stabilization was reached).
    pub fn final_coloring(&self) -> &[u32] {
        self.rounds.last().expect("round 0 exists")
    }

    /// First stored round in which `u` and `v` get different colors. On a
    /// stabilized partition `None` means equal infinite views.
    pub fn first_split(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.rounds.iter().position(|c| c[u.index()] != c[v.index()])
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("partition serializes")
    }
}

/// One refinement round. Colors are renumbered densely in first-touch order
/// over ascending node ids.
fn refine_round(graph: &PortLabeledGraph, colors: &[u32]) -> Vec<u32> {
    let n = graph.node_count();
    let mut signatures: Vec<u32> = Vec::with_capacity(n + 4 * graph.edge_count());
    let mut bounds = Vec::with_capacity(n + 1);
    bounds.push(0);
    for v in graph.nodes() {
        let ports = graph.ports(v);
        signatures.push(ports.len() as u32);
        for h in ports {
            signatures.push(h.reverse_port);
            signatures.push(colors[h.neighbor.index()]);
        }
        bounds.push(signatures.len());
    }
    let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    for v in 0..n {
        let sig = &signatures[bounds[v]..bounds[v + 1]];
        let fresh = ids.len() as u32;
        next.push(*ids.entry(sig).or_insert(fresh));
    }
    next
}

/// Refinement rounds `0..=depth`, stopping early at stabilization.
pub fn view_classes(graph: &PortLabeledGraph, depth: usize) -> RefinementPartition {
    let mut partition = RefinementPartition::start(graph);
    while partition.rounds.len() <= depth && partition.advance(graph) {}
    partition
}

/// Whether `V_depth(u) = V_depth(v)`.
pub fn views_equal(graph: &PortLabeledGraph, u: NodeId, v: NodeId, depth: usize) -> bool {
    if u == v {
        return true;
    }
    let partition = view_classes(graph, depth);
    let colors = partition.coloring(depth).expect("rounds computed up to depth");
    colors[u.index()] == colors[v.index()]
}

/// Refines until two consecutive rounds induce the same partition.
pub fn stabilized_partition(graph: &PortLabeledGraph) -> RefinementPartition {
    let mut partition = RefinementPartition::start(graph);
    while partition.advance(graph) {}
    partition
}

/// Smallest depth at which the views of `u` and `v` differ, or `None` when
/// their infinite views are equal.
pub fn minimal_distinguishing_depth(graph: &PortLabeledGraph, u: NodeId, v: NodeId) -> Option<usize> {
    let mut partition = RefinementPartition::start(graph);
    loop {
        let k = partition.rounds.len() - 1;
        let colors = &partition.rounds[k];
        if colors[u.index()] != colors[v.index()] {
            return Some(k);
        }
        if !partition.advance(graph) {
            return None;
        }
    }
}

/// Graph on stabilized view classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGraph {
    /// Stabilized class of every node.
    pub class_of: Vec<u32>,
    /// For each class and each port (index `port - 1`): the target class and
    /// the entry port.
    pub table: Vec<Vec<(u32, Port)>>,
}

impl QuotientGraph {
    pub fn class_count(&self) -> usize {
        self.table.len()
    }
}

pub fn quotient_graph(graph: &PortLabeledGraph) -> QuotientGraph {
    let partition = stabilized_partition(graph);
    quotient_from_partition(graph, &partition)
}

pub fn quotient_from_partition(graph: &PortLabeledGraph, partition: &RefinementPartition) -> QuotientGraph {
    let class_of = partition.final_coloring().to_vec();
    let classes = class_of.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut table = vec![None; classes];
    for v in graph.nodes() {
        let c = class_of[v.index()] as usize;
        if table[c].is_none() {
            table[c] = Some(
                graph
                    .ports(v)
                    .iter()
                    .map(|h| (class_of[h.neighbor.index()], h.reverse_port))
                    .collect::<Vec<_>>(),
            );
        }
    }
    QuotientGraph {
        class_of,
        table: table.into_iter().map(|row| row.expect("class has a member")).collect(),
    }
}
