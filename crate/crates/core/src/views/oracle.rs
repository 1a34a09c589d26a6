//! Brute-force view oracles for small instances.
//!
//! These build truncated views and walk label sets explicitly and exist to
//! cross-check the refinement engine. They refuse instances where
//! `max_degree^depth` exceeds [`ORACLE_BUDGET`].

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{NodeId, Port, PortLabeledGraph};

pub const ORACLE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("oracle budget exceeded: max degree {max_degree}^{depth} > {ORACLE_BUDGET}")]
pub struct OracleError {
    pub max_degree: usize,
    pub depth: usize,
}

fn check_budget(graph: &PortLabeledGraph, depth: usize) -> Result<(), OracleError> {
    let max_degree = graph.max_degree();
    let mut size: u128 = 1;
    for _ in 0..depth {
        size = size.saturating_mul(max_degree as u128);
        if size > ORACLE_BUDGET {
            return Err(OracleError { max_degree, depth });
        }
    }
    Ok(())
}

/// Explicit truncated view. Each child edge carries
/// `(port at parent, port at child)`; children are ordered by parent port.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViewTree {
    pub children: Vec<(Port, Port, ViewTree)>,
}

impl ViewTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|(_, _, c)| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|(_, _, c)| c.depth() + 1).max().unwrap_or(0)
    }
}

pub fn naive_view_tree(graph: &PortLabeledGraph, v: NodeId, depth: usize) -> Result<ViewTree, OracleError> {
    check_budget(graph, depth)?;
    Ok(build_tree(graph, v, depth))
}

fn build_tree(graph: &PortLabeledGraph, v: NodeId, depth: usize) -> ViewTree {
    if depth == 0 {
        return ViewTree { children: Vec::new() };
    }
    let children = graph
        .ports(v)
        .iter()
        .enumerate()
        .map(|(i, h)| (i as Port + 1, h.reverse_port, build_tree(graph, h.neighbor, depth - 1)))
        .collect();
    ViewTree { children }
}

/// Port labels of one walk: `(forward port, entry port)` per step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSequence(pub Vec<(Port, Port)>);

impl LabelSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Label sequences of all non-backtracking walks of exactly `length` steps
/// from `v`.
pub fn nonbacktracking_label_sequences(
    graph: &PortLabeledGraph,
    v: NodeId,
    length: usize,
) -> Result<BTreeSet<LabelSequence>, OracleError> {
    check_budget(graph, length)?;
    let mut out = BTreeSet::new();
    walk(graph, v, None, length, &mut Vec::new(), &mut |seq| {
        if seq.len() == length {
            out.insert(LabelSequence(seq.to_vec()));
        }
    });
    Ok(out)
}

/// Label sequences of all non-backtracking walks of at most `length` steps.
///
/// Walks stuck at a degree-1 node end early, so the exact-length set alone
/// loses information whenever the graph has such nodes. Equality of these
/// prefix-closed sets decides equality of truncated views.
pub fn nonbacktracking_label_sequences_up_to(
    graph: &PortLabeledGraph,
    v: NodeId,
    length: usize,
) -> Result<BTreeSet<LabelSequence>, OracleError> {
    check_budget(graph, length)?;
    let mut out = BTreeSet::new();
    walk(graph, v, None, length, &mut Vec::new(), &mut |seq| {
        out.insert(LabelSequence(seq.to_vec()));
    });
    Ok(out)
}

fn walk<F: FnMut(&[(Port, Port)])>(
    graph: &PortLabeledGraph,
    at: NodeId,
    entered_by: Option<Port>,
    remaining: usize,
    prefix: &mut Vec<(Port, Port)>,
    visit: &mut F,
) {
    visit(prefix);
    if remaining == 0 {
        return;
    }
    for (i, h) in graph.ports(at).iter().enumerate() {
        let p = i as Port + 1;
        if entered_by == Some(p) {
            continue;
        }
        prefix.push((p, h.reverse_port));
        walk(graph, h.neighbor, Some(h.reverse_port), remaining - 1, prefix, visit);
        prefix.pop();
    }
}
