//! JSON graph documents and DOT export.
//!
//! The JSON layout is `{"node_count": n, "edges": [{"u", "v", "port_u",
//! "port_v"}, ...]}` with each undirected edge listed once, `u < v`, sorted
//! by `(u, v)`. Output is compact and byte-stable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeRecord, GraphError, PortLabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub node_count: usize,
    pub edges: Vec<EdgeRecord>,
}

impl From<&PortLabeledGraph> for GraphDocument {
    fn from(graph: &PortLabeledGraph) -> Self {
        GraphDocument { node_count: graph.node_count(), edges: graph.edges() }
    }
}

pub fn save_json(graph: &PortLabeledGraph) -> Vec<u8> {
    serde_json::to_vec(&GraphDocument::from(graph)).expect("graph document serializes")
}

pub fn load_json(bytes: &[u8]) -> Result<PortLabeledGraph, GraphError> {
    let doc: GraphDocument = serde_json::from_slice(bytes)?;
    PortLabeledGraph::from_edges(doc.node_count, &doc.edges)
}

pub fn export_dot(graph: &PortLabeledGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in graph.nodes() {
        let _ = writeln!(out, "  {v};");
    }
    for e in graph.edges() {
        let _ = writeln!(out, "  {} -- {} [label=\"{}/{}\"];", e.u, e.v, e.port_u, e.port_v);
    }
    out.push_str("}\n");
    out
}
