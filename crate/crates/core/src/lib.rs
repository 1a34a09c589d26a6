//! View equivalence in anonymous port-labeled networks.
//!
//! * [`graph`]: validated symmetric port-labeled graphs, navigation, diameter,
//!   composition.
//! * [`io`]: JSON graph documents and DOT export.
//! * [`views`]: truncated-view classes by partition refinement, quotient
//!   graphs, distinguishing depths, and brute-force oracles.
//! * [`construction`]: the grid family `G_l` whose witness pair agrees on a
//!   view prefix of length `l - 1`, its subdivisions, and the parameter recipe
//!   for given diameter and size budgets.
//! * [`harness`]: verification reports and the commands behind the CLI.

pub mod construction;
pub mod graph;
pub mod harness;
pub mod io;
pub mod views;

pub use graph::{EdgeRecord, GraphError, HalfEdge, NodeId, Port, PortLabeledGraph, Violation};
