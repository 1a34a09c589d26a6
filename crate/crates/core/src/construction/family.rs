//! The grid graphs `G_l`: `l + 2` levels of `2^l` columns.
//!
//! Edge stages:
//! 1. level 0 is a perfect matching `j <-> j xor 1`, port `1 + ((j + 1) mod 2)`;
//! 2. level `l + 1` is a clique, port `p` at column `j` leads to `(j + p) mod 2^l`;
//! 3. `v_{l+1}(j)` reaches every lower node in its column through port `2^l + i`,
//!    entered through port 1, or `1 + (j mod 2)` at level 0;
//! 4. `v_i(j)` goes up to `v_{i+1}(pi_i(j))` through port 3, entered through port 2.

use serde::{Deserialize, Serialize};

use super::bits::pi;
use super::ConstructionError;
use crate::graph::{HalfEdge, NodeId, Port, PortLabeledGraph};

pub const MIN_LEVEL: u32 = 2;
/// Beyond this the level-`l+1` clique alone has more than `2^25` edges.
pub const MAX_LEVEL: u32 = 13;

/// Bijection `(level, column) <-> node id` with `node_of(i, j) = i * 2^l + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridIndex {
    pub l: u32,
}

impl GridIndex {
    pub fn new(l: u32) -> Result<Self, ConstructionError> {
        if !(MIN_LEVEL..=MAX_LEVEL).contains(&l) {
            return Err(ConstructionError::LevelOutOfRange(l));
        }
        Ok(GridIndex { l })
    }

    pub fn level_count(&self) -> u32 {
        self.l + 2
    }

    pub fn column_count(&self) -> u64 {
        1 << self.l
    }

    pub fn node_count(&self) -> usize {
        self.level_count() as usize * self.column_count() as usize
    }

    #[inline]
    pub fn node_of(&self, level: u32, column: u64) -> NodeId {
        debug_assert!(level < self.level_count() && column < self.column_count());
        NodeId(((level as u64) << self.l | column) as u32)
    }

    #[inline]
    pub fn coords(&self, v: NodeId) -> (u32, u64) {
        let raw = v.0 as u64;
        ((raw >> self.l) as u32, raw & (self.column_count() - 1))
    }

    /// Degree of every node on `level`.
    pub fn level_degree(&self, level: u32) -> usize {
        let l = self.l;
        match level {
            _ if level == l + 1 => (1usize << l) + l as usize,
            _ if level == l => 2,
            _ => 3,
        }
    }

    /// Exact edge count: `2^(l-1) + 2^(l-1)(2^l - 1) + (l+1)2^l + l 2^l`.
    pub fn edge_count(&self) -> usize {
        let c = 1usize << self.l;
        let l = self.l as usize;
        c / 2 + (c / 2) * (c - 1) + (l + 1) * c + l * c
    }

    pub fn witnesses(&self) -> WitnessPair {
        WitnessPair {
            a: self.node_of(self.l, 0),
            b: self.node_of(self.l, 1 << (self.l - 1)),
        }
    }
}

/// `a = v_l(0)` and `b = v_l(2^(l-1))`: equal views to depth `l - 1`,
/// distinct infinite views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub a: NodeId,
    pub b: NodeId,
}

/// Fixed-degree port table filled one edge at a time.
pub(crate) struct PortTable {
    slots: Vec<Vec<Option<HalfEdge>>>,
}

impl PortTable {
    pub(crate) fn with_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        PortTable { slots: degrees.into_iter().map(|d| vec![None; d]).collect() }
    }

    /// Sets `λ(u, v) = pu` and `λ(v, u) = pv`. Re-setting the same edge is a no-op.
    pub(crate) fn link(&mut self, u: NodeId, pu: Port, v: NodeId, pv: Port) -> Result<(), ConstructionError> {
        for (x, px, y, py) in [(u, pu, v, pv), (v, pv, u, pu)] {
            let want = HalfEdge { neighbor: y, reverse_port: py };
            let slot = self
                .slots
                .get_mut(x.index())
                .and_then(|row| row.get_mut((px as usize).wrapping_sub(1)))
                .ok_or(ConstructionError::PortClash { node: x, port: px })?;
            match slot {
                Some(h) if *h != want => return Err(ConstructionError::PortClash { node: x, port: px }),
                _ => *slot = Some(want),
            }
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<PortLabeledGraph, ConstructionError> {
        let mut adjacency = Vec::with_capacity(self.slots.len());
        for (v, row) in self.slots.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (i, h) in row.into_iter().enumerate() {
                out.push(h.ok_or(ConstructionError::PortClash {
                    node: NodeId::from(v),
                    port: i as Port + 1,
                })?);
            }
            adjacency.push(out);
        }
        Ok(PortLabeledGraph::from_adjacency(adjacency)?)
    }
}

/// Builds `G_l` and its grid index.
pub fn build_g(l: u32) -> Result<(PortLabeledGraph, GridIndex), ConstructionError> {
    let grid = GridIndex::new(l)?;
    let columns = grid.column_count();
    let top = l + 1;
    let mut table = PortTable::with_degrees(
        (0..grid.level_count()).flat_map(|i| std::iter::repeat_n(grid.level_degree(i), columns as usize)),
    );
    let port = |x: u64| x as Port;

    for j in 0..columns {
        let partner = j ^ 1;
        table.link(
            grid.node_of(0, j),
            port(1 + (j + 1) % 2),
            grid.node_of(0, partner),
            port(1 + (partner + 1) % 2),
        )?;
    }

    for j in 0..columns {
        for p in 1..columns {
            let k = (j + p) % columns;
            table.link(grid.node_of(top, j), port(p), grid.node_of(top, k), port(columns - p))?;
        }
    }

    for j in 0..columns {
        for i in 0..=l {
            let back = if i > 0 { 1 } else { port(1 + j % 2) };
            table.link(grid.node_of(top, j), port(columns + i as u64), grid.node_of(i, j), back)?;
        }
    }

    for j in 0..columns {
        for i in 0..l {
            table.link(grid.node_of(i, j), 3, grid.node_of(i + 1, pi(i, j)), 2)?;
        }
    }

    Ok((table.finish()?, grid))
}
