//! Mechanical checks of the structural properties of `G_l` and its column
//! arithmetic. Each check returns how many tuples it examined and which
//! ones failed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bits::{delta, pi};
use super::family::GridIndex;
use crate::graph::{NodeId, PortLabeledGraph};
use crate::views::view_classes;

/// Violation messages kept per sweep; the count is always exact.
const MAX_REPORTED: usize = 20;

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x5EED_2015;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl SweepMode {
    /// Exhaustive up to `l = 6`, seeded sampling above.
    pub fn for_level(l: u32, seed: u64) -> Self {
        if l <= 6 {
            SweepMode::Exhaustive
        } else {
            SweepMode::Sampled { samples: DEFAULT_SAMPLES, seed }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SweepMode::Exhaustive => "exhaustive".to_string(),
            SweepMode::Sampled { samples, seed } => format!("{samples} samples, seed {seed:#x}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl SweepOutcome {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_REPORTED {
                self.violations.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Calls `f` on every triple in `[0, 2^l)^3`, or on sampled triples.
fn for_triples(l: u32, mode: SweepMode, mut f: impl FnMut(u64, u64, u64)) {
    let c = 1u64 << l;
    match mode {
        SweepMode::Exhaustive => {
            for j1 in 0..c {
                for j2 in 0..c {
                    for d in 0..c {
                        f(j1, j2, d);
                    }
                }
            }
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                f(rng.gen_range(0..c), rng.gen_range(0..c), rng.gen_range(0..c));
            }
        }
    }
}

/// `delta(j1 xor d, j2 xor d) = delta(j1, j2)`.
pub fn delta_xor_invariance(l: u32, mode: SweepMode) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    for_triples(l, mode, |j1, j2, d| {
        out.check(delta(j1 ^ d, j2 ^ d, l) == delta(j1, j2, l), || {
            format!("j1={j1} j2={j2} d={d}")
        });
    });
    out
}

/// `delta((j1 + d) mod 2^l, (j2 + d) mod 2^l) = delta(j1, j2)`.
pub fn delta_shift_invariance(l: u32, mode: SweepMode) -> SweepOutcome {
    let mask = (1u64 << l) - 1;
    let mut out = SweepOutcome::default();
    for_triples(l, mode, |j1, j2, d| {
        out.check(delta((j1 + d) & mask, (j2 + d) & mask, l) == delta(j1, j2, l), || {
            format!("j1={j1} j2={j2} d={d}")
        });
    });
    out
}

/// `delta(pi_i(j1), pi_i(j2)) >= delta(j1, j2) - 1` for `i` in `1..l`.
pub fn delta_swap_drop(l: u32, mode: SweepMode) -> SweepOutcome {
    let c = 1u64 << l;
    let mut out = SweepOutcome::default();
    let mut check = |i: u32, j1: u64, j2: u64| {
        out.check(delta(pi(i, j1), pi(i, j2), l) + 1 >= delta(j1, j2, l), || {
            format!("i={i} j1={j1} j2={j2}")
        });
    };
    match mode {
        SweepMode::Exhaustive => {
            for i in 1..l {
                for j1 in 0..c {
                    for j2 in 0..c {
                        check(i, j1, j2);
                    }
                }
            }
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
            for _ in 0..samples {
                check(rng.gen_range(1..l), rng.gen_range(0..c), rng.gen_range(0..c));
            }
        }
    }
    out
}

/// `pi_i(pi_i(j)) = j` for `i` in `0..l`.
pub fn pi_involution(l: u32, mode: SweepMode) -> SweepOutcome {
    let c = 1u64 << l;
    let mut out = SweepOutcome::default();
    let mut check = |i: u32, j: u64| out.check(pi(i, pi(i, j)) == j, || format!("i={i} j={j}"));
    match mode {
        SweepMode::Exhaustive => {
            for i in 0..l {
                for j in 0..c {
                    check(i, j);
                }
            }
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
            for _ in 0..samples {
                check(rng.gen_range(0..l), rng.gen_range(0..c));
            }
        }
    }
    out
}

/// `pi_{l-1-i}(2^(l-2-i)) = 2^(l-1-i)` for `i` in `0..=l-2`: the bit swap
/// that carries the walk from `b` down one level.
pub fn walk_bit_swap(l: u32) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    for i in 0..=l - 2 {
        let j = 1u64 << (l - 2 - i);
        out.check(pi(l - 1 - i, j) == 1u64 << (l - 1 - i), || format!("l={l} i={i}"));
    }
    out
}

/// Same-level pair properties, one outcome per property: equal degree,
/// neighbors on the same level, column `delta` drops by at most one, equal
/// entry ports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SameLevelOutcome {
    pub equal_degree: SweepOutcome,
    pub same_next_level: SweepOutcome,
    pub delta_drop: SweepOutcome,
    pub equal_entry_port: SweepOutcome,
}

impl SameLevelOutcome {
    fn check_pair(&mut self, graph: &PortLabeledGraph, grid: &GridIndex, level: u32, j1: u64, j2: u64, port: Option<u32>) {
        let l = grid.l;
        let (u, v) = (grid.node_of(level, j1), grid.node_of(level, j2));
        let base = delta(j1, j2, l);
        let (du, dv) = (graph.degree(u), graph.degree(v));
        self.equal_degree.check(du == dv, || format!("level={level} j1={j1} j2={j2}: degrees {du} vs {dv}"));
        if du != dv {
            return;
        }
        let ports: Vec<u32> = match port {
            Some(p) => vec![p],
            None => (1..=du as u32).collect(),
        };
        for p in ports {
            let hu = graph.ports(u)[p as usize - 1];
            let hv = graph.ports(v)[p as usize - 1];
            let (lu, cu) = grid.coords(hu.neighbor);
            let (lv, cv) = grid.coords(hv.neighbor);
            self.same_next_level.check(lu == lv, || {
                format!("level={level} j1={j1} j2={j2} port={p}: next levels {lu} vs {lv}")
            });
            if lu == lv {
                let next = delta(cu, cv, l);
                self.delta_drop.check(next + 1 >= base, || {
                    format!("level={level} j1={j1} j2={j2} port={p}: delta {base} -> {next}")
                });
            }
            self.equal_entry_port.check(hu.reverse_port == hv.reverse_port, || {
                format!(
                    "level={level} j1={j1} j2={j2} port={p}: entry ports {} vs {}",
                    hu.reverse_port, hv.reverse_port
                )
            });
        }
    }

    pub fn all(&self) -> [(&'static str, &SweepOutcome); 4] {
        [
            ("same-level-degree", &self.equal_degree),
            ("same-level-next-level", &self.same_next_level),
            ("same-level-delta-drop", &self.delta_drop),
            ("same-level-entry-port", &self.equal_entry_port),
        ]
    }
}

/// For every same-level pair with `delta > 0` and every port: the four
/// same-level properties.
pub fn same_level_sweep(graph: &PortLabeledGraph, grid: &GridIndex, mode: SweepMode) -> SameLevelOutcome {
    let c = grid.column_count();
    let mut out = SameLevelOutcome::default();
    match mode {
        SweepMode::Exhaustive => {
            for level in 0..grid.level_count() {
                for j1 in 0..c {
                    // delta > 0 means equal parity.
                    for j2 in ((j1 & 1)..c).step_by(2) {
                        out.check_pair(graph, grid, level, j1, j2, None);
                    }
                }
            }
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
            for _ in 0..samples {
                let level = rng.gen_range(0..grid.level_count());
                let j1 = rng.gen_range(0..c);
                let j2 = (rng.gen_range(0..c) & !1) | (j1 & 1);
                let port = rng.gen_range(1..=grid.level_degree(level) as u32);
                out.check_pair(graph, grid, level, j1, j2, Some(port));
            }
        }
    }
    out
}

/// `V_delta(v_i(j1)) = V_delta(v_i(j2))` for every distinct same-level pair
/// with `delta(j1, j2) > 0`.
pub fn truncated_view_equality(graph: &PortLabeledGraph, grid: &GridIndex) -> SweepOutcome {
    let l = grid.l;
    let c = grid.column_count();
    let partition = view_classes(graph, l as usize);
    let mut out = SweepOutcome::default();
    for level in 0..grid.level_count() {
        for j1 in 0..c {
            for j2 in ((j1 + 2)..c).step_by(2) {
                let d = delta(j1, j2, l) as usize;
                let colors = partition.coloring(d).expect("rounds up to l computed");
                let (u, v): (NodeId, NodeId) = (grid.node_of(level, j1), grid.node_of(level, j2));
                out.check(colors[u.index()] == colors[v.index()], || {
                    format!("level={level} j1={j1} j2={j2} delta={d}")
                });
            }
        }
    }
    out
}
