use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::report::{single, Measured, Parameters, VerificationReport};
use crate::construction::lemmas::{self, SweepMode, SweepOutcome};
use crate::construction::{
    build_g, distinguishing_walk, path_labels, subdivide, ConstructionError, GridIndex, TheoremParameters,
    WitnessPair,
};
use crate::graph::{GraphError, NodeId, Port, PortLabeledGraph};
use crate::io::{export_dot, load_json, save_json};
use crate::views::{quotient_from_partition, stabilized_partition, LabelSequence, QuotientGraph, RefinementPartition};

/// Smallest `l` for which the quantitative claims about `G_l` hold.
pub const CLAIM_MIN_LEVEL: u32 = 6;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.to_path_buf(), source }
}

pub fn load_graph_file(path: &Path) -> Result<PortLabeledGraph, HarnessError> {
    let bytes = std::fs::read(path).map_err(io_error(path))?;
    Ok(load_json(&bytes)?)
}

fn check_subdivision_length(subdivide: Option<usize>) -> Result<(), HarnessError> {
    match subdivide {
        Some(d) if d == 0 || d % 2 == 0 => Err(HarnessError::Parameter(format!(
            "subdivision length must be odd and positive, got {d}"
        ))),
        _ => Ok(()),
    }
}

fn convention(l: u32) -> String {
    format!("node_of(level, column) = level * 2^{l} + column")
}

fn measure(graph: &PortLabeledGraph, partition: &RefinementPartition, witnesses: Option<WitnessPair>) -> Measured {
    Measured {
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        diameter: graph.diameter().ok(),
        quotient_size: partition.class_count(partition.computed_rounds() - 1),
        stabilization_round: partition.stabilization_round,
        distinguishing_depth: witnesses.and_then(|w| partition.first_split(w.a, w.b)),
        witnesses: witnesses.map(|w| (w.a.0, w.b.0)),
        ..Measured::default()
    }
}

fn stabilization_bound(graph: &PortLabeledGraph, partition: &RefinementPartition) -> SweepOutcome {
    let n = graph.node_count();
    match partition.stabilization_round {
        Some(s) => single(s < n, || format!("stabilized at round {s} with n = {n}")),
        None => single(false, || "refinement did not stabilize".to_string()),
    }
}

// ---------------------------------------------------------------- gen

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenMetadata {
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivide: Option<usize>,
    pub level_count: u32,
    pub column_count: u64,
    pub node_id_convention: String,
    pub base_node_count: usize,
    pub node_count: usize,
    pub edge_count: usize,
    pub witness_a: u32,
    pub witness_b: u32,
}

#[derive(Debug, Clone)]
pub struct GenOutput {
    pub graph_path: PathBuf,
    pub meta_path: PathBuf,
    pub dot_path: Option<PathBuf>,
    pub metadata: GenMetadata,
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `G_l` (or its subdivision) to `out`, grid metadata to
/// `<out>.meta.json` and optionally DOT to `<out>.dot`.
pub fn cmd_gen(l: u32, subdivide_length: Option<usize>, out: &Path, dot: bool) -> Result<GenOutput, HarnessError> {
    check_subdivision_length(subdivide_length)?;
    let (base, grid) = build_g(l)?;
    let graph = match subdivide_length {
        Some(d) => subdivide(&base, d)?.0,
        None => base.clone(),
    };
    let w = grid.witnesses();
    let metadata = GenMetadata {
        l,
        subdivide: subdivide_length,
        level_count: grid.level_count(),
        column_count: grid.column_count(),
        node_id_convention: convention(l),
        base_node_count: base.node_count(),
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        witness_a: w.a.0,
        witness_b: w.b.0,
    };
    std::fs::write(out, save_json(&graph)).map_err(io_error(out))?;
    let meta_path = with_suffix(out, ".meta.json");
    let mut meta = serde_json::to_vec_pretty(&metadata).expect("metadata serializes");
    meta.push(b'\n');
    std::fs::write(&meta_path, meta).map_err(io_error(&meta_path))?;
    let dot_path = if dot {
        let p = with_suffix(out, ".dot");
        std::fs::write(&p, export_dot(&graph)).map_err(io_error(&p))?;
        Some(p)
    } else {
        None
    };
    Ok(GenOutput { graph_path: out.to_path_buf(), meta_path, dot_path, metadata })
}

// ---------------------------------------------------------------- verify

/// Checks every structural property of `G_l` and, when `subdivide_length` is
/// given, of `ξ_D(G_l)`.
pub fn verify_family(l: u32, subdivide_length: Option<usize>, seed: u64) -> Result<VerificationReport, HarnessError> {
    if l < CLAIM_MIN_LEVEL {
        return Err(HarnessError::Parameter(format!(
            "claim verification needs l >= {CLAIM_MIN_LEVEL}, got {l}"
        )));
    }
    check_subdivision_length(subdivide_length)?;
    let (g, grid) = build_g(l)?;
    let mode = SweepMode::for_level(l, seed);
    let mut report = VerificationReport::new(
        "verify",
        Parameters {
            l: Some(l),
            subdivide: subdivide_length,
            seed: matches!(mode, SweepMode::Sampled { .. }).then_some(seed),
            ..Parameters::default()
        },
    );
    report.node_id_convention = Some(convention(l));
    let n = g.node_count();
    let m = g.edge_count();
    let w = grid.witnesses();

    report.claim("graph-valid", "all nodes and ports", || validation_outcome(&g));
    report.claim("node-count", "n = (l+2) 2^l", || {
        single(n == grid.node_count(), || format!("{n} nodes, expected {}", grid.node_count()))
    });
    report.claim("edge-bound", "|E| < 2^(2l), |E| equals the stage count", || {
        single(m < 1 << (2 * l) && m == grid.edge_count(), || {
            format!("{m} edges, stage count {}", grid.edge_count())
        })
    });
    let mut diameter = None;
    report.claim("diameter-bound", "diam <= 3", || match g.diameter() {
        Ok(d) => {
            diameter = Some(d);
            single(d <= 3, || format!("diameter {d}"))
        }
        Err(e) => single(false, || e.to_string()),
    });
    report.claim("degree-profile", "every node against its level degree", || {
        let mut out = SweepOutcome::default();
        for v in g.nodes() {
            let (level, column) = grid.coords(v);
            let ok = g.degree(v) == grid.level_degree(level);
            out.checked += 1;
            if !ok {
                out.violation_count += 1;
                out.violations.push(format!("v_{level}({column}) has degree {}", g.degree(v)));
            }
        }
        out
    });

    let q = mode.describe();
    report.claim("delta-xor-invariance", format!("j1, j2, d; {q}"), || lemmas::delta_xor_invariance(l, mode));
    report.claim("delta-shift-invariance", format!("j1, j2, d; {q}"), || lemmas::delta_shift_invariance(l, mode));
    report.claim("delta-swap-drop", format!("i in 1..l, j1, j2; {q}"), || lemmas::delta_swap_drop(l, mode));
    report.claim("pi-involution", format!("i in 0..l, j; {q}"), || lemmas::pi_involution(l, mode));
    report.claim("walk-bit-swap", "i in 0..=l-2", || lemmas::walk_bit_swap(l));

    let start = Instant::now();
    let same_level = lemmas::same_level_sweep(&g, &grid, mode);
    let elapsed = start.elapsed().as_millis() as u64;
    for (id, outcome) in same_level.all() {
        report.push(id, format!("same-level pairs with delta > 0, every port; {q}"), outcome.clone(), elapsed);
    }
    report.claim("truncated-view-equality", "all distinct same-level pairs with delta > 0", || {
        lemmas::truncated_view_equality(&g, &grid)
    });

    report.claim("witness-walk", "port-2 walk of length l+1 from a and b", || {
        match distinguishing_walk(&g, &grid) {
            Ok(walk) => SweepOutcome {
                checked: (walk.from_a.len() + walk.from_b.len()) as u64 + 1,
                ..SweepOutcome::default()
            },
            Err(e) => single(false, || e.to_string()),
        }
    });

    let partition = stabilized_partition(&g);
    report.claim("witness-separation", "V_(l-1)(a) = V_(l-1)(b) and l <= d* <= l+1", || {
        separation_outcome(&partition, w, l as usize - 1, l as usize, l as usize + 1)
    });
    report.claim("stabilization-bound", "stabilization round <= n - 1", || stabilization_bound(&g, &partition));
    let quotient = quotient_from_partition(&g, &partition);
    report.claim("quotient-size", "1 < n_hat <= n", || {
        let k = quotient.class_count();
        single(k > 1 && k <= n, || format!("quotient has {k} classes"))
    });
    let mut base = measure(&g, &partition, Some(w));
    base.diameter = diameter;
    if let Some(d) = base.distinguishing_depth {
        report.notes.push(format!("witness pair first differs at depth {d} (l = {l})"));
    }
    if let Some(d) = diameter {
        report.notes.push(format!("measured diameter of G_{l} is {d}"));
    }
    report.measured.push(("base".to_string(), base));

    if let Some(d) = subdivide_length {
        verify_subdivision(&mut report, &g, &grid, d)?;
    }
    Ok(report)
}

fn validation_outcome(g: &PortLabeledGraph) -> SweepOutcome {
    let violations = g.validate();
    SweepOutcome {
        checked: g.node_count() as u64,
        violation_count: violations.len() as u64,
        violations: violations.iter().take(20).map(ToString::to_string).collect(),
    }
}

/// Equal colors at `equal_depth`, first split inside `min..=max`.
fn separation_outcome(partition: &RefinementPartition, w: WitnessPair, equal_depth: usize, min: usize, max: usize) -> SweepOutcome {
    let colors = partition.coloring(equal_depth).expect("stabilized partition covers every depth");
    let equal = colors[w.a.index()] == colors[w.b.index()];
    let split = partition.first_split(w.a, w.b);
    let mut out = single(equal, || format!("views differ at depth {equal_depth}"));
    out.checked += 1;
    let in_range = matches!(split, Some(d) if (min..=max).contains(&d));
    if !in_range {
        out.violation_count += 1;
        out.violations.push(format!("distinguishing depth {split:?} outside {min}..={max}"));
    }
    out
}

fn verify_subdivision(report: &mut VerificationReport, g: &PortLabeledGraph, grid: &GridIndex, d: usize) -> Result<(), HarnessError> {
    let l = grid.l as usize;
    let w = grid.witnesses();
    let (s, map) = subdivide(g, d)?;
    let (n, m) = (g.node_count(), g.edge_count());
    report.claim("subdivision-size", "|V'| = |V| + (D-1)|E|, |E'| = D|E|", || {
        single(s.node_count() == n + (d - 1) * m && s.edge_count() == d * m, || {
            format!("{} nodes, {} edges", s.node_count(), s.edge_count())
        })
    });
    if d == 1 {
        report.claim("subdivision-identity", "D = 1 reproduces the graph", || {
            single(&s == g, || "subdivided graph differs".to_string())
        });
    }
    report.claim("subdivision-valid", "all nodes and ports", || validation_outcome(&s));
    let mut diameter = None;
    report.claim("subdivision-diameter", "diam <= 3D", || match s.diameter() {
        Ok(x) => {
            diameter = Some(x);
            single(x <= 3 * d, || format!("diameter {x}"))
        }
        Err(e) => single(false, || e.to_string()),
    });
    report.claim("subdivision-label-isomorphism", "both orientations of every edge", || {
        let mut seen: HashMap<(Port, Port), LabelSequence> = HashMap::new();
        let mut out = SweepOutcome::default();
        for e in &map.edges {
            let o = e.original;
            for (from, pf, pt) in [(o.u, o.port_u, o.port_v), (o.v, o.port_v, o.port_u)] {
                out.checked += 1;
                let labels = match path_labels(&s, from, pf, d) {
                    Ok(x) => x,
                    Err(err) => {
                        out.violation_count += 1;
                        out.violations.push(err.to_string());
                        continue;
                    }
                };
                let first = seen.entry((pf, pt)).or_insert_with(|| labels.clone());
                if *first != labels {
                    out.violation_count += 1;
                    if out.violations.len() < 20 {
                        out.violations.push(format!("edge {}-{} with ports ({pf},{pt})", o.u, o.v));
                    }
                }
            }
        }
        out
    });
    let partition = stabilized_partition(&s);
    report.claim("subdivided-view-equality", "V_(D i)(a) = V_(D i)(b) for i in 0..=l-1", || {
        let mut out = SweepOutcome::default();
        for i in 0..l {
            let colors = partition.coloring(d * i).expect("stabilized");
            out.checked += 1;
            if colors[w.a.index()] != colors[w.b.index()] {
                out.violation_count += 1;
                out.violations.push(format!("views differ at depth {}", d * i));
            }
        }
        out
    });
    report.claim("subdivided-separation", "D(l-1) < d* <= D(l+1)", || {
        let split = partition.first_split(w.a, w.b);
        single(matches!(split, Some(x) if x > d * (l - 1) && x <= d * (l + 1)), || {
            format!("distinguishing depth {split:?}")
        })
    });
    report.claim("subdivided-stabilization-bound", "stabilization round <= n - 1", || stabilization_bound(&s, &partition));
    let mut measured = measure(&s, &partition, Some(w));
    measured.diameter = diameter;
    measured.guaranteed_equal_depth = Some(d * (l - 1));
    report.measured.push(("subdivided".to_string(), measured));
    report.notes.push(
        "subdivision of a graph with symmetric edges is restricted to odd lengths; the diameter claim is checked only for those"
            .to_string(),
    );
    Ok(())
}

/// Validates a graph file. Invariant violations yield a failing report;
/// unreadable or malformed files are errors.
pub fn verify_graph_file(path: &Path) -> Result<VerificationReport, HarnessError> {
    let bytes = std::fs::read(path).map_err(io_error(path))?;
    let mut report = VerificationReport::new(
        "verify",
        Parameters { graph: Some(path.display().to_string()), ..Parameters::default() },
    );
    match load_json(&bytes) {
        Ok(g) => {
            report.claim("graph-valid", "all nodes and ports", || validation_outcome(&g));
            let partition = stabilized_partition(&g);
            report.claim("stabilization-bound", "stabilization round <= n - 1", || stabilization_bound(&g, &partition));
            report.measured.push(("graph".to_string(), measure(&g, &partition, None)));
        }
        Err(GraphError::Invalid(violations)) => {
            report.push(
                "graph-valid",
                "all nodes and ports",
                SweepOutcome {
                    checked: violations.len() as u64,
                    violation_count: violations.len() as u64,
                    violations: violations.iter().take(20).map(ToString::to_string).collect(),
                },
                0,
            );
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

// ---------------------------------------------------------------- theorem

pub fn cmd_theorem(d_prime: u64, n_prime: u64) -> Result<VerificationReport, HarnessError> {
    let p = TheoremParameters::derive(d_prime, n_prime)?;
    let mut report = VerificationReport::new(
        "theorem",
        Parameters {
            l: Some(p.l),
            subdivide: Some(p.d),
            d_prime: Some(d_prime),
            n_prime: Some(n_prime),
            ..Parameters::default()
        },
    );
    report.node_id_convention = Some(convention(p.l));
    let (base, grid) = build_g(p.l)?;
    let (g, _) = subdivide(&base, p.d)?;
    let w = grid.witnesses();
    let n = g.node_count();
    report.claim("theorem-size", "node count <= n'", || {
        single(n as u64 <= n_prime, || format!("{n} nodes"))
    });
    let mut diameter = None;
    report.claim("theorem-diameter", "diam <= D'", || match g.diameter() {
        Ok(x) => {
            diameter = Some(x);
            single(x as u64 <= d_prime, || format!("diameter {x}"))
        }
        Err(e) => single(false, || e.to_string()),
    });
    report.claim("theorem-depth-bound", "D(l-1) >= (D'-5)/6 log2(n'/D') - 0.41 D'", || {
        single(p.guaranteed_equal_depth as f64 >= p.bound, || {
            format!("{} < {}", p.guaranteed_equal_depth, p.bound)
        })
    });
    let partition = stabilized_partition(&g);
    let equal_depth = p.guaranteed_equal_depth;
    report.claim("theorem-views-equal", "V_(D(l-1))(a) = V_(D(l-1))(b)", || {
        let colors = partition.coloring(equal_depth).expect("stabilized");
        single(colors[w.a.index()] == colors[w.b.index()], || {
            format!("views differ at depth {equal_depth}")
        })
    });
    report.claim("theorem-separation", "d* exists and d* > D(l-1)", || {
        let split = partition.first_split(w.a, w.b);
        single(matches!(split, Some(x) if x > equal_depth), || format!("distinguishing depth {split:?}"))
    });
    let mut measured = measure(&g, &partition, Some(w));
    measured.diameter = diameter;
    measured.guaranteed_equal_depth = Some(equal_depth);
    measured.depth_bound = Some(p.bound);
    report.measured.push(("instance".to_string(), measured));
    Ok(report)
}

// ---------------------------------------------------------------- depth

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    pub u: u32,
    pub v: u32,
    pub distinguishing_depth: Option<usize>,
    pub stabilization_round: Option<usize>,
    pub node_count: usize,
    pub diameter: Option<usize>,
    /// `D log2(n / D)` with unit constant, for context only.
    pub reference_depth: Option<f64>,
}

impl fmt::Display for DepthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.distinguishing_depth {
            Some(d) => write!(f, "d* = {d}")?,
            None => write!(f, "equivalent")?,
        }
        if let Some(s) = self.stabilization_round {
            write!(f, " (stabilization round {s})")?;
        }
        if let Some(r) = self.reference_depth {
            write!(f, "; reference D*log2(n/D) = {r:.2}")?;
        }
        Ok(())
    }
}

pub fn cmd_depth(graph: &PortLabeledGraph, u: u32, v: u32) -> Result<DepthReport, HarnessError> {
    let n = graph.node_count();
    for x in [u, v] {
        if x as usize >= n {
            return Err(HarnessError::Parameter(format!("node {x} out of range for {n} nodes")));
        }
    }
    let partition = stabilized_partition(graph);
    let diameter = graph.diameter().ok();
    let reference_depth = diameter
        .filter(|&d| d > 0)
        .map(|d| d as f64 * (n as f64 / d as f64).log2());
    Ok(DepthReport {
        u,
        v,
        distinguishing_depth: partition.first_split(NodeId(u), NodeId(v)),
        stabilization_round: partition.stabilization_round,
        node_count: n,
        diameter,
        reference_depth,
    })
}

// ---------------------------------------------------------------- quotient

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub node_count: usize,
    pub class_count: usize,
    pub stabilization_round: Option<usize>,
    pub quotient: QuotientGraph,
}

pub fn cmd_quotient(graph: &PortLabeledGraph) -> QuotientReport {
    let partition = stabilized_partition(graph);
    let quotient = quotient_from_partition(graph, &partition);
    QuotientReport {
        node_count: graph.node_count(),
        class_count: quotient.class_count(),
        stabilization_round: partition.stabilization_round,
        quotient,
    }
}

// ---------------------------------------------------------------- join demo

/// Joins two copies of `G_l` at `a` (first copy) and `b` (second copy).
pub fn cmd_join_demo(l: u32) -> Result<VerificationReport, HarnessError> {
    if l < CLAIM_MIN_LEVEL {
        return Err(HarnessError::Parameter(format!(
            "join demo needs l >= {CLAIM_MIN_LEVEL}, got {l}"
        )));
    }
    let (g, grid) = build_g(l)?;
    let w = grid.witnesses();
    let joined = g.join_with_bridge(w.a, &g, w.b)?;
    let endpoints = WitnessPair { a: w.a, b: NodeId(w.b.0 + g.node_count() as u32) };
    let mut report = VerificationReport::new(
        "join-demo",
        Parameters { l: Some(l), ..Parameters::default() },
    );
    report.node_id_convention = Some(format!("{}; second copy shifted by {}", convention(l), g.node_count()));
    report.claim("join-valid", "all nodes and ports", || validation_outcome(&joined));
    report.claim("join-node-count", "2 (l+2) 2^l", || {
        single(joined.node_count() == 2 * g.node_count(), || format!("{} nodes", joined.node_count()))
    });
    let partition = stabilized_partition(&joined);
    let l = l as usize;
    report.claim("join-bridge-equal-depth", "bridge endpoints equal to depth l-1", || {
        let colors = partition.coloring(l - 1).expect("stabilized");
        single(colors[endpoints.a.index()] == colors[endpoints.b.index()], || {
            format!("endpoints differ at depth {}", l - 1)
        })
    });
    report.claim("join-separated", "bridge endpoints differ at depth l+2", || {
        let colors = partition.coloring(l + 2).expect("stabilized");
        single(colors[endpoints.a.index()] != colors[endpoints.b.index()], || {
            format!("endpoints still equal at depth {}", l + 2)
        })
    });
    report.claim("join-stabilization-bound", "stabilization round <= n - 1", || stabilization_bound(&joined, &partition));
    report.measured.push(("joined".to_string(), measure(&joined, &partition, Some(endpoints))));
    Ok(report)
}
