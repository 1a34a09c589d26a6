use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use portview::construction::build_g;
use portview::construction::lemmas::DEFAULT_SEED;
use portview::construction::subdivide;
use portview::harness::{
    self, cmd_depth, cmd_gen, cmd_join_demo, cmd_quotient, cmd_theorem, load_graph_file, verify_family,
    verify_graph_file, HarnessError, VerificationReport,
};
use portview::io::export_dot;
use portview::PortLabeledGraph;

#[derive(Parser)]
#[command(name = "portview", version, about = "Views in anonymous port-labeled networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write G_l (or its subdivision) as JSON, with a metadata sidecar.
    Gen {
        #[arg(long)]
        l: u32,
        #[arg(long = "subdivide", value_name = "D")]
        subdivide: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Also write `<out>.dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Check every structural property of G_l (and its subdivision), or validate a graph file.
    Verify {
        #[arg(long, required_unless_present = "graph")]
        l: Option<u32>,
        #[arg(long = "subdivide", value_name = "D")]
        subdivide: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, conflicts_with_all = ["l", "subdivide"])]
        graph: Option<PathBuf>,
        /// Where to write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check the instance for diameter budget D' and size budget n'.
    Theorem {
        #[arg(long)]
        dprime: u64,
        #[arg(long)]
        nprime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal depth at which the views of two nodes differ.
    Depth {
        #[arg(long)]
        graph: PathBuf,
        u: u32,
        v: u32,
    },
    /// Size and port table of the quotient graph.
    Quotient {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join two copies of G_l at the witness pair and check the bridge endpoints.
    JoinDemo {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a graph file to Graphviz DOT.
    ExportDot {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphSource {
    #[arg(long, required_unless_present = "l", conflicts_with = "l")]
    graph: Option<PathBuf>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long = "subdivide", value_name = "D", requires = "l")]
    subdivide: Option<usize>,
}

impl GraphSource {
    fn load(&self) -> Result<PortLabeledGraph, HarnessError> {
        if let Some(path) = &self.graph {
            return load_graph_file(path);
        }
        let l = self.l.expect("clap enforces --graph or --l");
        let (g, _) = build_g(l)?;
        Ok(match self.subdivide {
            Some(d) => subdivide(&g, d)?.0,
            None => g,
        })
    }
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    std::fs::write(path, bytes).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}

fn finish_report(report: VerificationReport, out: Option<&Path>) -> Result<i32, HarnessError> {
    print!("{}", report.summary());
    if let Some(path) = out {
        write_out(path, &report.to_json())?;
    }
    Ok(if report.passed() { harness::EXIT_PASS } else { harness::EXIT_FAIL })
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Gen { l, subdivide, out, dot } => {
            let gen = cmd_gen(l, subdivide, &out, dot)?;
            println!(
                "wrote {} ({} nodes, {} edges) and {}",
                gen.graph_path.display(),
                gen.metadata.node_count,
                gen.metadata.edge_count,
                gen.meta_path.display()
            );
            if let Some(p) = gen.dot_path {
                println!("wrote {}", p.display());
            }
            Ok(harness::EXIT_PASS)
        }
        Command::Verify { l, subdivide, seed, graph, out } => {
            let report = match graph {
                Some(path) => verify_graph_file(&path)?,
                None => verify_family(l.expect("clap enforces --l"), subdivide, seed)?,
            };
            finish_report(report, out.as_deref())
        }
        Command::Theorem { dprime, nprime, out } => finish_report(cmd_theorem(dprime, nprime)?, out.as_deref()),
        Command::Depth { graph, u, v } => {
            let g = load_graph_file(&graph)?;
            println!("{}", cmd_depth(&g, u, v)?);
            Ok(harness::EXIT_PASS)
        }
        Command::Quotient { source, out } => {
            let report = cmd_quotient(&source.load()?);
            println!(
                "n = {}, quotient size = {}, stabilization round = {:?}",
                report.node_count, report.class_count, report.stabilization_round
            );
            if let Some(path) = out {
                write_out(&path, &serde_json::to_vec(&report).expect("serializes"))?;
            }
            Ok(harness::EXIT_PASS)
        }
        Command::JoinDemo { l, out } => finish_report(cmd_join_demo(l)?, out.as_deref()),
        Command::ExportDot { source, out } => {
            let dot = export_dot(&source.load()?);
            match out {
                Some(path) => write_out(&path, dot.as_bytes())?,
                None => print!("{dot}"),
            }
            Ok(harness::EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { harness::EXIT_INVALID as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::EXIT_INVALID as u8)
        }
    }
}
