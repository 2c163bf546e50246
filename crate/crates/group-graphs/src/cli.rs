//! Command-line interface: group construction reports, graph computations,
//! verification suites, and the diameter-6 reproduction.
//!
//! Every command prints a human summary (lines prefixed `#`) followed by one
//! JSON document, both on standard output. Exit codes: 0 all requested
//! checks pass, 1 verification failure, 2 usage or parse error, 3 resource
//! budget exceeded.

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use crate::diameter_six;
use crate::frobenius;
use crate::graph::{
    self, build_collapsed_graph, component_diameter, connected_components, Diameter,
    GraphBuildOptions, GraphError, GraphKind,
};
use crate::group::FiniteGroup;
use crate::spec::{parse_group_spec, GroupSpec};
use crate::verify::{self, Bounds, Suite};

const EXIT_PASS: i32 = 0;
const EXIT_VERIFY_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

/// Environment variable supplying the default worker thread count.
pub const THREADS_ENV: &str = "GROUP_GRAPHS_THREADS";

#[derive(Parser)]
#[command(
    name = "group-graphs",
    version,
    about = "Graphs defined on finite soluble groups: construction, exact connectivity and diameters, and executable theorem suites"
)]
struct Cli {
    /// Worker threads (default: GROUP_GRAPHS_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a spec file and print structural invariants.
    BuildInfo {
        /// Path to a group spec document.
        spec: PathBuf,
    },
    /// Build a graph on a group; report its diameter or components, or
    /// export the edge list.
    Graph {
        spec: PathBuf,
        /// commuting | normalising | permuting | engel | soluble
        #[arg(long)]
        kind: GraphKind,
        /// Report connectivity and exact diameter.
        #[arg(long)]
        diameter: bool,
        /// Report connected components (with per-component diameters).
        #[arg(long)]
        components: bool,
        /// Write the edge list to a file.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        /// Abort (exit 3) if the graph would exceed this many edges.
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Run verification suites over a corpus of groups.
    Verify {
        /// Corpus file; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long = "suite", value_delimiter = ',')]
        suite: Vec<Suite>,
    },
    /// Reproduce the diameter-6 example group and its stated checks.
    PaperExample {
        /// local | diameters | all
        #[arg(long, default_value = "all")]
        phase: diameter_six::Phase,
        /// Resume file for the graph-row phase.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Abort (exit 3) if a graph would exceed this many edges.
        #[arg(long)]
        max_edges: Option<usize>,
    },
}

impl clap::builder::ValueParserFactory for GraphKind {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<GraphKind>())
    }
}

impl clap::builder::ValueParserFactory for diameter_six::Phase {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<diameter_six::Phase>())
    }
}

impl clap::builder::ValueParserFactory for Suite {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Suite>())
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        // ignore failure: the global pool may already exist in-process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match cli.command {
        Command::BuildInfo { spec } => cmd_build_info(&spec),
        Command::Graph {
            spec,
            kind,
            diameter,
            components,
            export,
            max_edges,
        } => cmd_graph(&spec, kind, diameter, components, export.as_deref(), max_edges),
        Command::Verify { corpus, suite } => cmd_verify(corpus.as_deref(), &suite),
        Command::PaperExample {
            phase,
            checkpoint,
            max_edges,
        } => cmd_paper_example(phase, checkpoint, max_edges),
    }
}

fn load_group(path: &std::path::Path) -> Result<(GroupSpec, FiniteGroup), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec = parse_group_spec(&text).map_err(|e| e.to_string())?;
    let group = spec.build().map_err(|e| e.to_string())?;
    Ok((spec, group))
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn cmd_build_info(path: &std::path::Path) -> i32 {
    let (spec, group) = match load_group(path) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let order = group.order() as u64;
    let factorisation = crate::arith::factorise(order);
    let soluble = group.is_soluble();
    let nilpotent = group.is_nilpotent();
    let fitting = group.fitting_subgroup();
    // minimal normal subgroups and Frobenius analysis are corpus-scale
    // computations; above the bound they are reported as absent
    let bound = Bounds::default().collapsed_max;
    let (minimal_orders, frob) = if group.order() > 1 && group.order() <= bound {
        let minimals = group.minimal_normal_subgroups().expect("non-trivial");
        let fs = frobenius::detect_frobenius(&group).expect("non-trivial");
        let criterion = fs
            .is_frobenius
            .then(|| frobenius::disconnection_criterion(&fs).expect("frobenius"));
        let frob = json!({
            "is_frobenius": fs.is_frobenius,
            "kernel_order": fs.kernel.as_ref().map(|k| k.order()),
            "kernel_primes": fs.kernel_primes,
            "complement_primes": fs.complement_primes,
            "disconnection_criterion": criterion,
        });
        (
            Some(minimals.iter().map(|n| n.order()).collect::<Vec<_>>()),
            frob,
        )
    } else {
        (None, serde_json::Value::Null)
    };
    println!("# {}: order {order}, {}", path.display(), spec.describe());
    println!(
        "# soluble: {soluble}, nilpotent: {nilpotent}, fitting order: {}",
        fitting.order()
    );
    let doc = json!({
        "spec": path.display().to_string(),
        "kind": spec.describe(),
        "order": order,
        "prime_factorisation": factorisation,
        "soluble": soluble,
        "nilpotent": nilpotent,
        "fitting_order": fitting.order(),
        "minimal_normal_orders": minimal_orders,
        "frobenius": frob,
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    EXIT_PASS
}

fn cmd_graph(
    path: &std::path::Path,
    kind: GraphKind,
    want_diameter: bool,
    want_components: bool,
    export: Option<&std::path::Path>,
    max_edges: Option<usize>,
) -> i32 {
    let (_, group) = match load_group(path) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let table = match CyclicSubgroupTable::build(&group) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let orbits = OrbitDecomposition::compute(&group, &table);
    let mut opts = GraphBuildOptions::default();
    if let Some(m) = max_edges {
        opts.max_edges = m;
    }
    let graph = match build_collapsed_graph(kind, &group, &table, &orbits, &opts) {
        Ok(g) => g,
        Err(e @ GraphError::Budget { .. }) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut doc = json!({
        "spec": path.display().to_string(),
        "kind": kind.name(),
        "vertex_count": graph.vertex_count(),
        "edge_count": graph.edge_count(),
    });
    println!(
        "# {} graph: {} vertices, {} edges",
        kind.name(),
        graph.vertex_count(),
        graph.edge_count()
    );
    if want_diameter {
        match graph::diameter(&graph, &orbits) {
            Diameter::Finite(d) => {
                println!("# connected, diameter {d}");
                doc["diameter"] = json!(d);
                doc["connected"] = json!(true);
            }
            Diameter::Disconnected { components } => {
                println!("# disconnected: {components} components");
                doc["connected"] = json!(false);
                doc["components"] = json!(components);
            }
        }
    }
    if want_components {
        let comps = connected_components(&graph);
        let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        let diameters: Vec<u32> = comps
            .iter()
            .map(|c| component_diameter(&graph, c))
            .collect();
        println!("# components: {}", comps.len());
        doc["components"] = json!(comps.len());
        doc["component_sizes"] = json!(sizes);
        doc["component_diameters"] = json!(diameters);
    }
    if let Some(out) = export {
        let file = match std::fs::File::create(out) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", out.display());
                return EXIT_USAGE;
            }
        };
        if let Err(e) = graph.export_edge_list(std::io::BufWriter::new(file)) {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        println!("# edge list written to {}", out.display());
        doc["export"] = json!(out.display().to_string());
    }
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    EXIT_PASS
}

fn cmd_verify(corpus_path: Option<&std::path::Path>, suites: &[Suite]) -> i32 {
    let entries = match corpus_path {
        None => verify::default_corpus(),
        Some(p) => {
            let text = match std::fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", p.display());
                    return EXIT_USAGE;
                }
            };
            match verify::parse_corpus(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
    };
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.to_vec()
    };
    let bounds = Bounds::default();
    let run = verify::run_corpus(&entries, &suites, &bounds);
    // summary per suite
    for suite in suites.iter().map(|s| s.name()).chain(["corpus-tags"]) {
        let of_suite: Vec<_> = run.reports.iter().filter(|r| r.suite == suite).collect();
        let pass = of_suite.iter().filter(|r| r.all_pass()).count();
        println!("# {suite}: {pass}/{} groups pass", of_suite.len());
    }
    for report in &run.reports {
        for claim in &report.claims {
            if claim.status == verify::ClaimStatus::Fail {
                println!(
                    "# FAIL {} / {} / {}: {}",
                    report.group,
                    report.suite,
                    claim.id,
                    claim.witness.as_deref().unwrap_or("no witness")
                );
            }
        }
    }
    let doc = json!({
        "generated_unix": now_unix(),
        "all_pass": run.all_pass,
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "groups": entries.len(),
        "reports": run.reports,
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    if run.all_pass {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAIL
    }
}

fn cmd_paper_example(
    phase: diameter_six::Phase,
    checkpoint: Option<PathBuf>,
    max_edges: Option<usize>,
) -> i32 {
    let mut opts = GraphBuildOptions {
        checkpoint,
        progress: true,
        ..Default::default()
    };
    if let Some(m) = max_edges {
        opts.max_edges = m;
    }
    match diameter_six::run(phase, &opts) {
        Ok(report) => {
            if let Some(local) = &report.local {
                println!(
                    "# local claims pass: |G| = {}, |H| = {}, o(x) = {}, both fixed spaces trivial, 0 forbidden permuting edges ({:.1}s)",
                    local.group_order, local.h_order, local.order_x, local.seconds
                );
            }
            if let Some(d) = &report.diameters {
                println!(
                    "# {} cyclic subgroups in {} orbits; normalising diameter {}, permuting diameter {}",
                    d.vertex_count, d.orbit_count, d.gamma_diameter, d.psi_diameter
                );
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            EXIT_PASS
        }
        Err(diameter_six::WitnessError::Graph(e @ GraphError::Budget { .. })) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VERIFY_FAIL
        }
    }
}
