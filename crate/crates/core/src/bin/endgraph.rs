//! Command-line front end: balls, distances, end invariants, realizations
//! of closed subsets of binary sequence space, standard-form equivalence,
//! genericity experiments, and the surface/pants correspondence.
//!
//! Exit codes: 0 on success, 1 on domain errors (single-line `category:
//! message` diagnostic on stderr), 2 on usage errors. All output is
//! deterministic for fixed inputs and flags.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use endgraph::ball::{Ball, Radius};
use endgraph::ends::{component_tree, rank_lower_bound, ComponentTree};
use endgraph::error::{Error, Result};
use endgraph::genericity::{run_experiment, ExperimentParams};
use endgraph::metric::distance;
use endgraph::oracle::GraphInput;
use endgraph::phe::{phe_compare, phe_distinguish, PheVerdict, StandardGraphDescriptor};
use endgraph::reductions::regular_realization;
use endgraph::specfile::{parse_spec, resolve_closed_set_spec, resolve_graph_spec, SpecFile};
use endgraph::surfaces::{surfaces_homeomorphic, PantsComplex};

#[derive(Parser)]
#[command(
    name = "endgraph",
    about = "Computational topology of locally finite rooted graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the ball of a given radius around the root.
    Ball(BallArgs),
    /// Ball-metric distance between two rooted graphs.
    Dist(DistArgs),
    /// Component tree of a window: branches, cycles, persistence.
    Ends(EndsArgs),
    /// Certified lower bound for the first Betti number.
    Rank(RankArgs),
    /// Realize a closed subset of binary sequence space as a regular graph.
    Reduce(ReduceArgs),
    /// Compare standard forms up to proper homotopy equivalence.
    Phe(PheArgs),
    /// Random-regular-graph experiment over the configuration model.
    Generic(GenericArgs),
    /// Pants-complex inputs: underlying graph, genus, homeomorphy.
    Surface(SurfaceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrDot {
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum JsonOrDot {
    Json,
    Dot,
}

#[derive(Args)]
struct BallArgs {
    /// Graph: builtin name, construction like cubic(full), or file path.
    #[arg(long)]
    spec: String,
    /// Half-integer radius: `3`, `7/2`, or a decimal.
    #[arg(long)]
    radius: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrDot,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Number of half-step radii to compare before giving up.
    #[arg(long)]
    budget: u32,
}

#[derive(Args)]
struct EndsArgs {
    #[arg(long)]
    spec: String,
    /// Report branches down to this depth.
    #[arg(long)]
    depth: u32,
    /// Judge persistence within the window of this radius.
    #[arg(long)]
    horizon: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: JsonOrDot,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    spec: String,
    /// Window radius; the bound is monotone in it.
    #[arg(long)]
    radius: u32,
}

#[derive(Args)]
struct ReduceArgs {
    /// Closed set: inline expression or file path.
    #[arg(long = "closed-set")]
    closed_set: String,
    /// Regularity degree, at least 3.
    #[arg(long)]
    k: u32,
    /// Also print the ball of this half-integer radius.
    #[arg(long = "emit-ball")]
    emit_ball: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrDot,
}

#[derive(Args)]
struct PheArgs {
    /// Descriptor (contains `=`) or graph spec.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Effort for distinguishing a descriptor-less graph.
    #[arg(long, default_value_t = 6)]
    budget: u32,
}

#[derive(Args)]
struct GenericArgs {
    /// Degree of the sampled regular graphs.
    #[arg(long)]
    k: u32,
    /// Number of vertices per sample.
    #[arg(long = "N")]
    n_vertices: u32,
    /// Depth parameter of the deep-cycle and sphere-connectivity checks.
    #[arg(long = "n")]
    depth: u32,
    /// Ball radius for the rank column.
    #[arg(long = "R")]
    ball_radius: u32,
    #[arg(long)]
    trials: u32,
    /// Root seed; everything downstream is derived from it.
    #[arg(long)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Pants-complex file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Print the underlying graph of the complex.
    #[arg(long = "to-graph", conflicts_with = "genus")]
    to_graph: bool,
    /// Print the genus of the closed surface.
    #[arg(long)]
    genus: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrDot,
    /// Decide whether two complexes yield homeomorphic surfaces.
    #[arg(long, num_args = 2, value_names = ["FILE1", "FILE2"],
          conflicts_with_all = ["file", "to_graph", "genus"])]
    homeo: Option<Vec<PathBuf>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            use std::io::Write;
            if let Err(e) = std::io::stdout().write_all(out.as_bytes()) {
                // A closed pipe (e.g. `| head`) is not our error.
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("io: {e}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", e.category());
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Ball(a) => cmd_ball(a),
        Command::Dist(a) => cmd_dist(a),
        Command::Ends(a) => cmd_ends(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Phe(a) => cmd_phe(a),
        Command::Generic(a) => cmd_generic(a),
        Command::Surface(a) => cmd_surface(a),
    }
}

/// Deterministic plain-text rendering of a ball.
fn ball_text(ball: &Ball, label: &str) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "ball radius={} of {label}", ball.radius).expect("write");
    writeln!(
        out,
        "vertices={} edges={} stubs={} rank={}",
        ball.vertex_count(),
        ball.full_edge_count(),
        ball.stub_count(),
        ball.rank()
    )
    .expect("write");
    for v in 0..ball.vertex_count() {
        writeln!(
            out,
            "v {} depth={} stubs={} loops={}",
            ball.ids[v], ball.depth[v], ball.stubs[v], ball.loops[v]
        )
        .expect("write");
    }
    for &(u, v) in &ball.edges {
        writeln!(out, "e {} {}", ball.ids[u as usize], ball.ids[v as usize]).expect("write");
    }
    out
}

fn render_ball(ball: &Ball, label: &str, format: TextOrDot) -> String {
    match format {
        TextOrDot::Text => ball_text(ball, label),
        TextOrDot::Dot => ball.to_dot(label),
    }
}

fn cmd_ball(a: BallArgs) -> Result<String> {
    let g = resolve_graph_spec(&a.spec)?;
    let radius = Radius::from_str(&a.radius)?;
    let ball = g.ball(radius)?;
    Ok(render_ball(&ball, &g.label(), a.format))
}

fn cmd_dist(a: DistArgs) -> Result<String> {
    let ga = resolve_graph_spec(&a.a)?;
    let gb = resolve_graph_spec(&a.b)?;
    Ok(format!("{}\n", distance(&ga, &gb, a.budget)?))
}

/// JSON rendering of the component tree pruned to `depth`, with branch
/// counts and persistence judged at the full horizon. Level-major node
/// order makes the pruned nodes a prefix of the full list.
fn ends_json(tree: &ComponentTree, label: &str, depth: u32) -> String {
    let flags = tree.persistent_flags();
    let keep = tree.nodes.iter().filter(|n| n.level <= depth).count();
    let nodes: Vec<serde_json::Value> = tree.nodes[..keep]
        .iter()
        .zip(&flags)
        .map(|(n, &persistent)| {
            let children: Vec<usize> =
                n.children.iter().copied().filter(|&c| c < keep).collect();
            serde_json::json!({
                "level": n.level,
                "vertex_count": n.vertex_count,
                "stub_count": n.stub_count,
                "b1": n.b1,
                "new_cycles": n.new_cycles,
                "children": children,
                "representative": n.representative.as_str(),
                "persistent": persistent,
            })
        })
        .collect();
    let branch_counts: Vec<usize> = (0..=depth).map(|l| tree.branch_count(l)).collect();
    let doc = serde_json::json!({
        "label": label,
        "depth": depth,
        "horizon": tree.window_radius,
        "branch_counts": branch_counts,
        "profiles": tree.branch_profiles(),
        "nodes": nodes,
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

fn ends_dot(tree: &ComponentTree, label: &str, depth: u32) -> String {
    use std::fmt::Write;
    let flags = tree.persistent_flags();
    let mut out = String::new();
    writeln!(out, "digraph \"{label}\" {{").expect("write");
    writeln!(out, "  node [shape=box];").expect("write");
    for (i, n) in tree.nodes.iter().enumerate() {
        if n.level > depth {
            continue;
        }
        let style = if flags[i] { "solid" } else { "dashed" };
        writeln!(
            out,
            "  n{i} [label=\"level {} b1={} stubs={}\" style={style}];",
            n.level, n.b1, n.stub_count
        )
        .expect("write");
        for &c in &n.children {
            if tree.nodes[c].level <= depth {
                writeln!(out, "  n{i} -> n{c};").expect("write");
            }
        }
    }
    writeln!(out, "}}").expect("write");
    out
}

fn cmd_ends(a: EndsArgs) -> Result<String> {
    if a.depth > a.horizon {
        return Err(Error::InvalidParameter(format!(
            "depth {} exceeds horizon {}",
            a.depth, a.horizon
        )));
    }
    let g = resolve_graph_spec(&a.spec)?;
    let tree = component_tree(&g, a.horizon)?;
    Ok(match a.format {
        JsonOrDot::Json => format!("{}\n", ends_json(&tree, &g.label(), a.depth)),
        JsonOrDot::Dot => ends_dot(&tree, &g.label(), a.depth),
    })
}

fn cmd_rank(a: RankArgs) -> Result<String> {
    let g = resolve_graph_spec(&a.spec)?;
    Ok(format!("{}\n", rank_lower_bound(&g, a.radius)?))
}

fn cmd_reduce(a: ReduceArgs) -> Result<String> {
    let set = resolve_closed_set_spec(&a.closed_set)?;
    let g = regular_realization(set, a.k)?;
    Ok(match a.emit_ball {
        Some(r) => {
            let ball = g.ball(Radius::from_str(&r)?)?;
            render_ball(&ball, &g.label(), a.format)
        }
        None => format!("{}\n", g.label()),
    })
}

/// A phe operand: a descriptor literal if it contains `=`, else a graph.
enum PheSide {
    Descriptor(StandardGraphDescriptor),
    Graph(GraphInput),
}

fn phe_side(s: &str) -> Result<PheSide> {
    if s.contains('=') {
        Ok(PheSide::Descriptor(StandardGraphDescriptor::from_str(s)?))
    } else {
        Ok(PheSide::Graph(resolve_graph_spec(s)?))
    }
}

fn cmd_phe(a: PheArgs) -> Result<String> {
    let left = phe_side(&a.a)?;
    let right = phe_side(&a.b)?;
    let verdict = match (left, right) {
        (PheSide::Descriptor(da), PheSide::Descriptor(db)) => phe_compare(&da, &db),
        (PheSide::Descriptor(d), PheSide::Graph(g))
        | (PheSide::Graph(g), PheSide::Descriptor(d)) => phe_distinguish(&g, &d, a.budget)?,
        (PheSide::Graph(ga), PheSide::Graph(gb)) => {
            match (ga.descriptor(), gb.descriptor()) {
                (Some(da), Some(db)) => phe_compare(&da, &db),
                _ => {
                    return Err(Error::InvalidParameter(
                        "comparing two graphs needs standard-form descriptors on both sides; \
                         pass a descriptor or a descriptor-backed builtin"
                            .into(),
                    ))
                }
            }
        }
    };
    Ok(match verdict {
        PheVerdict::Equivalent => "equivalent\n".to_string(),
        PheVerdict::Distinguished { reason } => format!("distinguished: {reason}\n"),
        PheVerdict::Unknown => "unknown\n".to_string(),
    })
}

fn cmd_generic(a: GenericArgs) -> Result<String> {
    let params = ExperimentParams {
        degree: a.k,
        vertices: a.n_vertices,
        trials: a.trials,
        seed: a.seed,
        depth: a.depth,
        ball_radius: a.ball_radius,
    };
    let report = run_experiment(&params)?;
    let csv = report.to_csv();
    match a.csv {
        Some(path) => {
            std::fs::write(path, csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

fn load_pants(path: &PathBuf) -> Result<PantsComplex> {
    let text = std::fs::read_to_string(path)?;
    match parse_spec(&text)? {
        SpecFile::Pants(p) => Ok(p),
        _ => Err(Error::InvalidParameter(format!(
            "{} does not hold a pants complex",
            path.display()
        ))),
    }
}

fn cmd_surface(a: SurfaceArgs) -> Result<String> {
    if let Some(paths) = &a.homeo {
        let p1 = load_pants(&paths[0])?;
        let p2 = load_pants(&paths[1])?;
        return Ok(if surfaces_homeomorphic(&p1, &p2) {
            "homeomorphic\n".to_string()
        } else {
            "not homeomorphic\n".to_string()
        });
    }
    let Some(file) = &a.file else {
        return Err(Error::InvalidParameter(
            "surface needs --file (with --to-graph or --genus) or --homeo".into(),
        ));
    };
    let p = load_pants(file)?;
    if a.genus {
        Ok(format!("{}\n", p.genus()))
    } else if a.to_graph {
        let g = p.to_graph();
        Ok(match a.format {
            TextOrDot::Text => g.to_text(),
            TextOrDot::Dot => g.to_dot(),
        })
    } else {
        Err(Error::InvalidParameter(
            "surface needs an action: --to-graph, --genus, or --homeo".into(),
        ))
    }
}
