//! `ymgraph`: JSON reports for clique complexes, Laplacians, curvature and
//! the Yang-Mills equations on graphs.
//!
//! Exit codes: 0 success, 1 optimizer did not converge, 2 invalid input,
//! 3 internal contract violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ymgraph_core::calculus::{betti_numbers, forman_ricci};
use ymgraph_core::check::identity_suite;
use ymgraph_core::gauge::{d_a_vector, Connection, Group, GroupKind};
use ymgraph_core::graph::{CliqueComplex, Orientation, SpanningForest};
use ymgraph_core::io;
use ymgraph_core::yangmills::{
    known_families, optimize_from, spanning_tree_gauge_fix, u1_grid_oracle, ym_optimize, ym_residual,
    ym_value, ymh_residuals, ymh_value, Direction, OptimizeOptions, Potential, TriangleIndex, YmReport,
    GRID_MEMBERSHIP_STEPS,
};
use ymgraph_core::{Error, Graph};

#[derive(Parser)]
#[command(name = "ymgraph", version, about = "Discrete gauge theory on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clique census of the graph.
    Cliques {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hodge Laplacian matrix and eigenvalues in one degree.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        /// Form degree; k-forms live on (k+1)-cliques.
        #[arg(long, short = 'k', default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Betti numbers as kernel dimensions of the Hodge Laplacians.
    Betti {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Forman-Ricci curvature of every simplex in one degree or all degrees.
    Curvature {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, short = 'k')]
        k: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runs the identity battery on a connection.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        conn: ConnectionArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Yang-Mills functional, residuals, optimization and grid scan.
    Ym {
        mode: YmMode,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        conn: ConnectionArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Spanning-tree gauge fixing of a connection.
    GaugeFix {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        connection: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Yang-Mills-Higgs functional and residuals.
    Ymh {
        mode: YmhMode,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        connection: PathBuf,
        /// Higgs field file with one length-n complex vector per vertex
        #[arg(long)]
        higgs: PathBuf,
        /// Only the zero potential is supported
        #[arg(long, default_value = "zero")]
        potential: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list, one "u v" pair per line.
    #[arg(long)]
    graph: PathBuf,
    /// Edge direction: as written in the file, or low to high id.
    #[arg(long, value_enum, default_value_t = OrderArg::File)]
    order: OrderArg,
    /// Largest clique size to enumerate.
    #[arg(long)]
    max_k: Option<usize>,
}

#[derive(Args)]
struct ConnectionArgs {
    /// Connection file; mutually exclusive with --random.
    #[arg(long, conflicts_with = "random")]
    connection: Option<PathBuf>,
    /// Draw a Haar-random connection from --seed.
    #[arg(long)]
    random: bool,
    #[arg(long, value_enum, default_value_t = GroupArg::U1)]
    group: GroupArg,
    /// Fiber dimension; 1 for U1, 2 otherwise when omitted.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolverArgs {
    /// Residual tolerance; defaults to 1e-8, or 10/resolution for the grid.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 16)]
    starts: usize,
    #[arg(long, default_value_t = 60)]
    resolution: usize,
}

#[derive(Args)]
struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    File,
    Natural,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    U1,
    On,
    Un,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum YmMode {
    Eval,
    Residual,
    Minimize,
    Maximize,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum YmhMode {
    Eval,
    Residual,
}

/// Failure with its exit code.
enum Failure {
    Error(Error),
    NotConverged(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Cliques { out, .. }
        | Command::Spectrum { out, .. }
        | Command::Betti { out, .. }
        | Command::Curvature { out, .. }
        | Command::Check { out, .. }
        | Command::Ym { out, .. }
        | Command::GaugeFix { out, .. }
        | Command::Ymh { out, .. } => out.out.clone(),
    };
    let (report, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::NotConverged(v)) => (v, 1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_input_error() { 2 } else { 3 });
        }
    };
    let text = io::to_json_string(&report);
    match out {
        Some(path) => {
            if let Err(e) = io::write_text(&path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if code == 1 {
        eprintln!("error: optimizer did not reach the residual tolerance");
    }
    ExitCode::from(code)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Cliques { graph, .. } => Ok(io::cliques_report(&load_complex(&graph)?)),
        Command::Spectrum { graph, k, .. } => Ok(io::spectrum_report(&load_complex(&graph)?, k)?),
        Command::Betti { graph, .. } => {
            let cx = load_complex(&graph)?;
            let betti = betti_numbers(&cx)?;
            Ok(json!({"betti": betti, "euler_characteristic": ymgraph_core::calculus::euler_characteristic(&cx)}))
        }
        Command::Curvature { graph, k, .. } => curvature_report(&load_complex(&graph)?, k),
        Command::Check { graph, conn, .. } => {
            let cx = load_complex(&graph)?;
            let a = load_connection(&cx, &conn)?;
            let rep = identity_suite(&cx, &a, conn.seed)?;
            let checks: Vec<Value> = rep
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "error": c.error, "tolerance": c.tolerance, "pass": c.pass}))
                .collect();
            let report = json!({
                "group": a.group().kind().name(),
                "n": a.dim(),
                "seed": conn.seed,
                "checks": checks,
                "curvature_max_abs": rep.curvature_max_abs,
                "all_pass": rep.all_pass,
            });
            if rep.all_pass {
                Ok(report)
            } else {
                let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
                Err(Error::Contract(format!("identities failed: {}", failed.join(", "))).into())
            }
        }
        Command::Ym { mode, graph, conn, solver, .. } => ym(mode, &load_complex(&graph)?, &conn, &solver),
        Command::GaugeFix { graph, connection, .. } => {
            let cx = load_complex(&graph)?;
            let a = io::read_connection(&cx, &connection)?;
            let (fixed, g) = spanning_tree_gauge_fix(&cx, &a)?;
            let forest = SpanningForest::bfs(cx.graph());
            Ok(json!({
                "value": ym_value(&cx, &fixed)?,
                "tree_edges": forest.tree_edges(),
                "connection": io::connection_to_json(&cx, &fixed),
                "gauge": io::gauge_to_json(&g),
            }))
        }
        Command::Ymh { mode, graph, connection, higgs, potential, .. } => {
            let cx = load_complex(&graph)?;
            let potential: Potential = potential.parse()?;
            let a = io::read_connection(&cx, &connection)?;
            let phi = io::read_higgs(&cx, &higgs)?;
            match mode {
                YmhMode::Eval => {
                    let total = ymh_value(&cx, &a, &phi, potential)?;
                    let kinetic = 0.5 * d_a_vector(&cx, &a, &phi).norm_sq();
                    Ok(json!({
                        "value": total,
                        "yang_mills": ym_value(&cx, &a)?,
                        "kinetic": kinetic,
                        "potential": potential.value(&phi),
                    }))
                }
                YmhMode::Residual => {
                    let r = ymh_residuals(&cx, &a, &phi, potential)?;
                    let edges: Vec<Value> = cx
                        .simplices(1)
                        .iter()
                        .zip(r.edge_norms())
                        .map(|(s, norm)| json!({"u": s[0], "v": s[1], "norm": norm}))
                        .collect();
                    let vertices: Vec<Value> = r
                        .vertex_norms()
                        .into_iter()
                        .enumerate()
                        .map(|(v, norm)| json!({"v": v, "norm": norm}))
                        .collect();
                    Ok(json!({
                        "residual_inf_norm": r.inf_norm(),
                        "edge_residuals": edges,
                        "vertex_residuals": vertices,
                    }))
                }
            }
        }
    }
}

fn load_complex(args: &GraphArgs) -> Result<CliqueComplex, Error> {
    let orientation = match args.order {
        OrderArg::File => Orientation::FileOrder,
        OrderArg::Natural => Orientation::Natural,
    };
    let graph: Graph = io::read_graph(&args.graph, orientation)?;
    if args.max_k == Some(0) {
        return Err(Error::Validation("--max-k must be at least 1".into()));
    }
    Ok(CliqueComplex::build(graph, args.max_k))
}

fn group_of(args: &ConnectionArgs) -> Result<Group, Error> {
    let kind = match args.group {
        GroupArg::U1 => GroupKind::U1,
        GroupArg::On => GroupKind::On,
        GroupArg::Un => GroupKind::Un,
    };
    let n = args.n.unwrap_or(if kind == GroupKind::U1 { 1 } else { 2 });
    Group::new(kind, n)
}

fn load_connection(cx: &CliqueComplex, args: &ConnectionArgs) -> Result<Connection, Error> {
    match (&args.connection, args.random) {
        (Some(path), _) => io::read_connection(cx, path),
        (None, true) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Ok(Connection::random(cx, group_of(args)?, &mut rng))
        }
        (None, false) => Err(Error::Validation("give --connection PATH or --random".into())),
    }
}

fn curvature_report(cx: &CliqueComplex, k: Option<usize>) -> Outcome {
    let degrees: Vec<usize> = match k {
        Some(k) => {
            cx.require_degree(k)?;
            vec![k]
        }
        None => (0..cx.num_degrees()).collect(),
    };
    let tables: Vec<Value> = degrees
        .into_iter()
        .map(|k| {
            let rows: Vec<Value> = cx
                .simplices(k)
                .iter()
                .enumerate()
                .map(|(i, s)| json!({"simplex": s, "curvature": forman_ricci(cx, k, i)}))
                .collect();
            json!({"degree": k, "values": rows})
        })
        .collect();
    Ok(json!({"degrees": tables}))
}

fn positive(tol: f64) -> Result<f64, Error> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::Validation(format!("tolerance must be positive, got {tol}")))
    }
}

fn ym(mode: YmMode, cx: &CliqueComplex, conn: &ConnectionArgs, solver: &SolverArgs) -> Outcome {
    let index = TriangleIndex::new(cx)?;
    match mode {
        YmMode::Eval | YmMode::Residual => {
            let a = load_connection(cx, conn)?;
            let tol = positive(solver.tol.unwrap_or(1e-8))?;
            let value = ym_value(cx, &a)?;
            let residual = ym_residual(cx, &a)?;
            let mut report = YmReport::evaluate(&index, &a, tol, false);
            report.value = value;
            let mut out = io::ym_report_json(cx, &report)?;
            if mode == YmMode::Residual {
                let matrices: Vec<Value> = cx
                    .simplices(1)
                    .iter()
                    .zip(&residual.matrices)
                    .map(|(s, m)| json!({"u": s[0], "v": s[1], "matrix": io::matrix_to_json(m)}))
                    .collect();
                out["residual_matrices"] = Value::Array(matrices);
            }
            Ok(out)
        }
        YmMode::Minimize | YmMode::Maximize => {
            let direction = if mode == YmMode::Minimize { Direction::Minimize } else { Direction::Maximize };
            let opts = OptimizeOptions {
                tol: positive(solver.tol.unwrap_or(1e-8))?,
                max_iter: solver.max_iter,
                starts: solver.starts.max(1),
                seed: conn.seed,
                ..Default::default()
            };
            let (best, extra) = match &conn.connection {
                Some(path) => {
                    let start = io::read_connection(cx, path)?;
                    (optimize_from(cx, &start, direction, &opts)?, json!({"starts": 1}))
                }
                None => {
                    let multi = ym_optimize(cx, group_of(conn)?, direction, &opts)?;
                    let endpoints: Vec<Value> = multi
                        .endpoints
                        .iter()
                        .map(|ep| {
                            let sig: Vec<Value> = ep.signature.iter().map(|&(re, im)| json!([re, im])).collect();
                            json!({"value": ep.value, "runs": ep.runs, "trivial": ep.trivial, "holonomy_traces": sig})
                        })
                        .collect();
                    let all_converged = multi.runs.iter().all(|r| r.converged);
                    let best = multi.runs[multi.best].clone();
                    (
                        best,
                        json!({"starts": opts.starts, "best_start": multi.best, "all_converged": all_converged, "endpoints": endpoints}),
                    )
                }
            };
            let mut out = io::ym_report_json(cx, &best)?;
            if let (Value::Object(map), Value::Object(more)) = (&mut out, extra) {
                map.extend(more);
            }
            if best.converged {
                Ok(out)
            } else {
                Err(Failure::NotConverged(out))
            }
        }
        YmMode::Grid => grid_report(cx, solver),
    }
}

/// Grid scan; for the triangle and K4 each pass is matched to the nearest
/// known solution family.
fn grid_report(cx: &CliqueComplex, solver: &SolverArgs) -> Outcome {
    let tol = solver.tol.map(positive).transpose()?;
    let grid = u1_grid_oracle(cx, solver.resolution, tol)?;
    // The families are stated for the complete graph oriented low to high.
    let g = cx.graph();
    let n = g.num_vertices();
    let complete_natural = g.num_edges() == n * n.saturating_sub(1) / 2 && g.edges().iter().all(|&(u, v)| u < v);
    let families = match n {
        3 | 4 if complete_natural => known_families(if n == 3 { "K3" } else { "K4" }).ok(),
        _ => None,
    };
    let reach = GRID_MEMBERSHIP_STEPS * grid.step() + 1e-12;
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    let mut unassigned = 0usize;
    let passes: Vec<Value> = grid
        .passes
        .iter()
        .map(|p| {
            let mut entry = json!({"indices": p.indices, "angles": p.angles, "residual": p.residual});
            if let Some(fams) = &families {
                let (name, dist) = fams
                    .iter()
                    .map(|f| (f.name.clone(), f.distance(&p.angles)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("families are non-empty");
                if dist <= reach {
                    *counts.entry(name.clone()).or_default() += 1;
                    entry["family"] = json!(name);
                } else {
                    unassigned += 1;
                    entry["family"] = Value::Null;
                }
                entry["family_distance"] = json!(dist);
            }
            entry
        })
        .collect();
    let mut out = json!({
        "resolution": grid.resolution,
        "tolerance": grid.tolerance,
        "free_edges": grid.free_edges,
        "scanned": grid.scanned,
        "passes": passes,
    });
    if families.is_some() {
        out["family_counts"] = json!(counts);
        out["unassigned"] = json!(unassigned);
    }
    Ok(out)
}
