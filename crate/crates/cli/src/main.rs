//! Command-line interface for exact Koszul module and resonance variety
//! computations. Every subcommand prints one JSON document (schema 1) to
//! stdout, or a plain-text table with --table.
//!
//! Exit codes: 0 success, 2 invalid input, 3 undecided verdict under
//! --require-decision.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use koszul_resonance::graphkit::{cut_polynomial, hilbert_dims_from_graph, monomial_k, Graph};
use koszul_resonance::groupres::{group_resonance, CommutatorPresentation};
use koszul_resonance::koszul::{w_dims_scan, GradedDims, TwoFormSubspace};
use koszul_resonance::liecrit::{
    torelli_free_preset, torelli_surface_preset, CorollaryVerdict, LieResonanceProblem,
};
use koszul_resonance::resonance::{vanishing_decision, VanishingDecision};
use koszul_resonance::rootsys::WeightRepr;
use koszul_resonance::scan::run_scan;
use koszul_resonance::sl2::{
    clebsch_gordan_wedge, findim_criterion, submodule_from_summands, weyman_dims, SummandSelection,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "koszulres",
    version,
    about = "Exact computations with Koszul modules and resonance varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of the Koszul module of a 2-form subspace
    Koszul {
        #[command(subcommand)]
        cmd: KoszulCmd,
    },
    /// Vanishing decisions for resonance varieties
    Resonance {
        #[command(subcommand)]
        cmd: ResonanceCmd,
    },
    /// Root-system weight criteria
    Lie {
        #[command(subcommand)]
        cmd: LieCmd,
    },
    /// sl2 representations and summand experiments
    Sl2 {
        #[command(subcommand)]
        cmd: Sl2Cmd,
    },
    /// Graphs, cut polynomials, and the monomial-subspace oracle
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Commutator-relators group presentations
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Random subspaces at fixed (n, m), decided and recorded reproducibly
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum KoszulCmd {
    /// Scan graded dimensions of W(V,K) from a subspace JSON file
    Dims {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum ResonanceCmd {
    /// Decide whether R(V,K) = {0} for a subspace JSON file
    Decide {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        /// Exit with code 3 when the verdict is Unknown
        #[arg(long)]
        require_decision: bool,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum LieCmd {
    /// Run the weight criteria on a problem JSON file
    Criterion {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        table: bool,
    },
    /// Run the weight criteria on a built-in problem family
    Preset {
        /// "torelli-free" or "torelli-surface"
        #[arg(long)]
        name: String,
        /// Number of generators n (free family) or genus g (surface family)
        #[arg(long)]
        size: usize,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum Sl2Cmd {
    /// Clebsch-Gordan decomposition of the wedge square of V_n
    Decompose {
        n: usize,
        #[arg(long)]
        table: bool,
    },
    /// Graded dimensions of W(n), the module of the top summand
    Weyman {
        n: usize,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        #[arg(long)]
        table: bool,
    },
    /// Build a submodule from selected summands and scan it
    Submodule {
        n: usize,
        /// Comma-separated summand indices, e.g. 0,1
        #[arg(long, value_delimiter = ',')]
        summands: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Cut polynomial and graded dimensions from a graph file
    Dims {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        /// Recompute the dimensions from the presentation ranks and compare
        #[arg(long)]
        check: bool,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Resonance report for a commutator-relators presentation file
    Resonance {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        #[arg(long)]
        require_decision: bool,
        #[arg(long)]
        table: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Koszul {
            cmd: KoszulCmd::Dims { file, qmax, table },
        } => {
            let k = read_subspace(&file)?;
            let dims = w_dims_scan(&k, qmax);
            if table {
                println!("n = {}, dim K = {}", k.n(), k.dim());
                print_dims_table(&dims);
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": k.n(),
                    "k_dim": k.dim(),
                    "dims": dims.dims,
                    "vanished_at": dims.vanished_at,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Resonance {
            cmd:
                ResonanceCmd::Decide {
                    file,
                    qmax,
                    require_decision,
                    table,
                },
        } => {
            let k = read_subspace(&file)?;
            let decision = vanishing_decision(&k, qmax);
            if table {
                println!("n = {}, dim K = {}", k.n(), k.dim());
                println!("decision: {}", describe_decision(&decision));
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": k.n(),
                    "k_dim": k.dim(),
                    "decision": decision,
                }))?;
            }
            Ok(undecided_exit(&decision, require_decision))
        }
        Command::Lie { cmd } => {
            let (problem, table) = match cmd {
                LieCmd::Criterion { file, table } => {
                    let text = fs::read_to_string(&file)
                        .with_context(|| format!("reading {}", file.display()))?;
                    let problem: LieResonanceProblem = serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", file.display()))?;
                    (problem, table)
                }
                LieCmd::Preset { name, size, table } => {
                    let problem = match name.as_str() {
                        "torelli-free" => torelli_free_preset(size)?,
                        "torelli-surface" => torelli_surface_preset(size)?,
                        other => anyhow::bail!(
                            "unknown preset {other:?}; expected torelli-free or torelli-surface"
                        ),
                    };
                    (problem, table)
                }
            };
            let theorem = problem.vanishes_by_theorem();
            let verdict = problem.corollary_verdict();
            let decision = problem.decide();
            if table {
                println!(
                    "family {:?}, rank {}",
                    problem.root_system().family(),
                    problem.root_system().rank()
                );
                println!("theorem criterion vanishes:   {theorem}");
                println!(
                    "corollary criterion vanishes: {}",
                    matches!(verdict, CorollaryVerdict::Vanishes)
                );
                if let CorollaryVerdict::NonVanishes { ref witness_root } = verdict {
                    println!("witness simple root: {:?}", witness_root.coords);
                }
            } else {
                let witness = match &verdict {
                    CorollaryVerdict::NonVanishes { witness_root } => {
                        Some(WeightRepr::of(problem.root_system(), witness_root))
                    }
                    CorollaryVerdict::Vanishes => None,
                };
                print_json(&json!({
                    "schema": SCHEMA,
                    "problem": problem,
                    "theorem_vanishes": theorem,
                    "corollary_vanishes": matches!(verdict, CorollaryVerdict::Vanishes),
                    "witness_simple_root": witness,
                    "decision": decision,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sl2 { cmd } => run_sl2(cmd),
        Command::Graph {
            cmd:
                GraphCmd::Dims {
                    file,
                    qmax,
                    check,
                    table,
                },
        } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let graph = Graph::parse(&text)?;
            let coeffs = cut_polynomial(&graph)?;
            let dims = hilbert_dims_from_graph(&graph, qmax)?;
            let verified = if check {
                let k = monomial_k(&graph);
                let direct = w_dims_scan(&k, qmax);
                if direct != dims {
                    anyhow::bail!(
                        "cut-polynomial dimensions disagree with presentation ranks: {:?} vs {:?}",
                        dims,
                        direct
                    );
                }
                Some(true)
            } else {
                None
            };
            if table {
                println!(
                    "graph on {} vertices, {} edges",
                    graph.vertex_count(),
                    graph.edge_count()
                );
                let cut: Vec<String> = (2..=graph.vertex_count())
                    .map(|j| format!("c_{j} = {}", coeffs[j]))
                    .collect();
                println!("cut polynomial: {}", cut.join(", "));
                print_dims_table(&dims);
                if verified == Some(true) {
                    println!("verified against presentation ranks");
                }
            } else {
                let cut: Vec<(usize, u64)> =
                    (2..=graph.vertex_count()).map(|j| (j, coeffs[j])).collect();
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": graph.vertex_count(),
                    "edges": graph.edges().collect::<Vec<_>>(),
                    "cut_polynomial": cut,
                    "dims": dims.dims,
                    "vanished_at": dims.vanished_at,
                    "verified_against_presentation": verified,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Group {
            cmd:
                GroupCmd::Resonance {
                    file,
                    qmax,
                    require_decision,
                    table,
                },
        } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let presentation = CommutatorPresentation::parse(&text)?;
            let report = group_resonance(&presentation, qmax);
            if table {
                println!("b1 = {}, dim K = {}", report.b1, report.k.dim());
                print_dims_table(&report.dims);
                println!("decision: {}", describe_decision(&report.decision));
                if let Some(bound) = report.deficiency_bound {
                    println!("deficiency bound: {bound}");
                }
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "b1": report.b1,
                    "k_dim": report.k.dim(),
                    "k": report.k,
                    "dims": report.dims.dims,
                    "vanished_at": report.dims.vanished_at,
                    "decision": report.decision,
                    "deficiency_bound": report.deficiency_bound,
                }))?;
            }
            Ok(undecided_exit(&report.decision, require_decision))
        }
        Command::Scan {
            n,
            m,
            samples,
            seed,
            qmax,
            table,
        } => {
            let records = run_scan(n, m, samples, seed, qmax)?;
            if table {
                println!("n = {n}, m = {m}, samples = {samples}, seed = {seed}, qmax = {qmax}");
                for r in &records {
                    println!(
                        "  sample {:>3}: {}",
                        r.sample_index,
                        describe_decision(&r.decision)
                    );
                }
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": n,
                    "m": m,
                    "samples": samples,
                    "seed": seed,
                    "q_max": qmax,
                    "records": records,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_sl2(cmd: Sl2Cmd) -> Result<ExitCode> {
    match cmd {
        Sl2Cmd::Decompose { n, table } => {
            let weights = clebsch_gordan_wedge(n);
            if table {
                println!("wedge square of V_{n} (dimension {}):", n * (n + 1) / 2);
                for (j, w) in weights.iter().enumerate() {
                    println!("  j = {j}: highest weight {w}, dim {}", w + 1);
                }
            } else {
                let summands: Vec<_> = weights
                    .into_iter()
                    .enumerate()
                    .map(|(j, w)| json!({ "j": j, "highest_weight": w, "dim": w + 1 }))
                    .collect();
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": n,
                    "wedge_square_dim": n * (n + 1) / 2,
                    "summands": summands,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Sl2Cmd::Weyman { n, qmax, table } => {
            let dims = weyman_dims(n, qmax)?;
            if table {
                println!("highest weight {n}: graded dimensions of the top-summand module");
                print_dims_table(&dims);
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": n,
                    "dims": dims.dims,
                    "vanished_at": dims.vanished_at,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Sl2Cmd::Submodule {
            n,
            summands,
            qmax,
            table,
        } => {
            let sel = SummandSelection::new(n, summands.iter().copied())?;
            let k = submodule_from_summands(&sel)?;
            let dims = w_dims_scan(&k, qmax);
            let finite_expected = findim_criterion(&sel);
            if table {
                println!("V_{n} summands {summands:?}: dim K = {}", k.dim());
                print_dims_table(&dims);
                println!("top summand selected (finite-dimensional): {finite_expected}");
            } else {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": n,
                    "summands": summands,
                    "k_dim": k.dim(),
                    "dims": dims.dims,
                    "vanished_at": dims.vanished_at,
                    "top_summand_selected": finite_expected,
                }))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_subspace(path: &PathBuf) -> Result<TwoFormSubspace> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn print_dims_table(dims: &GradedDims) {
    for (q, d) in dims.dims.iter().enumerate() {
        println!("  q = {q:>2}: dim = {d}");
    }
    match dims.vanished_at {
        Some(q) => println!("  vanishes from degree {q}"),
        None => println!("  no vanishing up to the cap"),
    }
}

fn describe_decision(decision: &VanishingDecision) -> String {
    match decision {
        VanishingDecision::Vanishes { degree: Some(q) } => format!("vanishes (degree {q})"),
        VanishingDecision::Vanishes { degree: None } => "vanishes".into(),
        VanishingDecision::NonVanishes { .. } => "does not vanish".into(),
        VanishingDecision::Unknown { cap } => format!("unknown up to degree {cap}"),
    }
}

fn undecided_exit(decision: &VanishingDecision, require_decision: bool) -> ExitCode {
    if require_decision && matches!(decision, VanishingDecision::Unknown { .. }) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
