//! Command-line interface for exact cut sparsifiers.
//!
//! Exit codes: 0 = success/verified, 1 = verification failed or a bound was
//! violated, 2 = input or usage error (nothing on stdout).

use clap::{Args, Parser, Subcommand};
use mimicknet::json::{
    parse_graph, parse_partition, serialize_cut_vector, serialize_graph, serialize_partition,
    serialize_report,
};
use mimicknet::{
    bounds_row, brute_force_min_terminal_cut, build_mimicking_network, cactus_size_bound,
    canonical_subsets, convex_combine, gadget_graph, is_unique_min_terminal_cut,
    min_contraction_size_bruteforce, parse_rational, reduce_tree, terminal_cut_vector, ternarize,
    tree_min_terminal_cut, verify_sparsifier, y_delta_reduce, CapGraph, Rational, TreeGraph,
};
use rand::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "mimicknet",
    about = "Exact cut sparsifiers (mimicking networks) for capacitated graphs with terminals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sparsifier by signature clustering and verify it exactly.
    Sparsify {
        /// Input graph JSON.
        #[arg(long)]
        input: PathBuf,
        /// Where to write the sparsifier graph JSON.
        #[arg(long)]
        output: PathBuf,
        /// Where to write the vertex partition JSON.
        #[arg(long)]
        mapping: PathBuf,
        /// Where to write the verification report JSON.
        #[arg(long)]
        report: PathBuf,
    },
    /// Compare all terminal cut values of a graph and a claimed sparsifier.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        sparsifier: PathBuf,
        /// Optional partition JSON; when given, its contraction must
        /// reproduce the sparsifier exactly.
        #[arg(long)]
        mapping: Option<PathBuf>,
    },
    /// Print the vector of minimum terminal cut values.
    Mtcv {
        #[arg(long)]
        input: PathBuf,
    },
    /// Tree-specific constructions.
    Tree {
        #[command(subcommand)]
        command: TreeCommand,
    },
    /// Build the single-coordinate gadget graph.
    Gadget(GadgetArgs),
    /// Combine two graphs so cut vectors mix convexly.
    Combine {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        /// Mixing weight in [0, 1], as an integer or "p/q".
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the bounds-table row for k terminals.
    Bounds {
        #[arg(long)]
        k: usize,
        /// Also build this many seeded random graphs and report the largest
        /// observed cluster count.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the builder's cluster count with the brute-force optimum.
    Optimality {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Prune and splice a tree down to at most 2k-1 vertices.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Full pipeline to a cactus: reduce, ternarize, star-triangle.
    Cactus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct GadgetArgs {
    /// Terminal count; terminals are named a, b, c, ... (up to 26).
    #[arg(long, conflicts_with = "terminals")]
    k: Option<usize>,
    /// Explicit comma-separated terminal list (overrides --k).
    #[arg(long)]
    terminals: Option<String>,
    /// Comma-separated terminal subset (must exclude the last terminal).
    #[arg(long)]
    subset: String,
    /// Epsilon as an integer or "p/q".
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<CapGraph<Rational>, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tree(path: &Path) -> Result<TreeGraph<Rational>, String> {
    TreeGraph::new(load_graph(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn subsets_of(g: &CapGraph<Rational>) -> Result<Vec<BTreeSet<String>>, String> {
    let terminals: Vec<String> = g.terminal_names().iter().map(|s| s.to_string()).collect();
    canonical_subsets(&terminals).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct TreeMetadata {
    clamps: usize,
    is_cactus: bool,
    size_bound: String,
}

#[derive(Serialize)]
struct BoundsReport {
    k: usize,
    #[serde(rename = "Z")]
    z: u64,
    #[serde(rename = "M_prime")]
    m_prime: u64,
    two_power: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    observed_n_max: Option<usize>,
}

#[derive(Serialize)]
struct OptimalityReport {
    builder_clusters: usize,
    optimal_clusters: usize,
    all_cuts_unique: bool,
    optimal_matches_builder: bool,
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Sparsify {
            input,
            output,
            mapping,
            report,
        } => {
            let g = load_graph(&input)?;
            let network = build_mimicking_network(&g).map_err(|e| e.to_string())?;
            let verdict = verify_sparsifier(&g, &network.network).map_err(|e| e.to_string())?;
            write(&output, &serialize_graph(&network.network))?;
            write(&mapping, &serialize_partition(&network.partition))?;
            let report_json = serialize_report(&verdict);
            write(&report, &report_json)?;
            println!("{report_json}");
            Ok(if verdict.pass { 0 } else { 1 })
        }
        Command::Verify {
            graph,
            sparsifier,
            mapping,
        } => {
            let g = load_graph(&graph)?;
            let h = load_graph(&sparsifier)?;
            let verdict = verify_sparsifier(&g, &h).map_err(|e| e.to_string())?;
            let mut mapping_ok = true;
            if let Some(path) = mapping {
                let partition = parse_partition(&read(&path)?)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                let contracted = g.contract(&partition).map_err(|e| e.to_string())?;
                if contracted != h {
                    mapping_ok = false;
                    eprintln!("mapping does not contract the graph onto the sparsifier");
                }
            }
            println!("{}", serialize_report(&verdict));
            Ok(if verdict.pass && mapping_ok { 0 } else { 1 })
        }
        Command::Mtcv { input } => {
            let g = load_graph(&input)?;
            let vector = terminal_cut_vector(&g).map_err(|e| e.to_string())?;
            println!("{}", serialize_cut_vector(&vector));
            Ok(0)
        }
        Command::Tree { command } => dispatch_tree(command),
        Command::Gadget(args) => {
            let terminals: Vec<String> = match (&args.terminals, args.k) {
                (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
                (None, Some(k)) => {
                    if !(2..=26).contains(&k) {
                        return Err("--k must be between 2 and 26".into());
                    }
                    (0..k)
                        .map(|i| ((b'a' + i as u8) as char).to_string())
                        .collect()
                }
                (None, None) => return Err("either --k or --terminals is required".into()),
            };
            let subset: BTreeSet<String> = args
                .subset
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let epsilon = parse_rational(&args.epsilon).map_err(|e| e.to_string())?;
            let g = gadget_graph(&terminals, &subset, &epsilon).map_err(|e| e.to_string())?;
            let json = serialize_graph(&g);
            if let Some(path) = args.output {
                write(&path, &json)?;
            }
            println!("{json}");
            Ok(0)
        }
        Command::Combine {
            g1,
            g2,
            lambda,
            output,
        } => {
            let first = load_graph(&g1)?;
            let second = load_graph(&g2)?;
            let lambda = parse_rational(&lambda).map_err(|e| e.to_string())?;
            let combined = convex_combine(&first, &second, &lambda).map_err(|e| e.to_string())?;
            let json = serialize_graph(&combined);
            if let Some(path) = output {
                write(&path, &json)?;
            }
            println!("{json}");
            Ok(0)
        }
        Command::Bounds { k, samples, seed } => {
            let row = bounds_row(k).map_err(|e| e.to_string())?;
            let mut observed_n_max = None;
            let mut violated = false;
            if samples > 0 {
                let mut rng = StdRng::seed_from_u64(seed);
                let mut largest = 0usize;
                for _ in 0..samples {
                    let g = random_sample_graph(&mut rng, k);
                    let network = build_mimicking_network(&g).map_err(|e| e.to_string())?;
                    largest = largest.max(network.cluster_count());
                }
                violated = largest as u64 > row.z;
                observed_n_max = Some(largest);
            }
            let report = BoundsReport {
                k: row.k,
                z: row.z,
                m_prime: row.m_prime,
                two_power: row.two_power,
                observed_n_max,
            };
            println!(
                "{}",
                serde_json::to_string(&report).map_err(|e| e.to_string())?
            );
            Ok(if violated { 1 } else { 0 })
        }
        Command::Optimality { input } => {
            let g = load_graph(&input)?;
            let network = build_mimicking_network(&g).map_err(|e| e.to_string())?;
            let optimal = min_contraction_size_bruteforce(&g).map_err(|e| e.to_string())?;
            let mut all_unique = true;
            for subset in subsets_of(&g)? {
                if !is_unique_min_terminal_cut(&g, &subset).map_err(|e| e.to_string())? {
                    all_unique = false;
                    break;
                }
            }
            let report = OptimalityReport {
                builder_clusters: network.cluster_count(),
                optimal_clusters: optimal,
                all_cuts_unique: all_unique,
                optimal_matches_builder: network.cluster_count() == optimal,
            };
            println!(
                "{}",
                serde_json::to_string(&report).map_err(|e| e.to_string())?
            );
            Ok(if all_unique && !report.optimal_matches_builder {
                1
            } else {
                0
            })
        }
    }
}

fn dispatch_tree(command: TreeCommand) -> Result<i32, String> {
    match command {
        TreeCommand::Reduce { input, output } => {
            let tree = load_tree(&input)?;
            let reduced = reduce_tree(&tree).map_err(|e| e.to_string())?;
            write(&output, &serialize_graph(reduced.graph()))?;
            let k = tree.graph().terminal_count();
            let mut ok = reduced.graph().vertex_count() < 2 * k;
            for subset in subsets_of(tree.graph())? {
                let before = tree_min_terminal_cut(&tree, &subset).map_err(|e| e.to_string())?;
                let after = tree_min_terminal_cut(&reduced, &subset).map_err(|e| e.to_string())?;
                if before != after {
                    ok = false;
                }
            }
            let metadata = TreeMetadata {
                clamps: 0,
                is_cactus: true,
                size_bound: (2 * k - 1).to_string(),
            };
            println!(
                "{}",
                serde_json::to_string(&metadata).map_err(|e| e.to_string())?
            );
            Ok(if ok { 0 } else { 1 })
        }
        TreeCommand::Cactus { input, output } => {
            let tree = load_tree(&input)?;
            let k = tree.graph().terminal_count();
            let ternary = ternarize(&tree).map_err(|e| e.to_string())?;
            let cactus = y_delta_reduce(&ternary).map_err(|e| e.to_string())?;
            write(&output, &serialize_graph(&cactus.graph))?;
            let bound = cactus_size_bound(k);
            let mut ok = cactus.is_cactus && cactus.graph.vertex_count() <= bound;
            // Self-verify when the oracle is feasible.
            if k <= 12 && cactus.graph.vertex_count() <= 24 {
                for subset in subsets_of(tree.graph())? {
                    let before =
                        tree_min_terminal_cut(&tree, &subset).map_err(|e| e.to_string())?;
                    let (after, _) = brute_force_min_terminal_cut(&cactus.graph, &subset)
                        .map_err(|e| e.to_string())?;
                    if before != after {
                        ok = false;
                    }
                }
            }
            let metadata = TreeMetadata {
                clamps: cactus.clamps,
                is_cactus: cactus.is_cactus,
                size_bound: bound.to_string(),
            };
            println!(
                "{}",
                serde_json::to_string(&metadata).map_err(|e| e.to_string())?
            );
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Small seeded random connected graph used by `bounds --samples`.
fn random_sample_graph(rng: &mut StdRng, k: usize) -> CapGraph<Rational> {
    let n = rng.gen_range(k..=k + 4);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((
            vertices[j].clone(),
            vertices[i].clone(),
            Rational::from_integer(rng.gen_range(1..=10).into()),
        ));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.3) {
                edges.push((
                    vertices[u].clone(),
                    vertices[v].clone(),
                    Rational::from_integer(rng.gen_range(1..=10).into()),
                ));
            }
        }
    }
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    positions.truncate(k);
    let terminals = positions.iter().map(|&i| vertices[i].clone()).collect();
    CapGraph::new(vertices, terminals, edges).expect("sampled graph is valid")
}
