use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fglab::families::FamilySpec;
use fglab::negligibility::{
    best_cover_exact, best_cover_greedy, evaluate_cover, parse_pairs, CoverageProfile, CoverageResult, Method,
    PairCover, DEFAULT_NODE_BUDGET,
};
use fglab::pseudoplane::{
    axiom_check, claim_walk, generate_pruned_tree, NeighborChoice, PseudoplaneGraph, DEFAULT_LEVEL_WIDTH,
};
use fglab::word::RawSequence;
use fglab::Word;
use fglab_cli::{
    parse_list, parse_range, render_report, run_experiment, summary_table, ExperimentConfig, ExperimentError,
};

#[derive(Parser)]
#[command(name = "fglab", version, about = "Free-group word calculus and matched-pair cover experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce a word.
    Reduce {
        word: String,
        /// Print `e1 E2` tokens instead of letters.
        #[arg(long)]
        verbose: bool,
    },
    /// Primitive root and exponent: `w = root^k`.
    Root { word: String },
    /// Whether two words commute.
    Commutes {
        u: String,
        v: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Conjugate `g⁻¹ x g`.
    Conj {
        x: String,
        g: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Search for `w = x² y³` with `|x| <= max-len`.
    Squarecube {
        word: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Best cover of a word by matched pairs, or evaluate a given cover.
    Cover {
        word: String,
        #[arg(long = "N", default_value_t = 2)]
        pairs: usize,
        #[arg(long, value_enum, default_value_t = SolverArg::Exact)]
        method: SolverArg,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Cover to evaluate instead of solving, e.g. `[(0,2)~(6,8):I]`.
        #[arg(long)]
        evaluate: Option<String>,
    },
    /// Coverage profile of a word family as CSV.
    Profile {
        /// Family text, e.g. `Y k=2` or `borel glen=6 seed=1`.
        #[arg(long)]
        family: String,
        /// Indices, e.g. `3..7`.
        #[arg(long)]
        n: String,
        /// Pair budgets, e.g. `1..2`.
        #[arg(long = "N")]
        pairs: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Replace the family's seeds.
        #[arg(long)]
        seed: Option<u64>,
        /// Threshold grid for the verdict, e.g. `0.2,0.1,0.05`.
        #[arg(long)]
        epsilons: Option<String>,
        /// Directory for profile.csv, verdict.toml and the result cache.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Record wall times in the `ms` column.
        #[arg(long)]
        timings: bool,
    },
    /// Plot a profile CSV as SVG and print a summary table.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the summary table here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Generate or load a forest, check the axioms and run the 2n-walk.
    Pseudoplane {
        #[arg(long, default_value_t = 3)]
        branching: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expanded vertices per level.
        #[arg(long, default_value_t = DEFAULT_LEVEL_WIDTH)]
        width: usize,
        /// Read an edge list instead of generating.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Write the graph as an edge list.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Walk length n.
        #[arg(long, default_value_t = 5)]
        walk: usize,
        #[arg(long, default_value_t = 0)]
        a0: usize,
        /// Defaults to the first non-boundary neighbour of a0.
        #[arg(long)]
        b0: Option<usize>,
        /// Seed for random neighbour choices; smallest ids when absent.
        #[arg(long)]
        walk_seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
    Both,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Exact => vec![Method::Exact],
            MethodArg::Greedy => vec![Method::Greedy],
            MethodArg::Both => vec![Method::Exact, Method::Greedy],
        }
    }
}

enum Failure {
    /// Bad input or configuration; exit code 2.
    Usage(String),
    /// Valid input with no answer, or an I/O failure; exit code 1.
    Domain(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Reduce { word, verbose } => {
            let w: Word = word.parse().map_err(usage)?;
            println!("{}", if verbose { w.to_verbose_string() } else { w.to_string() });
        }
        Command::Root { word } => {
            let w: Word = word.parse().map_err(usage)?;
            let (root, k) = w.primitive_root().map_err(domain)?;
            println!("{root} {k}");
        }
        Command::Commutes { u, v, rank } => {
            let [u, v] = parse_words([&u, &v], rank)?;
            println!("{}", u.commutes_with(&v).map_err(domain)?);
        }
        Command::Conj { x, g, rank } => {
            let [x, g] = parse_words([&x, &g], rank)?;
            println!("{}", x.conjugate(&g).map_err(domain)?);
        }
        Command::Squarecube { word, max_len } => {
            let w: Word = word.parse().map_err(usage)?;
            match w.square_cube_decompose(max_len) {
                Some(sc) => println!("x={} y={}", sc.x, sc.y),
                None => println!("none"),
            }
        }
        Command::Cover { word, pairs, method, budget, evaluate } => {
            let w: Word = word.parse().map_err(usage)?;
            let result = match evaluate {
                Some(text) => {
                    let given = parse_pairs(&text).map_err(usage)?;
                    evaluate_cover(PairCover::new(w, given, pairs)).map_err(domain)?
                }
                None => match method {
                    SolverArg::Exact => best_cover_exact(&w, pairs, budget),
                    SolverArg::Greedy => best_cover_greedy(&w, pairs),
                },
            };
            print_cover(&result);
        }
        Command::Profile { family, n, pairs, method, budget, seed, epsilons, out, no_cache, threads, timings } => {
            let family: FamilySpec = family.parse().map_err(usage)?;
            let ns = parse_range(&n).map_err(usage)?;
            let budgets = parse_range(&pairs).map_err(usage)?.into_iter().map(|b| b as usize).collect();
            let mut config = ExperimentConfig::new(family, ns, budgets, method.methods());
            config.node_budget = budget;
            config.seed = seed;
            if let Some(text) = epsilons {
                config.epsilons = parse_list(&text).map_err(usage)?;
            }
            config.out_dir = out;
            config.use_cache = !no_cache;
            config.threads = threads;
            config.record_timings = timings;
            let output = run_experiment(&config).map_err(|e| match e {
                ExperimentError::Config(_) | ExperimentError::Profile(_) => usage(e),
                other => domain(other),
            })?;
            print!("{}", output.profile.to_csv_string());
            eprintln!("verdict: {} (heuristic)", output.verdict.verdict);
        }
        Command::Report { input, out, summary } => {
            let text = fs::read_to_string(&input).map_err(|e| domain(format!("{}: {e}", input.display())))?;
            let profile: CoverageProfile = text.parse().map_err(usage)?;
            let table = summary_table(&profile).map_err(domain)?;
            let svg = render_report(&profile).map_err(domain)?;
            fs::write(&out, svg).map_err(|e| domain(format!("{}: {e}", out.display())))?;
            if let Some(path) = summary {
                fs::write(&path, &table).map_err(|e| domain(format!("{}: {e}", path.display())))?;
            }
            print!("{table}");
        }
        Command::Pseudoplane { branching, depth, components, seed, width, graph, export, walk, a0, b0, walk_seed } => {
            let g = match graph {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
                    text.parse::<PseudoplaneGraph>().map_err(usage)?
                }
                None => generate_pruned_tree(branching, depth, components, seed, width).map_err(usage)?,
            };
            if let Some(path) = export {
                fs::write(&path, g.to_edge_list()).map_err(|e| domain(format!("{}: {e}", path.display())))?;
            }
            let report = axiom_check(&g);
            println!(
                "graph: {} vertices, {} edges, target branching {}",
                g.vertex_count(),
                g.edge_count(),
                g.target_branching()
            );
            println!(
                "axioms: {} ({} boundary vertices)",
                if report.passed() { "pass" } else { "FAIL" },
                report.boundary.len()
            );
            for v in &report.violations {
                println!("  {v}");
            }
            let neighbors = g.neighbors(a0).map_err(usage)?;
            let b0 = match b0 {
                Some(b) => b,
                None => neighbors
                    .iter()
                    .copied()
                    .find(|&v| v != a0 && !g.is_boundary(v))
                    .or_else(|| neighbors.iter().copied().find(|&v| v != a0))
                    .ok_or_else(|| domain(format!("vertex {a0} has no neighbours")))?,
            };
            let choice = walk_seed.map_or(NeighborChoice::First, NeighborChoice::Seeded);
            let result = claim_walk(&g, a0, b0, walk, choice).map_err(domain)?;
            let pairs: Vec<String> = result.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
            println!("walk: {}", pairs.join(" "));
            println!("distance(b0, b{walk}) = {}", result.distance);
            if !report.passed() {
                return Err(domain("graph violates the forest axioms"));
            }
        }
    }
    Ok(())
}

/// Parses words into a common rank: `rank` if given, else the largest
/// generator mentioned (at least 2).
fn parse_words<const K: usize>(texts: [&str; K], rank: Option<u32>) -> Result<[Word; K], Failure> {
    let raws = texts.map(RawSequence::parse);
    let mut seqs = Vec::with_capacity(K);
    for raw in raws {
        seqs.push(raw.map_err(usage)?);
    }
    let rank = rank.unwrap_or_else(|| seqs.iter().map(RawSequence::max_generator).max().unwrap_or(0).max(2));
    let words: Vec<Word> = seqs.into_iter().map(|s| s.reduce(rank)).collect::<Result<_, _>>().map_err(usage)?;
    Ok(words.try_into().unwrap_or_else(|_| unreachable!("one word per input")))
}

fn print_cover(result: &CoverageResult) {
    let (uncovered, len) = result.uncovered_ratio();
    println!("uncovered {uncovered}/{len} ({:.6}) {}", result.uncovered_fraction(), result.optimality.as_str());
    println!("pairs {}", result.cover.pairs_text());
}
