use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use list_ramsey::bounds::{self, BoundReport, DensityInput};
use list_ramsey::construct::{self, LllOptions};
use list_ramsey::decide::{self, DecisionOutcome, ListStrategy, Verdict};
use list_ramsey::extremal::{self, FreenessMode};
use list_ramsey::morphism::verify_coloring;
use list_ramsey::{Budget, Coloring, Error, Hypergraph, ListAssignment};

/// Like `print!`/`println!`, but a closed stdout becomes an error instead of a panic.
macro_rules! out {
    ($($arg:tt)*) => { write!(io::stdout(), $($arg)*)? };
}

macro_rules! outln {
    ($($arg:tt)*) => { writeln!(io::stdout(), $($arg)*)? };
}

/// Exact searches, randomized constructions and bound evaluators for list
/// Ramsey numbers of uniform hypergraphs.
///
/// Graph arguments are built-in names (K5, K4^3, C5, K3,3, P4) or paths to
/// edge-list files; `-` reads stdin. Exit status is 0 on success, 2 when a
/// budget ran out, 1 on errors.
#[derive(Parser)]
#[command(name = "list-ramsey", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Stop exhaustive searches after this many nodes.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Stop exhaustive searches after this many milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

impl Global {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_ms.map(Duration::from_millis),
            threads: self.threads.max(1),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    CopyFree,
    HomFree,
}

impl From<Mode> for FreenessMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::CopyFree => FreenessMode::CopyFree,
            Mode::HomFree => FreenessMode::HomFree,
        }
    }
}

/// How the lists on the host edges are chosen.
#[derive(Args)]
struct ListArgs {
    /// JSON list assignment; overrides -k.
    #[arg(long)]
    lists: Option<PathBuf>,
    /// List size; lists are {0..k-1} unless --universe is given.
    #[arg(short, long)]
    k: Option<usize>,
    /// Draw seeded random k-subsets of 0..universe instead.
    #[arg(long)]
    universe: Option<usize>,
}

impl ListArgs {
    fn build(&self, host: &Hypergraph, seed: u64) -> anyhow::Result<ListAssignment> {
        if let Some(path) = &self.lists {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let lists = ListAssignment::from_json(&text)?;
            if lists.host() != host {
                bail!("list file covers {} but the host is {host}", lists.host());
            }
            return Ok(lists);
        }
        let Some(k) = self.k else {
            bail!("give either --lists or -k")
        };
        Ok(match self.universe {
            Some(universe) => ListAssignment::random(host.clone(), k, universe, seed)?,
            None => ListAssignment::constant(host.clone(), k)?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact Turán number ex(n, H) with a witness.
    Turan {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value = "copy-free")]
        mode: Mode,
    },
    /// Table of ex(n, H) / C(n, r) up to n-max.
    Density {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n_max: usize,
    },
    /// The density parameter m(H).
    Mparam {
        #[arg(long)]
        pattern: String,
    },
    /// Weak chromatic number with an optimal coloring.
    Chromatic {
        #[arg(long)]
        graph: String,
    },
    /// Whether every edge meets each of r classes exactly once.
    Partite {
        #[arg(long)]
        graph: String,
    },
    /// Zykov symmetrization towards a minimum degree.
    Symmetrize {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: usize,
    },
    /// Union-bound construction on K_n^(r) from relabeled copies of a target.
    ConstructUb {
        #[arg(short, long)]
        n: usize,
        /// Graph on n vertices whose relabelings hold the color classes.
        #[arg(long)]
        target: String,
        /// Pattern to verify the output against.
        #[arg(long)]
        pattern: Option<String>,
        #[command(flatten)]
        lists: ListArgs,
        #[arg(long)]
        max_retries: Option<u64>,
    },
    /// Local lemma construction on K_n^(r) by resampling.
    ConstructLll {
        #[arg(short, long)]
        n: usize,
        /// Target graph of the per-color homomorphisms.
        #[arg(long)]
        target: String,
        #[arg(long)]
        pattern: Option<String>,
        #[command(flatten)]
        lists: ListArgs,
        #[arg(long)]
        max_resamples: Option<u64>,
        /// Run even when the local lemma condition fails.
        #[arg(long)]
        best_effort: bool,
    },
    /// Local lemma condition e·p·(d+1) <= 1.
    Feasible {
        /// Host size; omitted, reports the largest feasible n.
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        target: String,
        /// Arbitrary host graph instead of K_n^(r).
        #[arg(long, conflicts_with = "n")]
        host: Option<String>,
    },
    /// Decide whether every L-coloring of the host contains a monochromatic pattern.
    Decide {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        lists: ListArgs,
        /// Write the instance as DIMACS CNF to this path instead of solving.
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
    /// Decide whether every L-coloring has a class of chromatic number above s.
    DecideFamily {
        #[arg(long)]
        host: String,
        #[arg(short, long)]
        s: usize,
        #[command(flatten)]
        lists: ListArgs,
    },
    /// Decision scan over K_n^(r) for n up to n-max, as CSV.
    Scan {
        #[arg(long)]
        n_max: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        pattern: String,
        /// Random lists from 0..universe; constant lists otherwise.
        #[arg(long)]
        universe: Option<usize>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Output file; stdout by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form bounds.
    Bounds {
        #[command(subcommand)]
        kind: BoundsCommand,
    },
}

#[derive(Args)]
struct DensityArgs {
    /// Turán density π(H) in [0, 1).
    #[arg(long)]
    pi: f64,
    /// Mark π as read from an exact table up to this n.
    #[arg(long)]
    pi_table_n: Option<usize>,
}

impl DensityArgs {
    fn input(&self) -> DensityInput {
        match self.pi_table_n {
            Some(n) => DensityInput::from_table(self.pi, n),
            None => DensityInput::exact(self.pi),
        }
    }
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// c_r (1 - π)^(-k/(r-1)).
    Exponential {
        #[command(flatten)]
        pi: DensityArgs,
        #[arg(short, long, default_value_t = 2)]
        r: usize,
        #[arg(short, long)]
        k: usize,
    },
    /// Chromatic lower and density upper bound, from a pattern or explicit χ and m.
    Chromatic {
        #[command(flatten)]
        pi: DensityArgs,
        #[arg(short, long)]
        k: usize,
        #[arg(long, conflicts_with_all = ["chi", "m", "r"])]
        pattern: Option<String>,
        #[arg(long)]
        chi: Option<usize>,
        /// m(H) as a fraction, e.g. 5/2.
        #[arg(long)]
        m: Option<String>,
        #[arg(short, long, default_value_t = 2)]
        r: usize,
    },
    /// s^k/e and s^k + 1 for the chromatic family.
    Family {
        #[arg(short, long)]
        s: usize,
        #[arg(short, long)]
        k: usize,
    },
    /// (1 - π)^(-k) for the size and degree variants.
    SizeDegree {
        #[command(flatten)]
        pi: DensityArgs,
        #[arg(short, long)]
        k: usize,
    },
}

/// Successful run outcome: whether a budget ran out.
enum Status {
    Done,
    Exhausted,
}

fn load_graph(arg: &str) -> anyhow::Result<Hypergraph> {
    if arg == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(Hypergraph::parse_text(&text)?);
    }
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return Ok(Hypergraph::parse_text(&text)?);
    }
    Hypergraph::builtin(arg).with_context(|| format!("{arg:?} is neither a file nor a built-in graph"))
}

fn parse_ratio(text: &str) -> anyhow::Result<Ratio<i64>> {
    let (num, den) = text.split_once('/').unwrap_or((text, "1"));
    let num: i64 = num.trim().parse().with_context(|| format!("bad fraction {text:?}"))?;
    let den: i64 = den.trim().parse().with_context(|| format!("bad fraction {text:?}"))?;
    if den == 0 {
        bail!("zero denominator in {text:?}");
    }
    Ok(Ratio::new(num, den))
}

fn print_json(value: &serde_json::Value) -> io::Result<()> {
    outln!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
    Ok(())
}

fn coloring_json(coloring: &Coloring) -> serde_json::Value {
    serde_json::to_value(coloring).expect("coloring serializes")
}

fn print_coloring(coloring: &Coloring) -> io::Result<()> {
    let mut out = io::stdout().lock();
    for (edge, color) in coloring.iter() {
        writeln!(out, "  {edge} -> {color}")?;
    }
    Ok(())
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Ramsey => "ramsey",
        Verdict::NotRamsey => "not_ramsey",
        Verdict::Unknown => "unknown",
    }
}

fn report_decision(out: &DecisionOutcome, json: bool) -> io::Result<Status> {
    if json {
        print_json(&serde_json::to_value(out).expect("outcome serializes"))?;
    } else {
        outln!("verdict: {}", verdict_name(out.verdict));
        outln!(
            "nodes: {}  exhausted: {}  ms: {}",
            out.nodes_explored,
            out.exhausted,
            out.elapsed_ms
        );
        if let Some(cert) = &out.certificate {
            outln!("certificate:");
            print_coloring(cert)?;
        }
    }
    Ok(match out.verdict {
        Verdict::Unknown => Status::Exhausted,
        _ => Status::Done,
    })
}

fn report_bound(report: &BoundReport, json: bool) -> io::Result<()> {
    if json {
        return print_json(&serde_json::to_value(report).expect("report serializes"));
    }
    let inputs: Vec<String> = report.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    outln!("{:?} ({})", report.kind, inputs.join(", "));
    if let Some(c) = report.c_r {
        outln!("c_r: {c}");
    }
    if let Some(lo) = report.lower {
        outln!("lower: {lo} (integer {})", report.integer_lower.unwrap_or(0));
    }
    if let Some(up) = report.upper {
        outln!("upper: {up}");
    }
    if let Some(base) = report.growth_base {
        outln!("growth base: {base}");
    }
    for caveat in &report.caveats {
        outln!("note: {caveat}");
    }
    Ok(())
}

fn verify_against(pattern: Option<&str>, host: &Hypergraph, coloring: &Coloring) -> anyhow::Result<Option<bool>> {
    let Some(name) = pattern else { return Ok(None) };
    let pattern = load_graph(name)?;
    Ok(Some(verify_coloring(host, coloring, &pattern)?.is_none()))
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let g = &cli.global;
    let budget = g.budget();
    match cli.command {
        Command::Turan { n, pattern, mode } => {
            let pattern = load_graph(&pattern)?;
            let res = match extremal::turan_number(n, &pattern, mode.into(), budget) {
                Err(Error::BudgetExceeded { nodes }) => {
                    eprintln!("budget exhausted after {nodes} nodes");
                    return Ok(Status::Exhausted);
                }
                other => other?,
            };
            if g.json {
                print_json(&res.to_json())?;
            } else {
                outln!(
                    "ex({n}) = {}  nodes: {}  ms: {}",
                    res.value,
                    res.nodes_explored,
                    res.elapsed_ms
                );
                out!("{}", res.witness.to_text());
            }
        }
        Command::Density { pattern, n_max } => {
            let pattern = load_graph(&pattern)?;
            let est = extremal::density_estimate(&pattern, n_max, budget)?;
            if g.json {
                print_json(&serde_json::to_value(&est)?)?;
            } else {
                for e in &est.entries {
                    outln!("n={:<3} ex={:<5} ratio={:.6}", e.n, e.ex, e.ratio);
                }
                if est.truncated {
                    outln!("truncated: budget exhausted");
                }
            }
            if est.truncated {
                return Ok(Status::Exhausted);
            }
        }
        Command::Mparam { pattern } => {
            let m = extremal::m_parameter(&load_graph(&pattern)?)?;
            if g.json {
                print_json(&json!({ "m": m.to_string(), "value": *m.numer() as f64 / *m.denom() as f64 }))?;
            } else {
                outln!("m = {m}");
            }
        }
        Command::Chromatic { graph } => {
            let graph = load_graph(&graph)?;
            let chi = graph.weak_chromatic_number();
            let classes = graph.weak_coloring(chi).map(|p| p.parts);
            if g.json {
                print_json(&json!({ "chromatic_number": chi, "classes": classes }))?;
            } else {
                outln!("chromatic number: {chi}");
                if let Some(c) = classes {
                    outln!("classes: {c:?}");
                }
            }
        }
        Command::Partite { graph } => {
            let graph = load_graph(&graph)?;
            let parts = graph.r_partition().map(|p| p.parts);
            if g.json {
                print_json(&json!({ "r_partite": parts.is_some(), "classes": parts }))?;
            } else {
                match parts {
                    Some(p) => outln!("r-partite: yes, classes {p:?}"),
                    None => outln!("r-partite: no"),
                }
            }
        }
        Command::Symmetrize { graph, pattern, target } => {
            let trace = extremal::symmetrize(&load_graph(&graph)?, &load_graph(&pattern)?, target)?;
            if g.json {
                print_json(&trace.to_json())?;
            } else {
                for s in &trace.steps {
                    outln!(
                        "replace {} by a copy of {}: {} -> {} edges",
                        s.removed,
                        s.copied,
                        s.edges_before,
                        s.edges_after
                    );
                }
                outln!("status: {:?}", trace.status);
                out!("{}", trace.result.to_text());
            }
        }
        Command::ConstructUb {
            n,
            target,
            pattern,
            lists,
            max_retries,
        } => {
            let target = load_graph(&target)?;
            let host = Hypergraph::complete(target.r(), n)?;
            let lists = lists.build(&host, g.seed)?;
            let out = construct::union_bound_construct(&lists, &target, g.seed, max_retries)?;
            let verified = verify_against(pattern.as_deref(), &host, &out.coloring)?;
            if g.json {
                print_json(&json!({
                    "attempts": out.attempts,
                    "seed": out.seed,
                    "generator": out.generator,
                    "permutations": out.permutations,
                    "coloring": coloring_json(&out.coloring),
                    "pattern_free": verified,
                }))?;
            } else {
                outln!(
                    "succeeded after {} attempt(s), seed {} ({})",
                    out.attempts,
                    out.seed,
                    out.generator
                );
                if let Some(ok) = verified {
                    outln!("pattern-free: {ok}");
                }
                print_coloring(&out.coloring)?;
            }
        }
        Command::ConstructLll {
            n,
            target,
            pattern,
            lists,
            max_resamples,
            best_effort,
        } => {
            let target = load_graph(&target)?;
            let host = Hypergraph::complete(target.r(), n)?;
            let lists = lists.build(&host, g.seed)?;
            let options = LllOptions {
                max_resamples,
                best_effort,
            };
            let out = construct::lll_construct(&lists, &target, g.seed, options)?;
            let verified = verify_against(pattern.as_deref(), &host, &out.coloring)?;
            if g.json {
                let maps: serde_json::Map<String, serde_json::Value> = out
                    .system
                    .maps
                    .iter()
                    .map(|(c, m)| (c.to_string(), serde_json::to_value(m).expect("map serializes")))
                    .collect();
                print_json(&json!({
                    "resamples": out.resamples,
                    "seed": out.seed,
                    "generator": out.generator,
                    "feasibility": out.feasibility,
                    "maps": maps,
                    "coloring": coloring_json(&out.coloring),
                    "pattern_free": verified,
                }))?;
            } else {
                outln!("resamples: {}, seed {} ({})", out.resamples, out.seed, out.generator);
                outln!(
                    "condition value: {} (feasible: {})",
                    out.feasibility.condition_value,
                    out.feasibility.feasible
                );
                if let Some(ok) = verified {
                    outln!("pattern-free: {ok}");
                }
                print_coloring(&out.coloring)?;
            }
        }
        Command::Feasible { n, k, target, host } => {
            let target = load_graph(&target)?;
            let report = match (n, host) {
                (_, Some(host)) => bounds::lll_host_feasibility(&load_graph(&host)?, k, &target)?,
                (Some(n), None) => construct::lll_feasibility(n, target.r(), k, &target)?,
                (None, None) => {
                    // feasibility is monotone in n: double, then bisect
                    let check = |n: usize| construct::lll_feasibility(n, target.r(), k, &target);
                    let (mut lo, mut hi) = (target.r(), target.r());
                    while check(hi)?.feasible {
                        lo = hi;
                        hi *= 2;
                    }
                    let best = if check(lo)?.feasible {
                        while hi - lo > 1 {
                            let mid = lo + (hi - lo) / 2;
                            if check(mid)?.feasible {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        Some(check(lo)?)
                    } else {
                        None
                    };
                    let largest = best.as_ref().map(|r| r.n);
                    if g.json {
                        print_json(&json!({ "k": k, "largest_feasible_n": largest, "report": best }))?;
                    } else {
                        match largest {
                            Some(n) => outln!("largest feasible n for k={k}: {n}"),
                            None => outln!("infeasible already at n={}", target.r()),
                        }
                    }
                    return Ok(Status::Done);
                }
            };
            if g.json {
                print_json(&serde_json::to_value(&report)?)?;
            } else {
                outln!(
                    "n={} k={} p={} d={} condition={} feasible={}",
                    report.n,
                    report.k,
                    report.p,
                    report.d,
                    report.condition_value,
                    report.feasible
                );
            }
        }
        Command::Decide {
            host,
            pattern,
            lists,
            cnf,
        } => {
            let host = load_graph(&host)?;
            let pattern = load_graph(&pattern)?;
            let lists = lists.build(&host, g.seed)?;
            if let Some(path) = cnf {
                let text = decide::to_dimacs(&lists, &pattern)?;
                if path.as_os_str() == "-" {
                    io::stdout().write_all(text.as_bytes())?;
                } else {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                }
                return Ok(Status::Done);
            }
            let out = decide::is_list_ramsey(&host, &lists, &pattern, budget)?;
            return Ok(report_decision(&out, g.json)?);
        }
        Command::DecideFamily { host, s, lists } => {
            let host = load_graph(&host)?;
            let lists = lists.build(&host, g.seed)?;
            let out = decide::is_family_ramsey(&host, &lists, s, budget)?;
            return Ok(report_decision(&out, g.json)?);
        }
        Command::Scan {
            n_max,
            k,
            pattern,
            universe,
            trials,
            out,
        } => {
            let pattern = load_graph(&pattern)?;
            let strategy = match universe {
                Some(universe) => ListStrategy::SeededRandom { universe },
                None => ListStrategy::Constant,
            };
            let cells = decide::scan_not_ramsey(n_max, k, &pattern, strategy, trials, g.seed, budget)?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    decide::write_scan_csv(&cells, file)?;
                }
                None => {
                    let mut buf = Vec::new();
                    decide::write_scan_csv(&cells, &mut buf)?;
                    io::stdout().write_all(&buf)?;
                }
            }
            if cells.iter().any(|c| c.verdict == Verdict::Unknown) {
                return Ok(Status::Exhausted);
            }
        }
        Command::Bounds { kind } => {
            let report = match kind {
                BoundsCommand::Exponential { pi, r, k } => bounds::exponential_lower_bound(pi.input(), r, k)?,
                BoundsCommand::Chromatic {
                    pi,
                    k,
                    pattern,
                    chi,
                    m,
                    r,
                } => match pattern {
                    Some(p) => bounds::chromatic_density_bounds_for(&load_graph(&p)?, pi.input(), k)?,
                    None => {
                        let (Some(chi), Some(m)) = (chi, m) else {
                            bail!("give --pattern or both --chi and --m")
                        };
                        bounds::chromatic_density_bounds(chi, parse_ratio(&m)?, pi.input(), r, k)?
                    }
                },
                BoundsCommand::Family { s, k } => bounds::family_bounds(s, k)?,
                BoundsCommand::SizeDegree { pi, k } => bounds::size_degree_lower_bounds(pi.input(), k)?,
            };
            report_bound(&report, g.json)?;
        }
    }
    Ok(Status::Done)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Exhausted) => ExitCode::from(2),
        Err(e) => {
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            {
                return ExitCode::SUCCESS;
            }
            if let Some(Error::BudgetExceeded { nodes }) = e.downcast_ref::<Error>() {
                eprintln!("budget exhausted after {nodes} nodes");
                return ExitCode::from(2);
            }
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
