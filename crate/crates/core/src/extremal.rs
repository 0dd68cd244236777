//! Exact small-n Turán numbers (copy-free and homomorphism-free), density
//! tables, the m(H) density parameter, and Zykov symmetrization.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, r_subsets, Edge, EdgeSet, Hypergraph, Vertex};
use crate::morphism::{copy_through, hom_through, is_hom_free};
use crate::search::{in_pool, Budget, Meter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreenessMode {
    /// No subgraph copy of the pattern.
    CopyFree,
    /// No homomorphism from the pattern.
    HomFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranResult {
    pub n: usize,
    pub mode: FreenessMode,
    pub value: usize,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
struct TuranReport {
    n: usize,
    r: usize,
    mode: FreenessMode,
    value: usize,
    witness_edges: Vec<Vec<Vertex>>,
    nodes_explored: u64,
    elapsed_ms: u64,
}

impl TuranResult {
    /// `{n, r, mode, value, witness_edges, nodes_explored, elapsed_ms}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TuranReport {
            n: self.n,
            r: self.witness.r(),
            mode: self.mode,
            value: self.value,
            witness_edges: self.witness.edge_list(),
            nodes_explored: self.nodes_explored,
            elapsed_ms: self.elapsed_ms,
        })
        .expect("report serializes")
    }
}

/// Maximum edge count of an `n`-vertex r-graph avoiding `pattern` in the
/// given mode, by include/exclude branch-and-bound over the C(n, r)
/// candidate edges in colex order.
///
/// The bound is seeded with the greedy solution. A branch is cut when the
/// current edges plus all remaining candidates cannot beat the incumbent,
/// and an edge is only included if no violation passes through it. Run
/// sequentially, the witness is the first optimum in canonical order.
pub fn turan_number(n: usize, pattern: &Hypergraph, mode: FreenessMode, budget: Budget) -> Result<TuranResult> {
    let r = pattern.r();
    if pattern.edge_count() == 0 {
        return Err(Error::EdgelessPattern);
    }
    if n < r {
        return Err(Error::Precondition(format!("need n >= r, got n = {n}, r = {r}")));
    }
    let candidates = r_subsets(n, r);
    let meter = Meter::new(budget);
    let kernel = Kernel {
        pattern,
        mode,
        candidates: &candidates,
        n,
        r,
    };

    let greedy = kernel.greedy();
    let shared = AtomicUsize::new(greedy.len());
    let threads = meter.threads();

    let found = if threads <= 1 {
        let mut task = Task::new(&kernel, &shared, &meter);
        task.run(0).map(|_| task.best)
    } else {
        in_pool(threads, || kernel.parallel(&shared, &meter, threads))
    };
    let best = found.map_err(|_| Error::BudgetExceeded { nodes: meter.nodes() })?;

    let chosen = match best {
        Some(ix) if ix.len() > greedy.len() => ix,
        _ => greedy,
    };
    let witness = Hypergraph::from_edges(r, n, chosen.iter().map(|&i| &candidates[i]))?;
    Ok(TuranResult {
        n,
        mode,
        value: witness.edge_count(),
        witness,
        nodes_explored: meter.nodes(),
        elapsed_ms: meter.elapsed_ms(),
    })
}

struct Kernel<'a> {
    pattern: &'a Hypergraph,
    mode: FreenessMode,
    candidates: &'a [Vec<Vertex>],
    n: usize,
    r: usize,
}

impl Kernel<'_> {
    fn violates(&self, graph: &EdgeSet, edge: &[Vertex]) -> bool {
        match self.mode {
            FreenessMode::CopyFree => copy_through(graph, self.pattern, edge).is_some(),
            FreenessMode::HomFree => hom_through(graph, self.pattern, edge).is_some(),
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut graph = EdgeSet::new(self.r, self.n);
        let mut chosen = Vec::new();
        for (i, e) in self.candidates.iter().enumerate() {
            graph.insert(e);
            if self.violates(&graph, e) {
                graph.remove(e);
            } else {
                chosen.push(i);
            }
        }
        chosen
    }

    /// Splits on the first few include/exclude decisions and runs the
    /// subtrees on the pool. Subtrees share the incumbent value.
    fn parallel(&self, shared: &AtomicUsize, meter: &Meter, threads: usize) -> Result<Option<Vec<usize>>, ()> {
        let depth = self
            .candidates
            .len()
            .min((threads * 8).next_power_of_two().trailing_zeros() as usize);
        let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
        for i in 0..depth {
            let mut next = Vec::new();
            for prefix in prefixes {
                let mut graph = EdgeSet::new(self.r, self.n);
                for &j in &prefix {
                    graph.insert(&self.candidates[j]);
                }
                graph.insert(&self.candidates[i]);
                if !self.violates(&graph, &self.candidates[i]) {
                    let mut with = prefix.clone();
                    with.push(i);
                    next.push(with);
                }
                next.push(prefix);
            }
            prefixes = next;
        }
        let results: Vec<Result<Option<Vec<usize>>, ()>> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut task = Task::new(self, shared, meter);
                for &j in prefix {
                    task.graph.insert(&self.candidates[j]);
                    task.chosen.push(j);
                }
                task.run(depth).map(|_| task.best)
            })
            .collect();
        let mut best: Option<Vec<usize>> = None;
        for r in results {
            if let Some(found) = r? {
                if best.as_ref().is_none_or(|b| found.len() > b.len()) {
                    best = Some(found);
                }
            }
        }
        Ok(best)
    }
}

struct Task<'a, 'k> {
    kernel: &'a Kernel<'k>,
    shared: &'a AtomicUsize,
    meter: &'a Meter,
    graph: EdgeSet,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
}

impl<'a, 'k> Task<'a, 'k> {
    fn new(kernel: &'a Kernel<'k>, shared: &'a AtomicUsize, meter: &'a Meter) -> Self {
        Task {
            kernel,
            shared,
            meter,
            graph: EdgeSet::new(kernel.r, kernel.n),
            chosen: Vec::new(),
            best: None,
        }
    }

    fn run(&mut self, i: usize) -> Result<(), ()> {
        if !self.meter.tick() {
            return Err(());
        }
        let m = self.kernel.candidates.len();
        let current = self.chosen.len();
        if current + (m - i) <= self.shared.load(Ordering::Relaxed) {
            return Ok(());
        }
        if i == m {
            self.shared.fetch_max(current, Ordering::Relaxed);
            if self.best.as_ref().is_none_or(|b| current > b.len()) {
                self.best = Some(self.chosen.clone());
            }
            return Ok(());
        }
        let edge = &self.kernel.candidates[i];
        self.graph.insert(edge);
        if !self.kernel.violates(&self.graph, edge) {
            self.chosen.push(i);
            let res = self.run(i + 1);
            self.chosen.pop();
            if res.is_err() {
                self.graph.remove(edge);
                return res;
            }
        }
        self.graph.remove(edge);
        self.run(i + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub n: usize,
    pub ex: usize,
    pub ratio: f64,
}

/// Table of `ex(n, H) / C(n, r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub entries: Vec<DensityEntry>,
    /// Set when the budget ran out before `n_max`.
    pub truncated: bool,
    pub non_increasing: bool,
}

impl DensityEstimate {
    /// The last ratio: an upper estimate of the Turán density.
    pub fn upper_estimate(&self) -> Option<f64> {
        self.entries.last().map(|e| e.ratio)
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].ratio < w[0].ratio)
    }
}

/// Copy-free density table for `max(r, v(H)) <= n <= n_max`; below v(H)
/// every graph is H-free and the ratio is trivially 1. The budget applies
/// per cell; the first exhausted cell truncates the table.
pub fn density_estimate(pattern: &Hypergraph, n_max: usize, budget: Budget) -> Result<DensityEstimate> {
    let start = pattern.r().max(pattern.n());
    let mut entries = Vec::new();
    let mut truncated = false;
    for n in start..=n_max {
        match turan_number(n, pattern, FreenessMode::CopyFree, budget) {
            Ok(res) => entries.push(DensityEntry {
                n,
                ex: res.value,
                ratio: res.value as f64 / binomial(n, pattern.r()) as f64,
            }),
            Err(Error::BudgetExceeded { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    // ex(n)/C(n,r) <= ex(n-1)/C(n-1,r) exactly: ex(n)*C(n-1,r) <= ex(n-1)*C(n,r)
    let r = pattern.r();
    let non_increasing = entries
        .windows(2)
        .all(|w| w[1].ex as u128 * binomial(w[0].n, r) <= w[0].ex as u128 * binomial(w[1].n, r));
    Ok(DensityEstimate {
        entries,
        truncated,
        non_increasing,
    })
}

/// Largest edge count this routine will enumerate subsets of.
pub const M_PARAMETER_MAX_EDGES: usize = 24;

/// max over subgraphs H' with e(H') >= 2 of (e(H') - 1) / (v(H') - r), where
/// v(H') counts vertices incident to H'.
pub fn m_parameter(pattern: &Hypergraph) -> Result<Ratio<i64>> {
    let edges: Vec<&Edge> = pattern.edges().collect();
    let m = edges.len();
    if m < 2 {
        return Err(Error::TooFewEdges(m));
    }
    if m > M_PARAMETER_MAX_EDGES {
        return Err(Error::InvalidArgument(format!(
            "m(H) enumerates edge subsets; {m} edges exceeds the limit of {M_PARAMETER_MAX_EDGES}"
        )));
    }
    let r = pattern.r() as i64;
    let masks: Vec<Vec<bool>> = edges
        .iter()
        .map(|e| (0..pattern.n()).map(|v| e.contains(v)).collect())
        .collect();
    let mut best: Option<Ratio<i64>> = None;
    let mut covered = vec![0u32; pattern.n()];
    for subset in 1u32..(1 << m) {
        let size = subset.count_ones() as i64;
        if size < 2 {
            continue;
        }
        covered.iter_mut().for_each(|c| *c = 0);
        for (i, mask) in masks.iter().enumerate() {
            if subset >> i & 1 == 1 {
                for (v, &inside) in mask.iter().enumerate() {
                    covered[v] += inside as u32;
                }
            }
        }
        let vertices = covered.iter().filter(|&&c| c > 0).count() as i64;
        let value = Ratio::new(size - 1, vertices - r);
        if best.is_none_or(|b| value > b) {
            best = Some(value);
        }
    }
    Ok(best.expect("at least one subset of size 2"))
}

/// `ceil((density - eps) * n^(r-1) / (r-1)!)`, clamped at 0.
pub fn degree_target(density: f64, eps: f64, n: usize, r: usize) -> usize {
    let factorial: f64 = (1..r).map(|i| i as f64).product();
    let raw = (density - eps) * (n as f64).powi(r as i32 - 1) / factorial;
    if raw <= 0.0 {
        0
    } else {
        raw.ceil() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetrizeStatus {
    /// Minimum degree reached the target.
    Reached,
    /// A duplication step would not increase the edge count.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizeStep {
    pub removed: Vertex,
    pub copied: Vertex,
    pub edges_before: usize,
    pub edges_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizationTrace {
    pub steps: Vec<SymmetrizeStep>,
    pub status: SymmetrizeStatus,
    pub result: Hypergraph,
    pub target_min_degree: usize,
}

/// Replaces low-degree vertices by clones of a maximum-degree vertex while
/// this strictly increases the edge count.
///
/// Each round picks the lowest-degree vertex `v` (smallest id on ties); if
/// its degree is below the target, `u` is the maximum-degree vertex other
/// than `v` (smallest id on ties) and `v` is replaced by a copy of `u`.
pub fn symmetrize(g: &Hypergraph, pattern: &Hypergraph, target_min_degree: usize) -> Result<SymmetrizationTrace> {
    if !is_hom_free(g, pattern)? {
        return Err(Error::Precondition(
            "starting graph admits a homomorphism from the pattern".into(),
        ));
    }
    let mut current = g.clone();
    let mut steps = Vec::new();
    let status = loop {
        let degrees = current.degrees();
        let Some((v, &low)) = degrees.iter().enumerate().min_by_key(|&(i, &d)| (d, i)) else {
            break SymmetrizeStatus::Reached;
        };
        if low >= target_min_degree {
            break SymmetrizeStatus::Reached;
        }
        let Some((u, _)) = degrees
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        else {
            break SymmetrizeStatus::Stuck;
        };
        let next = current.duplicate_vertex(v, u)?;
        if next.edge_count() <= current.edge_count() {
            break SymmetrizeStatus::Stuck;
        }
        if !is_hom_free(&next, pattern)? {
            return Err(Error::Precondition(format!(
                "duplicating vertex {u} over {v} created a homomorphic image of the pattern"
            )));
        }
        steps.push(SymmetrizeStep {
            removed: v,
            copied: u,
            edges_before: current.edge_count(),
            edges_after: next.edge_count(),
        });
        current = next;
    };
    Ok(SymmetrizationTrace {
        steps,
        status,
        result: current,
        target_min_degree,
    })
}

#[derive(Serialize)]
struct TraceReport<'a> {
    status: SymmetrizeStatus,
    target_min_degree: usize,
    steps: &'a [SymmetrizeStep],
    final_edges: Vec<Vec<Vertex>>,
    final_min_degree: Option<usize>,
}

impl SymmetrizationTrace {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TraceReport {
            status: self.status,
            target_min_degree: self.target_min_degree,
            steps: &self.steps,
            final_edges: self.result.edge_list(),
            final_min_degree: self.result.min_degree().ok(),
        })
        .expect("trace serializes")
    }
}
