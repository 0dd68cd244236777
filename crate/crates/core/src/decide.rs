//! Exact decision of the list-Ramsey property for concrete instances.
//!
//! Given a host, a list assignment `L` and a pattern `H` (or the family of
//! graphs with chromatic number above `s`), the search either returns an
//! L-coloring with no monochromatic member (a certificate that the host is
//! not Ramsey) or exhausts all L-colorings.
//!
//! Edges are colored in colex order, colors tried in ascending order. After
//! each assignment only the touched color class is checked, and only for
//! structures through the new edge: every monochromatic copy has a last
//! colored edge, so nothing is missed.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, EdgeSet, Hypergraph, Vertex};
use crate::lists::{Color, Coloring, ListAssignment};
use crate::morphism::{copy_edge_sets, copy_through};
use crate::rng::derive_seed;
use crate::search::{in_pool, Budget, Meter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every L-coloring contains a monochromatic forbidden structure.
    Ramsey,
    /// A certificate coloring avoids it.
    NotRamsey,
    /// The budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    pub certificate: Option<Coloring>,
    pub nodes_explored: u64,
    pub exhausted: bool,
    pub elapsed_ms: u64,
}

/// What a single color class must avoid.
enum Forbidden<'a> {
    Copy(&'a Hypergraph),
    /// Chromatic number above `s`.
    Chromatic(usize),
}

impl Forbidden<'_> {
    fn hit(&self, class: &EdgeSet, edge: &[Vertex]) -> bool {
        match self {
            Forbidden::Copy(pattern) => copy_through(class, pattern, edge).is_some(),
            Forbidden::Chromatic(s) => !component_colorable(class, edge[0], *s),
        }
    }
}

/// Proper `s`-colorability of the connected component of `start`.
fn component_colorable(class: &EdgeSet, start: Vertex, s: usize) -> bool {
    let n = class.n();
    let mut seen = vec![false; n];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for w in class.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    let mut color = vec![usize::MAX; n];
    fn go(i: usize, used: usize, s: usize, order: &[Vertex], class: &EdgeSet, color: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for c in 0..s.min(used + 1) {
            if class.neighbours(v).all(|w| color[w] != c) {
                color[v] = c;
                if go(i + 1, used.max(c + 1), s, order, class, color) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(0, 0, s, &order, class, &mut color)
}

struct Instance<'a> {
    forbidden: Forbidden<'a>,
    r: usize,
    n: usize,
    universe: Vec<Color>,
    edges: Vec<Vec<Vertex>>,
    lists: Vec<Vec<usize>>,
}

enum Stop {
    Budget,
    Cancelled,
}

struct Walker<'a, 'i> {
    inst: &'a Instance<'i>,
    meter: &'a Meter,
    cancel: Option<&'a AtomicBool>,
    classes: Vec<EdgeSet>,
    assigned: Vec<usize>,
}

impl<'a, 'i> Walker<'a, 'i> {
    fn new(inst: &'a Instance<'i>, meter: &'a Meter, cancel: Option<&'a AtomicBool>) -> Self {
        Walker {
            inst,
            meter,
            cancel,
            classes: (0..inst.universe.len()).map(|_| EdgeSet::new(inst.r, inst.n)).collect(),
            assigned: Vec::with_capacity(inst.edges.len()),
        }
    }

    /// Tries color `c` on the next edge; keeps it only if nothing is hit.
    fn push(&mut self, c: usize) -> bool {
        let i = self.assigned.len();
        let edge = &self.inst.edges[i];
        self.classes[c].insert(edge);
        if self.inst.forbidden.hit(&self.classes[c], edge) {
            self.classes[c].remove(edge);
            return false;
        }
        self.assigned.push(c);
        true
    }

    fn pop(&mut self) {
        let c = self.assigned.pop().expect("something to undo");
        let edge = &self.inst.edges[self.assigned.len()];
        self.classes[c].remove(edge);
    }

    /// True once a full coloring is reached (left in `assigned`).
    fn run(&mut self) -> Result<bool, Stop> {
        if !self.meter.tick() {
            return Err(Stop::Budget);
        }
        if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(Stop::Cancelled);
        }
        let i = self.assigned.len();
        if i == self.inst.edges.len() {
            return Ok(true);
        }
        for idx in 0..self.inst.lists[i].len() {
            let c = self.inst.lists[i][idx];
            if self.push(c) {
                if self.run()? {
                    return Ok(true);
                }
                self.pop();
            }
        }
        Ok(false)
    }

    fn certificate(&self) -> Coloring {
        self.inst
            .edges
            .iter()
            .zip(&self.assigned)
            .map(|(e, &c)| (Edge::from_sorted(e.clone()), self.inst.universe[c]))
            .collect()
    }
}

impl<'i> Instance<'i> {
    fn new(lists: &ListAssignment, forbidden: Forbidden<'i>) -> Instance<'i> {
        let universe = lists.universe();
        let index = |c: &Color| universe.binary_search(c).expect("color is in the universe");
        let (edges, dense) = lists
            .iter()
            .map(|(e, l)| (e.vertices().to_vec(), l.iter().map(index).collect()))
            .unzip();
        Instance {
            forbidden,
            r: lists.host().r(),
            n: lists.host().n(),
            universe,
            edges,
            lists: dense,
        }
    }

    fn decide(&self, budget: Budget) -> DecisionOutcome {
        let meter = Meter::new(budget);
        let threads = meter.threads();
        let (verdict, certificate) = if threads <= 1 {
            let mut walker = Walker::new(self, &meter, None);
            match walker.run() {
                Ok(true) => (Verdict::NotRamsey, Some(walker.certificate())),
                Ok(false) => (Verdict::Ramsey, None),
                Err(_) => (Verdict::Unknown, None),
            }
        } else {
            in_pool(threads, || self.decide_parallel(&meter, threads))
        };
        DecisionOutcome {
            verdict,
            certificate,
            nodes_explored: meter.nodes(),
            exhausted: verdict == Verdict::Ramsey,
            elapsed_ms: meter.elapsed_ms(),
        }
    }

    /// Expands the first levels into prefixes and searches them on the
    /// pool. The first certificate found cancels the other subtrees.
    fn decide_parallel(&self, meter: &Meter, threads: usize) -> (Verdict, Option<Coloring>) {
        let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
        let mut depth = 0;
        while depth < self.edges.len() && prefixes.len() < threads * 8 {
            let mut next = Vec::new();
            for prefix in &prefixes {
                let mut walker = Walker::new(self, meter, None);
                for &c in prefix {
                    walker.push(c);
                }
                for &c in &self.lists[depth] {
                    if walker.push(c) {
                        let mut extended = prefix.clone();
                        extended.push(c);
                        next.push(extended);
                        walker.pop();
                    }
                }
            }
            prefixes = next;
            depth += 1;
        }
        let cancel = AtomicBool::new(false);
        let results: Vec<(Result<bool, Stop>, Option<Coloring>)> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut walker = Walker::new(self, meter, Some(&cancel));
                for &c in prefix {
                    walker.push(c);
                }
                let res = walker.run();
                let cert = matches!(res, Ok(true)).then(|| {
                    cancel.store(true, Ordering::Relaxed);
                    walker.certificate()
                });
                (res, cert)
            })
            .collect();
        if let Some(cert) = results.iter().find_map(|(_, c)| c.clone()) {
            return (Verdict::NotRamsey, Some(cert));
        }
        if results
            .iter()
            .any(|(r, _)| matches!(r, Err(Stop::Budget) | Err(Stop::Cancelled)))
        {
            return (Verdict::Unknown, None);
        }
        (Verdict::Ramsey, None)
    }
}

fn check_instance(host: &Hypergraph, lists: &ListAssignment) -> Result<()> {
    if lists.host() != host {
        return Err(Error::InvalidLists("list assignment is for a different host".into()));
    }
    Ok(())
}

/// Is every L-coloring of `host` forced to contain a monochromatic `pattern`?
pub fn is_list_ramsey(
    host: &Hypergraph,
    lists: &ListAssignment,
    pattern: &Hypergraph,
    budget: Budget,
) -> Result<DecisionOutcome> {
    check_instance(host, lists)?;
    if pattern.r() != host.r() {
        return Err(Error::UniformityMismatch {
            pattern: pattern.r(),
            host: host.r(),
        });
    }
    if pattern.edge_count() == 0 {
        return Err(Error::EdgelessPattern);
    }
    Ok(Instance::new(lists, Forbidden::Copy(pattern)).decide(budget))
}

/// Is every L-coloring of the graph `host` forced to have a color class
/// with chromatic number greater than `s`?
pub fn is_family_ramsey(
    host: &Hypergraph,
    lists: &ListAssignment,
    s: usize,
    budget: Budget,
) -> Result<DecisionOutcome> {
    check_instance(host, lists)?;
    if host.r() != 2 {
        return Err(Error::InvalidArgument(
            "chromatic families are defined for graphs (r = 2)".into(),
        ));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    Ok(Instance::new(lists, Forbidden::Chromatic(s)).decide(budget))
}

/// True when every color class of `coloring` is properly `s`-colorable.
pub fn classes_colorable(host: &Hypergraph, coloring: &Coloring, s: usize) -> Result<bool> {
    coloring.check_covers(host)?;
    for edges in coloring.classes().values() {
        let class = host.spanning_subgraph(edges)?;
        if class.weak_coloring(s).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListStrategy {
    /// `{0, .., k-1}` on every edge; a single trial per size.
    Constant,
    /// Seeded uniform k-subsets of `0..universe`.
    SeededRandom { universe: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCell {
    pub n: usize,
    pub trial: usize,
    pub verdict: Verdict,
    pub nodes: u64,
    pub ms: u64,
}

/// Runs the decision procedure on K_n^(r) for `n = r..=n_max`.
///
/// A `not_ramsey` cell only says the tried lists admit a good coloring. It
/// is evidence, not proof, that no k-list assignment forces the pattern at
/// that size: the existential choice of lists is not exhausted.
pub fn scan_not_ramsey(
    n_max: usize,
    k: usize,
    pattern: &Hypergraph,
    strategy: ListStrategy,
    trials: usize,
    seed: u64,
    budget: Budget,
) -> Result<Vec<ScanCell>> {
    let r = pattern.r();
    let trials = match strategy {
        ListStrategy::Constant => 1,
        ListStrategy::SeededRandom { .. } => trials,
    };
    let mut cells = Vec::new();
    for n in r..=n_max {
        let host = Hypergraph::complete(r, n)?;
        for trial in 0..trials {
            let lists = match strategy {
                ListStrategy::Constant => ListAssignment::constant(host.clone(), k)?,
                ListStrategy::SeededRandom { universe } => {
                    let cell_seed = derive_seed(seed, (n * trials + trial) as u64);
                    ListAssignment::random(host.clone(), k, universe, cell_seed)?
                }
            };
            let start = Instant::now();
            let out = is_list_ramsey(&host, &lists, pattern, budget)?;
            cells.push(ScanCell {
                n,
                trial,
                verdict: out.verdict,
                nodes: out.nodes_explored,
                ms: start.elapsed().as_millis() as u64,
            });
        }
    }
    Ok(cells)
}

/// CSV with header `n,trial,verdict,nodes,ms`.
pub fn write_scan_csv<W: Write>(cells: &[ScanCell], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for cell in cells {
        writer
            .serialize(cell)
            .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(())
}

/// DIMACS CNF whose models are exactly the L-colorings of the host with no
/// monochromatic copy of `pattern`.
///
/// One variable per (edge, color in its list), numbered in colex edge order
/// and ascending color. Each edge gets an at-least-one clause and pairwise
/// at-most-one clauses; each copy of the pattern in the host and each color
/// common to all of its edges' lists gets a blocking clause.
pub fn to_dimacs(lists: &ListAssignment, pattern: &Hypergraph) -> Result<String> {
    let host = lists.host();
    let mut var = std::collections::BTreeMap::new();
    let mut comments = Vec::new();
    for (edge, list) in lists.iter() {
        for &c in list {
            let id = var.len() + 1;
            var.insert((edge.clone(), c), id);
            comments.push(format!("c var {id} edge {edge} color {c}"));
        }
    }
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for (edge, list) in lists.iter() {
        let ids: Vec<i64> = list.iter().map(|&c| var[&(edge.clone(), c)] as i64).collect();
        clauses.push(ids.clone());
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                clauses.push(vec![-a, -b]);
            }
        }
    }
    for copy in copy_edge_sets(host, pattern)? {
        let common: BTreeSet<Color> = copy
            .iter()
            .map(|e| lists.list(e).iter().copied().collect::<BTreeSet<_>>())
            .reduce(|a, b| &a & &b)
            .unwrap_or_default();
        for c in common {
            clauses.push(copy.iter().map(|e| -(var[&(e.clone(), c)] as i64)).collect());
        }
    }
    let mut out = String::from("c list coloring instance: satisfiable iff not list Ramsey\n");
    for line in comments {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("p cnf {} {}\n", var.len(), clauses.len()));
    for clause in clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    Ok(out)
}
