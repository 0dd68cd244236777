//! Uniform hypergraphs on dense vertex ids `0..n`.
//!
//! Edges are stored as strictly increasing vertex tuples and ordered
//! colexicographically (compare the largest vertex first). Every search in
//! this crate walks edges in that order, so "edge index" always means the
//! position in colex order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A sorted tuple of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Builds an edge from arbitrary-order vertices. Fails on repeats.
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Edge> {
        let mut v = vertices.into();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(format!("repeated vertex in {v:?}")));
        }
        Ok(Edge(v))
    }

    /// Caller guarantees `v` is strictly increasing.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Edge {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Edge(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> Vertex {
        *self.0.last().expect("edges are non-empty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .rev()
            .cmp(other.0.iter().rev())
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Edge {
    type Err = Error;

    /// Accepts `1,2,3`, optionally wrapped in `<...>`, `(...)` or `[...]`.
    fn from_str(s: &str) -> Result<Edge> {
        let trimmed = s
            .trim()
            .trim_start_matches(['<', '(', '['])
            .trim_end_matches(['>', ')', ']']);
        let vertices = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Vertex>()
                    .map_err(|_| Error::Parse(format!("bad edge key {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Edge::new(vertices)
    }
}

/// An assignment of every vertex to one of `t` classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub parts: Vec<usize>,
    pub t: usize,
}

impl VertexPartition {
    pub fn class_of(&self, v: Vertex) -> usize {
        self.parts[v]
    }

    /// True when no edge of `g` lies entirely inside one class.
    pub fn is_proper_for(&self, g: &Hypergraph) -> bool {
        g.edges().all(|e| {
            let c = self.parts[e.vertices()[0]];
            e.vertices().iter().any(|&v| self.parts[v] != c)
        })
    }

    /// True when every edge of `g` meets each of the `t` classes exactly once.
    pub fn is_rainbow_for(&self, g: &Hypergraph) -> bool {
        g.edges().all(|e| {
            let mut seen = vec![false; self.t];
            e.vertices()
                .iter()
                .all(|&v| !std::mem::replace(&mut seen[self.parts[v]], true))
        })
    }
}

/// An r-uniform hypergraph. Immutable once built; all mutators return a new value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn empty(r: usize, n: usize) -> Result<Hypergraph> {
        if r < 2 {
            return Err(Error::InvalidUniformity(r));
        }
        Ok(Hypergraph {
            r,
            n,
            edges: BTreeSet::new(),
        })
    }

    /// Builds a hypergraph from edge vertex lists. Duplicate edges collapse.
    pub fn from_edges<I, E>(r: usize, n: usize, edges: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut g = Hypergraph::empty(r, n)?;
        for e in edges {
            let e = Edge::new(e.as_ref().to_vec())?;
            g.check_edge(&e)?;
            g.edges.insert(e);
        }
        Ok(g)
    }

    fn check_edge(&self, e: &Edge) -> Result<()> {
        if e.len() != self.r {
            return Err(Error::InvalidEdge(format!(
                "edge {e} has {} vertices, expected {}",
                e.len(),
                self.r
            )));
        }
        if e.max_vertex() >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: e.max_vertex(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// K_n^{(r)}.
    pub fn complete(r: usize, n: usize) -> Result<Hypergraph> {
        let mut g = Hypergraph::empty(r, n)?;
        g.edges = r_subsets(n, r).into_iter().map(Edge::from_sorted).collect();
        Ok(g)
    }

    pub fn complete_graph(n: usize) -> Hypergraph {
        Hypergraph::complete(2, n).expect("r = 2 is valid")
    }

    pub fn cycle(n: usize) -> Result<Hypergraph> {
        if n < 3 {
            return Err(Error::Parse(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Hypergraph::from_edges(2, n, (0..n).map(|i| [i, (i + 1) % n]))
    }

    pub fn path(n: usize) -> Hypergraph {
        Hypergraph::from_edges(2, n, (1..n).map(|i| [i - 1, i])).expect("path edges are valid")
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Hypergraph {
        let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| [i, j]));
        Hypergraph::from_edges(2, a + b, edges).expect("bipartite edges are valid")
    }

    /// K_{⌊n/2⌋,⌈n/2⌉}: the complete spanning balanced bipartite graph.
    pub fn balanced_complete_bipartite(n: usize) -> Hypergraph {
        Hypergraph::complete_bipartite(n / 2, n - n / 2)
    }

    /// K_{1,leaves} with center 0.
    pub fn star(leaves: usize) -> Hypergraph {
        Hypergraph::complete_bipartite(1, leaves)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in colex order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_list(&self) -> Vec<Vec<Vertex>> {
        self.edges.iter().map(|e| e.0.clone()).collect()
    }

    /// Membership test; `vertices` may be in any order.
    pub fn has_edge(&self, vertices: &[Vertex]) -> bool {
        match Edge::new(vertices.to_vec()) {
            Ok(e) => self.edges.contains(&e),
            Err(_) => false,
        }
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() as u128 == binomial(self.n, self.r)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e.vertices() {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.degrees().into_iter().min().ok_or(Error::EmptyVertexSet)
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.degrees().into_iter().max().ok_or(Error::EmptyVertexSet)
    }

    /// Vertices incident to at least one edge.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| e.vertices().iter().copied()).collect()
    }

    /// Edges grouped by their largest vertex: the edges completed when a
    /// search assigns vertices in increasing order.
    fn edges_by_max_vertex(&self) -> Vec<Vec<&Edge>> {
        let mut by_max = vec![Vec::new(); self.n];
        for e in &self.edges {
            by_max[e.max_vertex()].push(e);
        }
        by_max
    }

    /// Smallest number of vertex classes such that no edge is monochromatic.
    ///
    /// Returns 0 for the empty vertex set and 1 for an edgeless graph.
    pub fn weak_chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        (1..=self.n)
            .find(|&t| self.weak_coloring(t).is_some())
            .expect("n classes always suffice")
    }

    /// A vertex partition into at most `t` classes with no monochromatic edge.
    pub fn weak_coloring(&self, t: usize) -> Option<VertexPartition> {
        let by_max = self.edges_by_max_vertex();
        let accept = |parts: &[usize], v: Vertex| {
            by_max[v]
                .iter()
                .all(|e| e.vertices().iter().any(|&w| parts[w] != parts[v]))
        };
        partition_search(self.n, t, &accept).map(|parts| VertexPartition { parts, t })
    }

    /// A partition into `r` classes meeting every edge exactly once each, if any.
    pub fn r_partition(&self) -> Option<VertexPartition> {
        let by_max = self.edges_by_max_vertex();
        let accept = |parts: &[usize], v: Vertex| {
            by_max[v].iter().all(|e| {
                let mut seen = 0u64;
                e.vertices().iter().all(|&w| {
                    let bit = 1u64 << parts[w];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
        };
        partition_search(self.n, self.r, &accept).map(|parts| VertexPartition { parts, t: self.r })
    }

    pub fn is_r_partite(&self) -> bool {
        self.r_partition().is_some()
    }

    /// Deletes `remove` and puts a clone of `copy_of` in its slot.
    ///
    /// The vertex count is unchanged: id `remove` is reused for the clone,
    /// whose edges are `(e \ {copy_of}) ∪ {remove}` for every surviving edge
    /// `e` through `copy_of`. Edges through `copy_of` are kept as they are.
    pub fn duplicate_vertex(&self, remove: Vertex, copy_of: Vertex) -> Result<Hypergraph> {
        self.check_vertex(remove)?;
        self.check_vertex(copy_of)?;
        if remove == copy_of {
            return Err(Error::InvalidArgument(format!(
                "cannot replace vertex {remove} by a copy of itself"
            )));
        }
        let surviving: Vec<&Edge> = self.edges.iter().filter(|e| !e.contains(remove)).collect();
        let mut edges: BTreeSet<Edge> = surviving.iter().map(|&e| e.clone()).collect();
        for e in surviving.into_iter().filter(|e| e.contains(copy_of)) {
            let image: Vec<Vertex> = e
                .vertices()
                .iter()
                .map(|&v| if v == copy_of { remove } else { v })
                .collect();
            edges.insert(Edge::new(image).expect("clone slot is fresh"));
        }
        Ok(Hypergraph {
            r: self.r,
            n: self.n,
            edges,
        })
    }

    /// The graph on `n - 1` vertices with `v` deleted; higher ids shift down.
    pub fn without_vertex(&self, v: Vertex) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        let relabel = |w: Vertex| if w > v { w - 1 } else { w };
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(v))
            .map(|e| Edge::from_sorted(e.vertices().iter().map(|&w| relabel(w)).collect()))
            .collect();
        Ok(Hypergraph {
            r: self.r,
            n: self.n - 1,
            edges,
        })
    }

    /// Subgraph on the same vertex set keeping the given edges of `self`.
    pub fn spanning_subgraph<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Result<Hypergraph> {
        let mut g = Hypergraph::empty(self.r, self.n)?;
        for e in edges {
            g.check_edge(e)?;
            g.edges.insert(e.clone());
        }
        Ok(g)
    }

    pub fn with_edge(&self, e: Edge) -> Result<Hypergraph> {
        self.check_edge(&e)?;
        let mut g = self.clone();
        g.edges.insert(e);
        Ok(g)
    }

    /// Text form: `r n` on the first line, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.r, self.n);
        for e in &self.edges {
            let line: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let nums = parse_numbers(header)?;
        let [r, n] = nums[..] else {
            return Err(Error::Parse(format!("header must be `r n`, got {header:?}")));
        };
        let edges = lines.map(parse_numbers).collect::<Result<Vec<_>>>()?;
        Hypergraph::from_edges(r, n, edges)
    }

    /// Resolves `K<t>`, `K<t>^(r)`, `C<t>`, `K<a>,<b>` and `P<t>`.
    pub fn builtin(name: &str) -> Result<Hypergraph> {
        let bad = || Error::Parse(format!("unknown graph name {name:?}"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let name = name.trim();
        if let Some(rest) = name.strip_prefix('K') {
            if let Some((t, r)) = rest.split_once('^') {
                let r = r.trim_start_matches('(').trim_end_matches(')');
                return Hypergraph::complete(num(r)?, num(t)?);
            }
            if let Some((a, b)) = rest.split_once(',') {
                return Ok(Hypergraph::complete_bipartite(num(a)?, num(b)?));
            }
            return Ok(Hypergraph::complete_graph(num(rest)?));
        }
        if let Some(rest) = name.strip_prefix('C') {
            return Hypergraph::cycle(num(rest)?);
        }
        if let Some(rest) = name.strip_prefix('P') {
            return Ok(Hypergraph::path(num(rest)?));
        }
        Err(bad())
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph on {} vertices, {} edges", self.r, self.n, self.edges.len())
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}

/// Backtracking over class assignments with vertex 0 in class 0 and each
/// new class id introduced in increasing vertex order. `accept(parts, v)`
/// checks constraints that become decidable once `v` is assigned.
fn partition_search(n: usize, t: usize, accept: &dyn Fn(&[usize], Vertex) -> bool) -> Option<Vec<usize>> {
    fn go(v: Vertex, used: usize, t: usize, parts: &mut Vec<usize>, accept: &dyn Fn(&[usize], Vertex) -> bool) -> bool {
        if v == parts.len() {
            return true;
        }
        for class in 0..t.min(used + 1) {
            parts[v] = class;
            if accept(parts, v) && go(v + 1, used.max(class + 1), t, parts, accept) {
                return true;
            }
        }
        false
    }
    if t == 0 {
        return (n == 0).then(Vec::new);
    }
    let mut parts = vec![0; n];
    go(0, 0, t, &mut parts, accept).then_some(parts)
}

/// All r-subsets of `0..n` in colex order.
pub fn r_subsets(n: usize, r: usize) -> Vec<Vec<Vertex>> {
    fn go(top: usize, r: usize, suffix: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if r == 0 {
            let mut e = suffix.clone();
            e.reverse();
            out.push(e);
            return;
        }
        for v in (r - 1)..top {
            suffix.push(v);
            go(v, r - 1, suffix, out);
            suffix.pop();
        }
    }
    // Recursing on the largest vertex first, in increasing order, yields colex.
    let mut out = Vec::new();
    go(n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A mutable edge store for search kernels: hash membership plus degrees,
/// with a dense adjacency matrix for graphs.
#[derive(Clone, Debug)]
pub(crate) struct EdgeSet {
    r: usize,
    n: usize,
    adjacency: Vec<bool>,
    members: HashSet<Vec<Vertex>>,
    degree: Vec<usize>,
}

impl EdgeSet {
    pub(crate) fn new(r: usize, n: usize) -> EdgeSet {
        EdgeSet {
            r,
            n,
            adjacency: if r == 2 { vec![false; n * n] } else { Vec::new() },
            members: HashSet::new(),
            degree: vec![0; n],
        }
    }

    pub(crate) fn from_graph(g: &Hypergraph) -> EdgeSet {
        let mut s = EdgeSet::new(g.r(), g.n());
        for e in g.edges() {
            s.insert(e.vertices());
        }
        s
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    /// `sorted` must be strictly increasing.
    pub(crate) fn contains(&self, sorted: &[Vertex]) -> bool {
        if self.r == 2 {
            self.adjacency[sorted[0] * self.n + sorted[1]]
        } else {
            self.members.contains(sorted)
        }
    }

    pub(crate) fn insert(&mut self, sorted: &[Vertex]) -> bool {
        if self.contains(sorted) {
            return false;
        }
        if self.r == 2 {
            let (a, b) = (sorted[0], sorted[1]);
            self.adjacency[a * self.n + b] = true;
            self.adjacency[b * self.n + a] = true;
        } else {
            self.members.insert(sorted.to_vec());
        }
        for &v in sorted {
            self.degree[v] += 1;
        }
        true
    }

    pub(crate) fn remove(&mut self, sorted: &[Vertex]) -> bool {
        if !self.contains(sorted) {
            return false;
        }
        if self.r == 2 {
            let (a, b) = (sorted[0], sorted[1]);
            self.adjacency[a * self.n + b] = false;
            self.adjacency[b * self.n + a] = false;
        } else {
            self.members.remove(sorted);
        }
        for &v in sorted {
            self.degree[v] -= 1;
        }
        true
    }

    /// Graph neighbours of `v`; only meaningful for r = 2.
    pub(crate) fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        debug_assert_eq!(self.r, 2);
        (0..self.n).filter(move |&w| self.adjacency[v * self.n + w])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_3() -> Hypergraph {
        Hypergraph::complete(3, 4).unwrap()
    }

    #[test]
    fn edges_are_canonical() {
        let g = Hypergraph::from_edges(2, 3, [[1, 0], [0, 1], [2, 1]]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge_list(), vec![vec![0, 1], vec![1, 2]]);
        assert!(g.has_edge(&[2, 1]));
        assert!(!g.has_edge(&[0, 2]));
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(
            Hypergraph::from_edges(2, 3, [[0, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::from_edges(2, 3, [[1, 1]]),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(
            Hypergraph::from_edges(3, 4, [[0, 1]]),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(Hypergraph::empty(1, 4), Err(Error::InvalidUniformity(1))));
    }

    #[test]
    fn colex_order() {
        assert_eq!(
            r_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        let k = Hypergraph::complete(3, 5).unwrap();
        assert_eq!(k.edge_list(), r_subsets(5, 3));
        assert_eq!(k.edge_count(), 10);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Hypergraph::complete_graph(4).degree(0).unwrap(), 3);
        assert_eq!(Hypergraph::empty(3, 5).unwrap().degree(2).unwrap(), 0);
        assert_eq!(Hypergraph::cycle(5).unwrap().degree(3).unwrap(), 2);
        assert!(matches!(
            Hypergraph::cycle(5).unwrap().degree(5),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(Hypergraph::complete_bipartite(2, 3).min_degree().unwrap(), 2);
        assert_eq!(k4_3().min_degree().unwrap(), 3);
        assert_eq!(Hypergraph::cycle(5).unwrap().min_degree().unwrap(), 2);
        assert!(matches!(
            Hypergraph::empty(2, 0).unwrap().min_degree(),
            Err(Error::EmptyVertexSet)
        ));
    }

    #[test]
    fn weak_chromatic_examples() {
        assert_eq!(Hypergraph::complete_graph(3).weak_chromatic_number(), 3);
        assert_eq!(k4_3().weak_chromatic_number(), 2);
        assert_eq!(Hypergraph::cycle(5).unwrap().weak_chromatic_number(), 3);
        assert_eq!(Hypergraph::empty(2, 4).unwrap().weak_chromatic_number(), 1);
        assert_eq!(Hypergraph::empty(2, 0).unwrap().weak_chromatic_number(), 0);
        let coloring = k4_3().weak_coloring(2).unwrap();
        assert!(coloring.is_proper_for(&k4_3()));
    }

    #[test]
    fn r_partite_examples() {
        let k33 = Hypergraph::complete_bipartite(3, 3);
        let witness = k33.r_partition().unwrap();
        assert!(witness.is_rainbow_for(&k33));
        assert!(!Hypergraph::cycle(5).unwrap().is_r_partite());
        assert!(!k4_3().is_r_partite());
        // a single 3-edge plus a pendant edge sharing two vertices is 3-partite
        let g = Hypergraph::from_edges(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let p = g.r_partition().unwrap();
        assert_eq!(p.class_of(2), p.class_of(3));
    }

    #[test]
    fn duplicate_vertex_triangle() {
        let g = Hypergraph::complete_graph(3).duplicate_vertex(2, 0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_list(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn duplicate_vertex_single_edge() {
        let g = Hypergraph::from_edges(2, 3, [[0, 1]]).unwrap();
        let h = g.duplicate_vertex(2, 0).unwrap();
        assert_eq!(h.edge_list(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn duplicate_vertex_c5_nonadjacent_pair_keeps_edge_count() {
        let c5 = Hypergraph::cycle(5).unwrap();
        let h = c5.duplicate_vertex(0, 2).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert_eq!(h.degrees(), vec![2, 2, 2, 3, 1]);
        // an adjacent pair loses the shared edge
        assert_eq!(c5.duplicate_vertex(0, 1).unwrap().edge_count(), 4);
    }

    #[test]
    fn duplicate_vertex_errors() {
        let g = Hypergraph::complete_graph(3);
        assert!(matches!(g.duplicate_vertex(1, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(g.duplicate_vertex(3, 1), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn without_vertex_relabels() {
        let g = Hypergraph::cycle(4).unwrap().without_vertex(1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_list(), vec![vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn builtins() {
        assert_eq!(Hypergraph::builtin("K4").unwrap(), Hypergraph::complete_graph(4));
        assert_eq!(Hypergraph::builtin("K4^(3)").unwrap(), k4_3());
        assert_eq!(Hypergraph::builtin("K5^3").unwrap().edge_count(), 10);
        assert_eq!(Hypergraph::builtin("C5").unwrap().edge_count(), 5);
        assert_eq!(
            Hypergraph::builtin("K2,3").unwrap(),
            Hypergraph::complete_bipartite(2, 3)
        );
        assert_eq!(Hypergraph::builtin("P3").unwrap().edge_count(), 2);
        assert!(Hypergraph::builtin("Q3").is_err());
        assert!(Hypergraph::builtin("Kx").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = k4_3();
        assert_eq!(Hypergraph::parse_text(&g.to_text()).unwrap(), g);
        let parsed = Hypergraph::parse_text("# comment\n2 4\n0 1\n\n3 2\n").unwrap();
        assert_eq!(parsed.edge_list(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Hypergraph::parse_text("2\n0 1").is_err());
        assert!(Hypergraph::parse_text("").is_err());
    }

    #[test]
    fn edge_keys() {
        assert_eq!("<2,0>".parse::<Edge>().unwrap().vertices(), &[0, 2]);
        assert_eq!("1, 3 ,2".parse::<Edge>().unwrap().to_string(), "1,2,3");
        assert!("1,a".parse::<Edge>().is_err());
    }

    #[test]
    fn edge_set_tracks_degrees() {
        let mut s = EdgeSet::new(2, 4);
        assert!(s.insert(&[0, 1]));
        assert!(!s.insert(&[0, 1]));
        assert!(s.insert(&[1, 3]));
        assert_eq!(s.degree(1), 2);
        assert_eq!(s.neighbours(1).collect::<Vec<_>>(), vec![0, 3]);
        assert!(s.remove(&[0, 1]));
        assert_eq!(s.degree(1), 1);
        let mut t = EdgeSet::new(3, 4);
        t.insert(&[0, 1, 2]);
        assert!(t.contains(&[0, 1, 2]) && !t.contains(&[0, 1, 3]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
