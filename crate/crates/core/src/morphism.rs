//! Homomorphism and copy search between uniform hypergraphs, and
//! monochromatic-copy verification of edge colorings.
//!
//! Both searches share one backtracking matcher. Pattern vertices are
//! assigned in a fixed order: the highest-degree vertex first, then
//! repeatedly the vertex with the most already-ordered neighbours (ties by
//! degree, then by id). A pattern edge is checked as soon as its last vertex
//! in that order is assigned. Witnesses are therefore reproducible.
//!
//! A homomorphism must send each pattern edge to r *distinct* host vertices
//! forming a host edge; it may identify non-adjacent pattern vertices.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, EdgeSet, Hypergraph, Vertex};
use crate::lists::{Color, Coloring};

/// A total map from source vertices `0..image.len()` into `0..target_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub image: Vec<Vertex>,
    pub target_n: usize,
}

impl VertexMap {
    pub fn new(image: Vec<Vertex>, target_n: usize) -> Result<VertexMap> {
        if let Some(&v) = image.iter().find(|&&v| v >= target_n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: target_n });
        }
        Ok(VertexMap { image, target_n })
    }

    pub fn from_n(&self) -> usize {
        self.image.len()
    }

    pub fn get(&self, v: Vertex) -> Vertex {
        self.image[v]
    }

    /// Image of an edge as a sorted vertex list (may contain repeats).
    pub fn map_edge(&self, e: &Edge) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = e.vertices().iter().map(|&v| self.image[v]).collect();
        out.sort_unstable();
        out
    }

    /// True when every edge of `source` lands on an edge of `target`.
    pub fn is_homomorphism(&self, source: &Hypergraph, target: &Hypergraph) -> bool {
        self.from_n() == source.n()
            && self.target_n == target.n()
            && source.edges().all(|e| target.has_edge(&self.map_edge(e)))
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<_> = self.image.iter().collect();
        distinct.len() == self.image.len()
    }
}

/// An injective homomorphism: a (not necessarily induced) copy of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(VertexMap);

impl Embedding {
    pub fn map(&self) -> &VertexMap {
        &self.0
    }

    pub fn is_copy(&self, pattern: &Hypergraph, host: &Hypergraph) -> bool {
        self.0.is_injective() && self.0.is_homomorphism(pattern, host)
    }

    /// Host edges covered by the copy, colex-sorted.
    pub fn edge_image(&self, pattern: &Hypergraph) -> Vec<Edge> {
        let mut out: Vec<Edge> = pattern
            .edges()
            .map(|e| Edge::new(self.0.map_edge(e)).expect("embedding is injective"))
            .collect();
        out.sort();
        out
    }
}

/// A monochromatic copy found in a coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonochromaticCopy {
    pub color: Color,
    pub embedding: Embedding,
}

fn check_uniformity(pattern: &Hypergraph, host_r: usize) -> Result<()> {
    if pattern.r() != host_r {
        return Err(Error::UniformityMismatch {
            pattern: pattern.r(),
            host: host_r,
        });
    }
    Ok(())
}

pub fn find_homomorphism(pattern: &Hypergraph, target: &Hypergraph) -> Result<Option<VertexMap>> {
    check_uniformity(pattern, target.r())?;
    let host = EdgeSet::from_graph(target);
    let mut matcher = Matcher::new(pattern, &host, false);
    Ok(matcher.first(&[]).map(|image| VertexMap {
        image,
        target_n: target.n(),
    }))
}

/// True when no homomorphism `pattern -> g` exists.
pub fn is_hom_free(g: &Hypergraph, pattern: &Hypergraph) -> Result<bool> {
    Ok(find_homomorphism(pattern, g)?.is_none())
}

pub fn find_copy(host: &Hypergraph, pattern: &Hypergraph) -> Result<Option<Embedding>> {
    check_uniformity(pattern, host.r())?;
    let set = EdgeSet::from_graph(host);
    Ok(find_copy_in(&set, pattern).map(|image| {
        Embedding(VertexMap {
            image,
            target_n: host.n(),
        })
    }))
}

pub(crate) fn find_copy_in(host: &EdgeSet, pattern: &Hypergraph) -> Option<Vec<Vertex>> {
    Matcher::new(pattern, host, true).first(&[])
}

/// A copy of `pattern` in `host` using host edge `edge` (sorted), if any.
pub(crate) fn copy_through(host: &EdgeSet, pattern: &Hypergraph, edge: &[Vertex]) -> Option<Vec<Vertex>> {
    through(host, pattern, edge, true)
}

/// A homomorphism `pattern -> host` mapping some pattern edge onto `edge`.
pub(crate) fn hom_through(host: &EdgeSet, pattern: &Hypergraph, edge: &[Vertex]) -> Option<Vec<Vertex>> {
    through(host, pattern, edge, false)
}

fn through(host: &EdgeSet, pattern: &Hypergraph, edge: &[Vertex], injective: bool) -> Option<Vec<Vertex>> {
    let mut matcher = Matcher::new(pattern, host, injective);
    let mut perms = Vec::new();
    permutations(edge.to_vec(), &mut perms);
    for f in pattern.edges() {
        for perm in &perms {
            let seeds: Vec<(Vertex, Vertex)> = f.vertices().iter().copied().zip(perm.iter().copied()).collect();
            if let Some(image) = matcher.first(&seeds) {
                return Some(image);
            }
        }
    }
    None
}

fn permutations(items: Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    fn go(k: usize, items: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(k + 1, items, out);
            items.swap(k, i);
        }
    }
    let mut items = items;
    go(0, &mut items, out);
}

/// Every distinct host edge set that is the image of a copy of `pattern`.
pub fn copy_edge_sets(host: &Hypergraph, pattern: &Hypergraph) -> Result<Vec<Vec<Edge>>> {
    check_uniformity(pattern, host.r())?;
    let set = EdgeSet::from_graph(host);
    let mut seen = BTreeSet::new();
    Matcher::new(pattern, &set, true).for_each(&[], &mut |image| {
        let mut edges: Vec<Edge> = pattern
            .edges()
            .map(|e| {
                let mut v: Vec<Vertex> = e.vertices().iter().map(|&x| image[x]).collect();
                v.sort_unstable();
                Edge::new(v).expect("copies are injective")
            })
            .collect();
        edges.sort();
        seen.insert(edges);
        ControlFlow::Continue(())
    });
    Ok(seen.into_iter().collect())
}

/// Looks for a monochromatic copy of `pattern`, scanning colors in
/// ascending order. Each color class is searched on the full host vertex
/// set, so an edgeless pattern is found in the first class whenever
/// `v(pattern) <= v(host)`.
pub fn verify_coloring(
    host: &Hypergraph,
    coloring: &Coloring,
    pattern: &Hypergraph,
) -> Result<Option<MonochromaticCopy>> {
    check_uniformity(pattern, host.r())?;
    coloring.check_covers(host)?;
    for (color, edges) in coloring.classes() {
        let mut class = EdgeSet::new(host.r(), host.n());
        for e in &edges {
            class.insert(e.vertices());
        }
        if let Some(image) = find_copy_in(&class, pattern) {
            let embedding = Embedding(VertexMap {
                image,
                target_n: host.n(),
            });
            return Ok(Some(MonochromaticCopy { color, embedding }));
        }
    }
    Ok(None)
}

struct Matcher<'a> {
    host: &'a EdgeSet,
    injective: bool,
    pattern_n: usize,
    pattern_degree: Vec<usize>,
    base_order: Vec<Vertex>,
    edges: Vec<Vec<Vertex>>,
    // per run
    order: Vec<Vertex>,
    checks: Vec<Vec<usize>>,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
    scratch: Vec<Vertex>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &Hypergraph, host: &'a EdgeSet, injective: bool) -> Matcher<'a> {
        let pattern_degree = pattern.degrees();
        let edges: Vec<Vec<Vertex>> = pattern.edges().map(|e| e.vertices().to_vec()).collect();
        let base_order = search_order(pattern.n(), &edges, &pattern_degree);
        Matcher {
            host,
            injective,
            pattern_n: pattern.n(),
            pattern_degree,
            base_order,
            edges,
            order: Vec::new(),
            checks: Vec::new(),
            image: vec![None; pattern.n()],
            used: vec![false; host.n()],
            scratch: Vec::with_capacity(pattern.r()),
        }
    }

    fn first(&mut self, seeds: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
        let mut found = None;
        self.for_each(seeds, &mut |image| {
            found = Some(image.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    /// Calls `visit` on each complete map extending the seeded pairs
    /// `(pattern vertex, host vertex)`.
    fn for_each(&mut self, seeds: &[(Vertex, Vertex)], visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) {
        if self.pattern_n > 0 && self.host.n() == 0 {
            return;
        }
        if self.injective && self.pattern_n > self.host.n() {
            return;
        }
        self.prepare(seeds);
        self.image.iter_mut().for_each(|x| *x = None);
        self.used.iter_mut().for_each(|x| *x = false);
        for &(p, h) in seeds {
            if self.injective && (self.used[h] || self.host.degree(h) < self.pattern_degree[p]) {
                return;
            }
            self.image[p] = Some(h);
            self.used[h] = true;
        }
        for pos in 0..seeds.len() {
            if !self.checks_pass(pos) {
                return;
            }
        }
        let _ = self.extend(seeds.len(), visit);
    }

    fn prepare(&mut self, seeds: &[(Vertex, Vertex)]) {
        self.order.clear();
        self.order.extend(seeds.iter().map(|&(p, _)| p));
        for &v in &self.base_order {
            if !seeds.iter().any(|&(p, _)| p == v) {
                self.order.push(v);
            }
        }
        let mut position = vec![0; self.pattern_n];
        for (i, &v) in self.order.iter().enumerate() {
            position[v] = i;
        }
        self.checks = vec![Vec::new(); self.pattern_n];
        for (idx, e) in self.edges.iter().enumerate() {
            let last = e.iter().map(|&v| position[v]).max().expect("edges are non-empty");
            self.checks[last].push(idx);
        }
    }

    fn checks_pass(&mut self, pos: usize) -> bool {
        for &idx in &self.checks[pos] {
            self.scratch.clear();
            self.scratch.extend(
                self.edges[idx]
                    .iter()
                    .map(|&v| self.image[v].expect("assigned earlier")),
            );
            self.scratch.sort_unstable();
            if self.scratch.windows(2).any(|w| w[0] == w[1]) || !self.host.contains(&self.scratch) {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, pos: usize, visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> ControlFlow<()> {
        if pos == self.order.len() {
            let image: Vec<Vertex> = self.image.iter().map(|x| x.expect("total")).collect();
            return visit(&image);
        }
        let v = self.order[pos];
        for h in 0..self.host.n() {
            if self.injective && (self.used[h] || self.host.degree(h) < self.pattern_degree[v]) {
                continue;
            }
            self.image[v] = Some(h);
            let was_used = std::mem::replace(&mut self.used[h], true);
            let ok = self.checks_pass(pos);
            if ok {
                self.extend(pos + 1, visit)?;
            }
            self.used[h] = was_used;
            self.image[v] = None;
        }
        ControlFlow::Continue(())
    }
}

fn search_order(n: usize, edges: &[Vec<Vertex>], degree: &[usize]) -> Vec<Vertex> {
    let mut linked = vec![0usize; n];
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| (linked[a], degree[a]).cmp(&(linked[b], degree[b])).then(b.cmp(&a)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for e in edges.iter().filter(|e| e.contains(&next)) {
            for &w in e {
                if !placed[w] {
                    linked[w] += 1;
                }
            }
        }
    }
    order
}
