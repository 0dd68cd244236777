//! List assignments `L: E(host) -> k-sets of colors` and edge colorings.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::rng;

pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    host: Hypergraph,
    k: usize,
    lists: BTreeMap<Edge, Vec<Color>>,
}

impl ListAssignment {
    /// Validates that every host edge has exactly `k` distinct colors and
    /// that no list is attached to a non-edge. Lists are stored sorted.
    pub fn new(host: Hypergraph, k: usize, lists: BTreeMap<Edge, Vec<Color>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLists("list size k must be at least 1".into()));
        }
        let mut normalized = BTreeMap::new();
        for (edge, mut colors) in lists {
            if !host.contains_edge(&edge) {
                return Err(Error::InvalidLists(format!("list given for non-edge {edge}")));
            }
            colors.sort_unstable();
            colors.dedup();
            if colors.len() != k {
                return Err(Error::InvalidLists(format!(
                    "edge {edge} has {} distinct colors, expected {k}",
                    colors.len()
                )));
            }
            normalized.insert(edge, colors);
        }
        if let Some(e) = host.edges().find(|e| !normalized.contains_key(*e)) {
            return Err(Error::InvalidLists(format!("edge {e} has no list")));
        }
        Ok(ListAssignment {
            host,
            k,
            lists: normalized,
        })
    }

    /// Every edge gets `{0, .., k-1}`.
    pub fn constant(host: Hypergraph, k: usize) -> Result<Self> {
        let palette: Vec<Color> = (0..k as Color).collect();
        let lists = host.edges().map(|e| (e.clone(), palette.clone())).collect();
        ListAssignment::new(host, k, lists)
    }

    /// Each edge independently gets a uniform k-subset of `0..universe`.
    pub fn random(host: Hypergraph, k: usize, universe: usize, seed: u64) -> Result<Self> {
        if universe < k {
            return Err(Error::InvalidLists(format!("universe {universe} smaller than k = {k}")));
        }
        let mut rng = rng::seeded(seed);
        let lists = host
            .edges()
            .map(|e| {
                let colors = sample(&mut rng, universe, k).into_iter().map(|c| c as Color).collect();
                (e.clone(), colors)
            })
            .collect();
        ListAssignment::new(host, k, lists)
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The sorted list of `edge`. Panics if `edge` is not a host edge.
    pub fn list(&self, edge: &Edge) -> &[Color] {
        &self.lists[edge]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &[Color])> + '_ {
        self.lists.iter().map(|(e, l)| (e, l.as_slice()))
    }

    /// Colors appearing in at least one list, ascending.
    pub fn universe(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.lists.values().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Restriction to the host with `v` deleted (ids above `v` shift down).
    pub fn without_vertex(&self, v: Vertex) -> Result<Self> {
        let host = self.host.without_vertex(v)?;
        let lists = self
            .lists
            .iter()
            .filter(|(e, _)| !e.contains(v))
            .map(|(e, l)| {
                let relabeled: Vec<Vertex> = e.vertices().iter().map(|&w| if w > v { w - 1 } else { w }).collect();
                (Edge::new(relabeled).expect("relabeling keeps edges simple"), l.clone())
            })
            .collect();
        ListAssignment::new(host, self.k, lists)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ListAssignmentFile = serde_json::from_str(text)?;
        ListAssignment::from_file(file)
    }

    fn to_file(&self) -> ListAssignmentFile {
        ListAssignmentFile {
            n: self.host.n(),
            r: self.host.r(),
            k: self.k,
            lists: self.lists.iter().map(|(e, l)| (e.to_string(), l.clone())).collect(),
        }
    }

    /// The host is the hypergraph whose edges are the list keys.
    fn from_file(file: ListAssignmentFile) -> Result<Self> {
        let mut lists = BTreeMap::new();
        for (key, colors) in file.lists {
            let edge: Edge = key.parse()?;
            if lists.insert(edge.clone(), colors).is_some() {
                return Err(Error::InvalidLists(format!("duplicate key for edge {edge}")));
            }
        }
        let host = Hypergraph::from_edges(file.r, file.n, lists.keys().map(|e| e.vertices()))?;
        ListAssignment::new(host, file.k, lists)
    }
}

/// On-disk schema: `{"n", "r", "k", "lists": {"v1,..,vr": [colors]}}`.
#[derive(Serialize, Deserialize)]
struct ListAssignmentFile {
    n: usize,
    r: usize,
    k: usize,
    lists: BTreeMap<String, Vec<Color>>,
}

/// One color per edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    colors: BTreeMap<Edge, Color>,
}

impl Coloring {
    pub fn new() -> Coloring {
        Coloring::default()
    }

    pub fn set(&mut self, edge: Edge, color: Color) {
        self.colors.insert(edge, color);
    }

    pub fn get(&self, edge: &Edge) -> Option<Color> {
        self.colors.get(edge).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, Color)> + '_ {
        self.colors.iter().map(|(e, &c)| (e, c))
    }

    /// Edges of each color, colors ascending and edges in colex order.
    pub fn classes(&self) -> BTreeMap<Color, Vec<Edge>> {
        let mut out: BTreeMap<Color, Vec<Edge>> = BTreeMap::new();
        for (e, &c) in &self.colors {
            out.entry(c).or_default().push(e.clone());
        }
        out
    }

    pub fn class_sizes(&self) -> BTreeMap<Color, usize> {
        self.classes().into_iter().map(|(c, es)| (c, es.len())).collect()
    }

    /// Checks totality over `host` and that no foreign edges are colored.
    pub fn check_covers(&self, host: &Hypergraph) -> Result<()> {
        if let Some(e) = host.edges().find(|e| !self.colors.contains_key(*e)) {
            return Err(Error::IncompleteColoring(e.clone()));
        }
        if let Some(e) = self.colors.keys().find(|e| !host.contains_edge(e)) {
            return Err(Error::InvalidArgument(format!("colored edge {e} is not a host edge")));
        }
        Ok(())
    }

    /// True when the coloring is total and every edge's color is in its list.
    pub fn respects(&self, lists: &ListAssignment) -> bool {
        self.check_covers(lists.host()).is_ok()
            && self.colors.iter().all(|(e, c)| lists.list(e).binary_search(c).is_ok())
    }

    /// Restriction to the host with `v` deleted (ids above `v` shift down).
    pub fn without_vertex(&self, v: Vertex) -> Coloring {
        let colors = self
            .colors
            .iter()
            .filter(|(e, _)| !e.contains(v))
            .map(|(e, &c)| {
                let relabeled: Vec<Vertex> = e.vertices().iter().map(|&w| if w > v { w - 1 } else { w }).collect();
                (Edge::new(relabeled).expect("relabeling keeps edges simple"), c)
            })
            .collect();
        Coloring { colors }
    }
}

impl FromIterator<(Edge, Color)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (Edge, Color)>>(iter: T) -> Self {
        Coloring {
            colors: iter.into_iter().collect(),
        }
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, Color> = self.colors.iter().map(|(e, &c)| (e.to_string(), c)).collect();
        keyed.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let keyed = BTreeMap::<String, Color>::deserialize(deserializer)?;
        keyed
            .into_iter()
            .map(|(k, c)| k.parse::<Edge>().map(|e| (e, c)).map_err(serde::de::Error::custom))
            .collect()
    }
}
