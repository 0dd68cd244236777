//! Brute-force oracles that share no code with the library's searches.

#![allow(dead_code)]

use list_ramsey::{Color, Coloring, Edge, Hypergraph, ListAssignment};

/// Every labeled graph on `n` vertices, indexed by a bitmask over the
/// pairs in lexicographic order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Hypergraph> {
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b])).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| graph_from_mask(n, &pairs, mask))
}

pub fn graph_from_mask(n: usize, pairs: &[[usize; 2]], mask: u64) -> Hypergraph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| *p);
    Hypergraph::from_edges(2, n, edges).unwrap()
}

/// Calls `f` on every map `0..len -> 0..range`; stops early when it returns true.
pub fn any_assignment(len: usize, range: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if len == 0 {
        return f(&[]);
    }
    if range == 0 {
        return false;
    }
    let mut a = vec![0usize; len];
    loop {
        if f(&a) {
            return true;
        }
        let mut i = 0;
        while i < len {
            a[i] += 1;
            if a[i] < range {
                break;
            }
            a[i] = 0;
            i += 1;
        }
        if i == len {
            return false;
        }
    }
}

fn edge_vertices(g: &Hypergraph) -> Vec<Vec<usize>> {
    g.edges().map(|e| e.vertices().to_vec()).collect()
}

/// Smallest t admitting a vertex t-coloring with no monochromatic edge.
pub fn brute_weak_chromatic(g: &Hypergraph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let edges = edge_vertices(g);
    (1..=g.n())
        .find(|&t| any_assignment(g.n(), t, |c| edges.iter().all(|e| e.iter().any(|&v| c[v] != c[e[0]]))))
        .unwrap()
}

/// Whether some map to r classes makes every edge meet each class once.
pub fn brute_r_partite(g: &Hypergraph) -> bool {
    let edges = edge_vertices(g);
    let r = g.r();
    any_assignment(g.n(), r, |c| {
        edges.iter().all(|e| {
            let mut seen = vec![false; r];
            e.iter().all(|&v| !std::mem::replace(&mut seen[c[v]], true))
        })
    })
}

/// Whether some injective vertex map sends every pattern edge to a host edge.
pub fn brute_has_copy(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    let pe = edge_vertices(pattern);
    any_assignment(pattern.n(), host.n(), |m| {
        let mut used = vec![false; host.n()];
        m.iter().all(|&v| !std::mem::replace(&mut used[v], true))
            && pe
                .iter()
                .all(|e| host.has_edge(&e.iter().map(|&v| m[v]).collect::<Vec<_>>()))
    })
}

/// Whether some vertex map sends every pattern edge to a host edge.
pub fn brute_has_hom(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    let pe = edge_vertices(pattern);
    any_assignment(pattern.n(), host.n(), |m| {
        pe.iter().all(|e| {
            let mut img: Vec<usize> = e.iter().map(|&v| m[v]).collect();
            img.sort_unstable();
            img.windows(2).all(|w| w[0] != w[1]) && host.has_edge(&img)
        })
    })
}

pub fn has_triangle(g: &Hypergraph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (a + 1..n).any(|b| g.has_edge(&[a, b]) && (b + 1..n).any(|c| g.has_edge(&[a, c]) && g.has_edge(&[b, c])))
    })
}

/// Largest edge count of a graph on `n` vertices avoiding `contains`, by
/// scanning all labeled graphs from the densest down.
pub fn brute_max_free(n: usize, contains: impl Fn(&Hypergraph) -> bool) -> usize {
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b])).collect();
    let mut masks: Vec<u64> = (0..1u64 << pairs.len()).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    masks
        .into_iter()
        .map(|m| graph_from_mask(n, &pairs, m))
        .find(|g| !contains(g))
        .map_or(0, |g| g.edge_count())
}

/// ex(n, H) for graphs by enumeration.
pub fn brute_turan(n: usize, pattern: &Hypergraph) -> usize {
    brute_max_free(n, |g| brute_has_copy(g, pattern))
}

/// m(H) = max over edge subsets with at least two edges of
/// (e - 1)/(v - r), as a reduced fraction.
pub fn brute_m(h: &Hypergraph) -> (i64, i64) {
    let edges = edge_vertices(h);
    let r = h.r() as i64;
    let mut best: Option<(i64, i64)> = None;
    for mask in 1u32..(1 << edges.len()) {
        let e = mask.count_ones() as i64;
        if e < 2 {
            continue;
        }
        let mut touched = vec![false; h.n()];
        for (i, edge) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &v in edge {
                    touched[v] = true;
                }
            }
        }
        let v = touched.iter().filter(|&&t| t).count() as i64;
        let cand = (e - 1, v - r);
        if best.is_none_or(|(bn, bd)| cand.0 * bd > bn * cand.1) {
            best = Some(cand);
        }
    }
    let (a, b) = best.unwrap();
    let g = gcd(a, b);
    (a / g, b / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Whether every L-coloring of the host has a monochromatic copy of the
/// pattern, by enumerating all colorings.
pub fn brute_list_ramsey(lists: &ListAssignment, pattern: &Hypergraph) -> bool {
    let edges: Vec<(&Edge, &[Color])> = lists.iter().collect();
    let host = lists.host();
    let widths: Vec<usize> = edges.iter().map(|(_, l)| l.len()).collect();
    let k = widths.iter().copied().max().unwrap_or(1);
    !any_assignment(edges.len(), k, |choice| {
        if choice.iter().zip(&widths).any(|(&c, &w)| c >= w) {
            return false;
        }
        let coloring: Coloring = edges
            .iter()
            .zip(choice)
            .map(|((e, l), &i)| ((*e).clone(), l[i]))
            .collect();
        coloring.classes().values().all(|class| {
            let g = host.spanning_subgraph(class).unwrap();
            !brute_has_copy(&g, pattern)
        })
    })
}
