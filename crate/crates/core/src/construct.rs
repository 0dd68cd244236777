//! Randomized list colorings of complete r-graphs that avoid a pattern.
//!
//! Two constructions:
//!
//! * **Union bound.** Each color `c` gets a uniformly relabeled copy `G_c`
//!   of a fixed graph `G` on the host's vertex set; an edge may take color
//!   `c` when it lies in `G_c`. With `G = K_{⌊n/2⌋,⌈n/2⌉}` every color class
//!   is bipartite.
//! * **Local lemma.** Each color `c` gets a uniform random map
//!   `φ_c: V(host) -> V(G)`. The restricted list of an edge `e` is
//!   `L'(e) = {c ∈ L(e) : φ_c(e) ∈ E(G)}`, and the bad event `B_e` is
//!   `L'(e) = ∅`. Bad events are removed by Moser–Tardos resampling: the
//!   variables `{φ_c(u) : c ∈ L(e), u ∈ e}` of the first violated edge in
//!   colex order are redrawn until no edge is violated. Every color class of
//!   the result maps into `G` under its `φ_c`, so if `G` is H-hom-free the
//!   coloring has no monochromatic `H`.
//!
//! The Moser–Tardos analysis applies to the variable model these events
//! live in; the termination guarantee at feasible parameters is the
//! algorithm's expected-runtime bound, checked empirically in the tests.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{turan_number, FreenessMode};
use crate::hypergraph::{binomial, Edge, EdgeSet, Hypergraph, Vertex};
use crate::lists::{Color, Coloring, ListAssignment};
use crate::morphism::VertexMap;
use crate::numeric::{e_upper, factorial, pow, rational, to_f64_up};
use crate::rng::{self, GENERATOR_ID};
use crate::search::Budget;

/// Inputs and verdict of the local lemma condition `e·p·(d+1) <= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub min_degree: usize,
    pub target_vertices: usize,
    /// `(1 - (r-1)!·δ(G)/v(G)^(r-1))^k`, rounded up.
    pub p: f64,
    /// Dependency out-degree used in the condition.
    pub d: u128,
    /// Intersecting-edge count, reported for arbitrary hosts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_intersecting: Option<u128>,
    /// Distinguished-vertex refinement, reported for complete hosts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_refined: Option<u128>,
    /// `e·p·(d+1)`, rounded up.
    pub condition_value: f64,
    pub feasible: bool,
}

/// `1 - (r-1)!·δ(G)/v(G)^(r-1)` exactly.
fn failure_base(r: usize, target: &Hypergraph) -> Result<BigRational> {
    if target.r() != r {
        return Err(Error::UniformityMismatch {
            pattern: target.r(),
            host: r,
        });
    }
    let v = target.n();
    if v < r {
        return Err(Error::Precondition(format!(
            "target has {v} vertices, needs at least r = {r}"
        )));
    }
    let delta = target.min_degree()? as u128;
    let scale = (v as u128).pow(r as u32 - 1);
    Ok(rational(scale - factorial(r - 1) * delta, scale))
}

pub(crate) fn evaluate_condition(
    n: usize,
    r: usize,
    k: usize,
    target: &Hypergraph,
    d: u128,
) -> Result<FeasibilityReport> {
    let p = pow(&failure_base(r, target)?, k);
    let product = &p * rational(d + 1, 1) * e_upper();
    let condition_value = to_f64_up(&product);
    Ok(FeasibilityReport {
        n,
        r,
        k,
        min_degree: target.min_degree()?,
        target_vertices: target.n(),
        p: to_f64_up(&p),
        d,
        d_intersecting: None,
        d_refined: None,
        condition_value,
        feasible: condition_value <= 1.0,
    })
}

/// Dependency degree for K_n^(r) with one distinguished vertex per edge:
/// `C(n, r) - C(n-r+1, r) - 1`.
pub fn refined_dependency_degree(n: usize, r: usize) -> u128 {
    (binomial(n, r) - binomial(n + 1 - r, r)).saturating_sub(1)
}

/// Local lemma condition for K_n^(r), lists of size `k`, and target `G`.
/// Arithmetic is exact except for Euler's number, which is replaced by a
/// rational upper bound, so `feasible` is never reported spuriously.
pub fn lll_feasibility(n: usize, r: usize, k: usize, target: &Hypergraph) -> Result<FeasibilityReport> {
    if n < r {
        return Err(Error::Precondition(format!("host needs n >= r, got n = {n}, r = {r}")));
    }
    let d = refined_dependency_degree(n, r);
    let mut report = evaluate_condition(n, r, k, target, d)?;
    report.d_refined = Some(d);
    Ok(report)
}

/// Per-color vertex maps into a common target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismSystem {
    pub target: Hypergraph,
    pub maps: BTreeMap<Color, VertexMap>,
}

impl HomomorphismSystem {
    /// `{c ∈ list : φ_c(e) ∈ E(G)}`.
    pub fn restricted_list(&self, edge: &Edge, list: &[Color]) -> Vec<Color> {
        list.iter()
            .copied()
            .filter(|c| {
                self.maps
                    .get(c)
                    .is_some_and(|m| self.target.has_edge(&m.map_edge(edge)))
            })
            .collect()
    }

    /// Checks edge by edge that each color class maps into the target.
    pub fn verify(&self, coloring: &Coloring) -> Result<()> {
        for (edge, color) in coloring.iter() {
            let ok = self
                .maps
                .get(&color)
                .is_some_and(|m| self.target.has_edge(&m.map_edge(edge)));
            if !ok {
                return Err(Error::Unsound {
                    edge: edge.clone(),
                    color,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LllOptions {
    /// Defaults to 100 · #edges.
    pub max_resamples: Option<u64>,
    /// Run even when the local lemma condition fails.
    pub best_effort: bool,
}

#[derive(Clone, Debug)]
pub struct LllOutcome {
    pub coloring: Coloring,
    pub system: HomomorphismSystem,
    pub resamples: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub feasibility: FeasibilityReport,
}

fn check_complete_host(lists: &ListAssignment, target: &Hypergraph) -> Result<()> {
    let host = lists.host();
    if host.r() != target.r() {
        return Err(Error::UniformityMismatch {
            pattern: target.r(),
            host: host.r(),
        });
    }
    if !host.is_complete() {
        return Err(Error::Precondition(format!(
            "host must be complete K_n^(r), got {host}"
        )));
    }
    Ok(())
}

/// Dense view of a list assignment: colors renumbered `0..C` in ascending
/// order, edges in colex order.
struct DenseLists {
    universe: Vec<Color>,
    edges: Vec<Vec<Vertex>>,
    lists: Vec<Vec<usize>>,
}

impl DenseLists {
    fn new(lists: &ListAssignment) -> DenseLists {
        let universe = lists.universe();
        let index = |c: &Color| universe.binary_search(c).expect("color is in the universe");
        let (edges, dense) = lists
            .iter()
            .map(|(e, l)| (e.vertices().to_vec(), l.iter().map(index).collect()))
            .unzip();
        DenseLists {
            universe,
            edges,
            lists: dense,
        }
    }
}

/// Local lemma construction realized by Moser–Tardos resampling.
///
/// The feasibility condition is checked in its conditional form, which the
/// independent-variable resampling bound does not literally cover, so a run
/// can in principle exceed `max_resamples`. That surfaces as
/// [`Error::ResampleLimit`] with the edges still violated.
pub fn lll_construct(
    lists: &ListAssignment,
    target: &Hypergraph,
    seed: u64,
    options: LllOptions,
) -> Result<LllOutcome> {
    check_complete_host(lists, target)?;
    let host = lists.host();
    let (n, r) = (host.n(), host.r());
    let feasibility = lll_feasibility(n, r, lists.k(), target)?;
    if !feasibility.feasible && !options.best_effort {
        return Err(Error::Infeasible {
            condition_value: feasibility.condition_value,
        });
    }
    let dense = DenseLists::new(lists);
    let limit = options.max_resamples.unwrap_or(100 * dense.edges.len() as u64);
    let target_set = EdgeSet::from_graph(target);
    let vt = target.n();

    let mut rng = rng::seeded(seed);
    let mut phi: Vec<Vec<Vertex>> = (0..dense.universe.len())
        .map(|_| (0..n).map(|_| rng.random_range(0..vt)).collect())
        .collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in dense.edges.iter().enumerate() {
        for &u in e {
            incident[u].push(i);
        }
    }

    let mut scratch = Vec::with_capacity(r);
    let mut first_alive = |phi: &[Vec<Vertex>], i: usize| -> Option<usize> {
        dense.lists[i].iter().copied().find(|&c| {
            scratch.clear();
            scratch.extend(dense.edges[i].iter().map(|&u| phi[c][u]));
            scratch.sort_unstable();
            scratch.windows(2).all(|w| w[0] < w[1]) && target_set.contains(&scratch)
        })
    };

    let mut violated: BTreeSet<usize> = (0..dense.edges.len())
        .filter(|&i| first_alive(&phi, i).is_none())
        .collect();
    let mut resamples = 0u64;
    while let Some(&bad) = violated.first() {
        if resamples >= limit {
            let edges = violated
                .iter()
                .map(|&i| Edge::from_sorted(dense.edges[i].clone()))
                .collect();
            return Err(Error::ResampleLimit { limit, violated: edges });
        }
        resamples += 1;
        for &c in &dense.lists[bad] {
            for &u in &dense.edges[bad] {
                phi[c][u] = rng.random_range(0..vt);
            }
        }
        // only edges through a resampled vertex can change state
        for &u in &dense.edges[bad] {
            for &i in &incident[u] {
                if first_alive(&phi, i).is_some() {
                    violated.remove(&i);
                } else {
                    violated.insert(i);
                }
            }
        }
    }

    let coloring: Coloring = (0..dense.edges.len())
        .map(|i| {
            let c = first_alive(&phi, i).expect("no violated edges remain");
            (Edge::from_sorted(dense.edges[i].clone()), dense.universe[c])
        })
        .collect();
    let system = HomomorphismSystem {
        target: target.clone(),
        maps: dense
            .universe
            .iter()
            .zip(phi)
            .map(|(&c, image)| (c, VertexMap { image, target_n: vt }))
            .collect(),
    };
    system.verify(&coloring)?;
    Ok(LllOutcome {
        coloring,
        system,
        resamples,
        seed,
        generator: GENERATOR_ID,
        feasibility,
    })
}

#[derive(Clone, Debug)]
pub struct UnionBoundOutcome {
    pub coloring: Coloring,
    /// Attempts used, counting the successful one.
    pub attempts: u64,
    /// For each color, `σ_c` with `G_c = σ_c(G)`: entry `i` is the host
    /// vertex receiving vertex `i` of `G`.
    pub permutations: BTreeMap<Color, Vec<Vertex>>,
    pub seed: u64,
    pub generator: &'static str,
}

impl UnionBoundOutcome {
    /// True when each edge colored `c` is an edge of `σ_c(G)`.
    pub fn classes_within_relabeled_copies(&self, target: &Hypergraph) -> bool {
        let inverses: BTreeMap<Color, Vec<Vertex>> =
            self.permutations.iter().map(|(&c, sigma)| (c, invert(sigma))).collect();
        self.coloring.iter().all(|(e, c)| {
            let pre: Vec<Vertex> = e.vertices().iter().map(|&v| inverses[&c][v]).collect();
            target.has_edge(&pre)
        })
    }
}

fn invert(sigma: &[Vertex]) -> Vec<Vertex> {
    let mut inv = vec![0; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Union-bound construction with uniformly relabeled copies of `target`,
/// which must have the host's vertex count. Defaults to 1000 attempts.
pub fn union_bound_construct(
    lists: &ListAssignment,
    target: &Hypergraph,
    seed: u64,
    max_retries: Option<u64>,
) -> Result<UnionBoundOutcome> {
    check_complete_host(lists, target)?;
    let n = lists.host().n();
    if target.n() != n {
        return Err(Error::Precondition(format!(
            "target must have the host's {n} vertices, has {}",
            target.n()
        )));
    }
    let limit = max_retries.unwrap_or(1000);
    let dense = DenseLists::new(lists);
    let target_set = EdgeSet::from_graph(target);
    let mut rng = rng::seeded(seed);
    let mut best_uncovered = usize::MAX;
    let mut scratch = Vec::new();

    for attempt in 1..=limit {
        let sigmas: Vec<Vec<Vertex>> = (0..dense.universe.len())
            .map(|_| {
                let mut s: Vec<Vertex> = (0..n).collect();
                s.shuffle(&mut rng);
                s
            })
            .collect();
        let inverses: Vec<Vec<Vertex>> = sigmas.iter().map(|s| invert(s)).collect();
        let mut choice = Vec::with_capacity(dense.edges.len());
        let mut uncovered = 0;
        for (e, list) in dense.edges.iter().zip(&dense.lists) {
            let hit = list.iter().copied().find(|&c| {
                scratch.clear();
                scratch.extend(e.iter().map(|&v| inverses[c][v]));
                scratch.sort_unstable();
                target_set.contains(&scratch)
            });
            match hit {
                Some(c) => choice.push(c),
                None => uncovered += 1,
            }
        }
        if uncovered == 0 {
            let coloring = dense
                .edges
                .iter()
                .zip(choice)
                .map(|(e, c)| (Edge::from_sorted(e.clone()), dense.universe[c]))
                .collect();
            let permutations = dense.universe.iter().copied().zip(sigmas).collect();
            return Ok(UnionBoundOutcome {
                coloring,
                attempts: attempt,
                permutations,
                seed,
                generator: GENERATOR_ID,
            });
        }
        best_uncovered = best_uncovered.min(uncovered);
    }
    Err(Error::RetryLimit { limit, best_uncovered })
}

/// Whether `n < (1 - ex(n,H)/C(n,r))^(-k/r)`, i.e. whether the union bound
/// over relabeled extremal graphs shows some L-coloring of K_n^(r) avoids H
/// for every k-list assignment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub ex: usize,
    /// `(1 - ex/C(n,r))^(-k/r)`; infinite when `ex = C(n,r)`.
    pub threshold: f64,
    pub holds: bool,
}

/// Decided exactly: `n < base^(-k/r)` iff `n^r · (C - ex)^k < C^k`.
pub fn union_bound_threshold(n: usize, pattern: &Hypergraph, k: usize, budget: Budget) -> Result<ThresholdReport> {
    let r = pattern.r();
    let ex = turan_number(n, pattern, FreenessMode::CopyFree, budget)?.value;
    let total = binomial(n, r);
    let missing = total - ex as u128;
    let holds =
        BigUint::from(n).pow(r as u32) * BigUint::from(missing).pow(k as u32) < BigUint::from(total).pow(k as u32);
    let threshold = if missing.is_zero() {
        f64::INFINITY
    } else {
        let base = rational(missing, total);
        let inv = BigRational::one() / base;
        inv.to_f64().unwrap_or(f64::INFINITY).powf(k as f64 / r as f64)
    };
    Ok(ThresholdReport {
        n,
        r,
        k,
        ex,
        threshold,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::verify_coloring;

    fn k(n: usize) -> Hypergraph {
        Hypergraph::complete_graph(n)
    }

    #[test]
    fn feasibility_k2_target() {
        let at24 = lll_feasibility(24, 2, 6, &k(2)).unwrap();
        assert_eq!(at24.d, 22);
        assert!((at24.p - 1.0 / 64.0).abs() < 1e-15);
        assert!((at24.condition_value - std::f64::consts::E * 23.0 / 64.0).abs() < 1e-12);
        assert!(at24.feasible);
        let at25 = lll_feasibility(25, 2, 6, &k(2)).unwrap();
        assert!((at25.condition_value - std::f64::consts::E * 24.0 / 64.0).abs() < 1e-12);
        assert!(!at25.feasible);
    }

    #[test]
    fn feasibility_empty_target() {
        let empty = Hypergraph::empty(2, 4).unwrap();
        for n in 3..10 {
            let rep = lll_feasibility(n, 2, 5, &empty).unwrap();
            assert_eq!(rep.p, 1.0_f64.next_up());
            assert!(!rep.feasible);
        }
    }

    #[test]
    fn feasibility_errors() {
        let edge3 = Hypergraph::from_edges(3, 3, [[0, 1, 2]]).unwrap();
        assert!(matches!(
            lll_feasibility(5, 2, 3, &edge3),
            Err(Error::UniformityMismatch { .. })
        ));
        let tiny = Hypergraph::empty(3, 2).unwrap();
        assert!(matches!(lll_feasibility(5, 3, 3, &tiny), Err(Error::Precondition(_))));
    }

    #[test]
    fn refined_degree() {
        assert_eq!(refined_dependency_degree(24, 2), 22);
        // r = 3: C(6,3) - C(4,3) - 1 = 20 - 4 - 1
        assert_eq!(refined_dependency_degree(6, 3), 15);
    }

    #[test]
    fn hypergraph_feasibility_uses_factorial_scaling() {
        // K_4^(3): δ = 3, v = 4, (r-1)!·δ/v^2 = 6/16
        let rep = lll_feasibility(6, 3, 2, &Hypergraph::complete(3, 4).unwrap()).unwrap();
        let p = (10.0f64 / 16.0).powi(2);
        assert!((rep.p - p).abs() < 1e-12);
    }

    #[test]
    fn lll_triangle_host() {
        let lists = ListAssignment::constant(k(3), 3).unwrap();
        let out = lll_construct(&lists, &k(2), 5, LllOptions::default()).unwrap();
        assert!(out.coloring.respects(&lists));
        out.system.verify(&out.coloring).unwrap();
        assert!(verify_coloring(&k(3), &out.coloring, &k(3)).unwrap().is_none());
        assert_eq!(out.generator, "chacha8");
    }

    #[test]
    fn lll_rejects_infeasible_without_override() {
        let lists = ListAssignment::constant(k(3), 1).unwrap();
        assert!(matches!(
            lll_construct(&lists, &k(2), 0, LllOptions::default()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn lll_single_color_best_effort() {
        let lists = ListAssignment::random(k(3), 1, 3, 9).unwrap();
        let opts = LllOptions {
            best_effort: true,
            ..LllOptions::default()
        };
        for seed in 0..10 {
            match lll_construct(&lists, &k(2), seed, opts) {
                Ok(out) => {
                    out.system.verify(&out.coloring).unwrap();
                    assert!(verify_coloring(&k(3), &out.coloring, &k(3)).unwrap().is_none());
                }
                // all three lists equal: a triangle cannot map into K_2
                Err(Error::ResampleLimit { .. }) => {
                    assert_eq!(lists.universe().len(), 1);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn lll_impossible_instance_hits_limit() {
        let lists = ListAssignment::constant(k(3), 1).unwrap();
        let opts = LllOptions {
            best_effort: true,
            max_resamples: Some(50),
        };
        match lll_construct(&lists, &k(2), 1, opts) {
            Err(Error::ResampleLimit { limit, violated }) => {
                assert_eq!(limit, 50);
                assert!(!violated.is_empty());
            }
            other => panic!("expected resample limit, got {other:?}"),
        }
    }

    #[test]
    fn lll_is_deterministic() {
        let lists = ListAssignment::random(k(12), 5, 10, 3).unwrap();
        let a = lll_construct(&lists, &k(2), 77, LllOptions::default()).unwrap();
        let b = lll_construct(&lists, &k(2), 77, LllOptions::default()).unwrap();
        assert_eq!(a.coloring, b.coloring);
        assert_eq!(a.resamples, b.resamples);
        assert_eq!(a.system, b.system);
    }

    #[test]
    fn lll_with_c5_target_avoids_triangles() {
        // δ(C5) = 2, v = 5: p = (3/5)^k
        let lists = ListAssignment::random(k(6), 9, 20, 4).unwrap();
        let out = lll_construct(&lists, &Hypergraph::cycle(5).unwrap(), 8, LllOptions::default()).unwrap();
        out.system.verify(&out.coloring).unwrap();
        assert!(verify_coloring(&k(6), &out.coloring, &k(3)).unwrap().is_none());
    }

    #[test]
    fn lll_requires_complete_host() {
        let lists = ListAssignment::constant(Hypergraph::cycle(5).unwrap(), 6).unwrap();
        assert!(matches!(
            lll_construct(&lists, &k(2), 0, LllOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn restricted_lists_match_coloring() {
        let lists = ListAssignment::random(k(8), 6, 9, 1).unwrap();
        let out = lll_construct(&lists, &k(2), 2, LllOptions::default()).unwrap();
        for (e, list) in lists.iter() {
            let restricted = out.system.restricted_list(e, list);
            assert_eq!(restricted.first().copied(), out.coloring.get(e));
        }
    }

    #[test]
    fn union_bound_bipartite() {
        let lists = ListAssignment::constant(k(8), 6).unwrap();
        let g = Hypergraph::balanced_complete_bipartite(8);
        let out = union_bound_construct(&lists, &g, 3, None).unwrap();
        assert!(out.classes_within_relabeled_copies(&g));
        assert!(verify_coloring(&k(8), &out.coloring, &k(3)).unwrap().is_none());
        let again = union_bound_construct(&lists, &g, 3, None).unwrap();
        assert_eq!((out.coloring, out.attempts), (again.coloring, again.attempts));
    }

    #[test]
    fn union_bound_single_edge() {
        let lists = ListAssignment::constant(k(2), 1).unwrap();
        let out = union_bound_construct(&lists, &k(2), 0, None).unwrap();
        assert_eq!(out.attempts, 1);
        assert_eq!(out.coloring.len(), 1);
    }

    #[test]
    fn union_bound_pentagons() {
        let lists = ListAssignment::constant(k(5), 2).unwrap();
        let c5 = Hypergraph::cycle(5).unwrap();
        let out = union_bound_construct(&lists, &c5, 12, None).unwrap();
        assert!(out.classes_within_relabeled_copies(&c5));
        assert!(verify_coloring(&k(5), &out.coloring, &k(3)).unwrap().is_none());
    }

    #[test]
    fn union_bound_errors() {
        let lists = ListAssignment::constant(k(5), 1).unwrap();
        assert!(matches!(
            union_bound_construct(&lists, &k(4), 0, None),
            Err(Error::Precondition(_))
        ));
        // one color cannot cover K_5 with a single relabeled C_5
        match union_bound_construct(&lists, &Hypergraph::cycle(5).unwrap(), 0, Some(20)) {
            Err(Error::RetryLimit {
                limit: 20,
                best_uncovered: 5,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn threshold_examples() {
        let t = union_bound_threshold(8, &k(3), 6, Budget::unlimited()).unwrap();
        assert_eq!(t.ex, 16);
        assert!(t.holds);
        assert!((t.threshold - (7.0f64 / 3.0).powi(3)).abs() < 1e-9);
        let t = union_bound_threshold(3, &k(3), 1, Budget::unlimited()).unwrap();
        assert_eq!(t.ex, 2);
        assert!(!t.holds);
        assert!((t.threshold - 3f64.sqrt()).abs() < 1e-12);
        // base < 1 so a large enough k always certifies
        let t = union_bound_threshold(6, &k(3), 40, Budget::unlimited()).unwrap();
        assert!(t.holds);
    }
}
