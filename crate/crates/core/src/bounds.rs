//! Closed-form bounds on list Ramsey numbers and their size/degree variants.
//!
//! Lower bounds are rounded down and upper bounds rounded up (a few ulps
//! outward), so every reported sandwich is conservative with respect to the
//! floating-point evaluation.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::construct::{evaluate_condition, refined_dependency_degree, FeasibilityReport};
use crate::error::{Error, Result};
use crate::extremal::m_parameter;
use crate::hypergraph::Hypergraph;
use crate::numeric::{round_down, round_up};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `c_r · (1 - π)^(-k/(r-1))` lower bound.
    ExponentialLower,
    /// `e^sqrt(k ln(χ-1)/(4r))` lower and `(1 - π)^(-k·m)` upper bound.
    ChromaticDensity,
    /// `s^k / e` and `s^k + 1` for graphs of chromatic number above `s`.
    ChromaticFamily,
    /// `(1 - π)^(-k)` lower bound on edges, growth base for max degree.
    SizeDegree,
}

/// A Turán density value and where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityInput {
    pub value: f64,
    /// Largest n of the exact table it was read from, if estimated.
    pub table_n_max: Option<usize>,
}

impl DensityInput {
    pub fn exact(value: f64) -> DensityInput {
        DensityInput {
            value,
            table_n_max: None,
        }
    }

    pub fn from_table(value: f64, n_max: usize) -> DensityInput {
        DensityInput {
            value,
            table_n_max: Some(n_max),
        }
    }

    fn check(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.value) {
            return Err(Error::InvalidArgument(format!(
                "Turán density must lie in [0, 1), got {}",
                self.value
            )));
        }
        Ok(())
    }

    fn caveat(&self) -> Option<String> {
        self.table_n_max.map(|n| {
            format!(
                "π(H) = {} is an upper estimate from exact values at n <= {n}",
                self.value
            )
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub inputs: BTreeMap<String, f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// `floor` of the bound, for quoting as an integer lower bound.
    pub integer_lower: Option<u64>,
    /// `((r-2)!/e)^(1/(r-1))` when the bound involves it.
    pub c_r: Option<f64>,
    /// Exponential growth base, when only the base is determined.
    pub growth_base: Option<f64>,
    pub caveats: Vec<String>,
}

impl BoundReport {
    fn new(kind: BoundKind) -> BoundReport {
        BoundReport {
            kind,
            inputs: BTreeMap::new(),
            lower: None,
            upper: None,
            integer_lower: None,
            c_r: None,
            growth_base: None,
            caveats: Vec::new(),
        }
    }

    fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    fn with_lower(mut self, value: f64) -> Self {
        let lower = round_down(value);
        self.lower = Some(lower);
        // a value within rounding noise of an integer is taken as that integer
        let nearest = value.round();
        let integer = if lower <= nearest && nearest <= round_up(value) {
            nearest
        } else {
            lower.floor()
        };
        self.integer_lower = Some(integer.max(0.0) as u64);
        self
    }

    fn caveat(mut self, text: impl Into<String>) -> Self {
        self.caveats.push(text.into());
        self
    }

    fn density_caveat(self, pi: &DensityInput) -> Self {
        match pi.caveat() {
            Some(text) => self.caveat(text),
            None => self,
        }
    }
}

/// `((r-2)!/e)^(1/(r-1))`.
pub fn c_r(r: usize) -> f64 {
    assert!(r >= 2, "uniformity must be at least 2");
    let factorial: f64 = (1..=r - 2).map(|i| i as f64).product();
    (factorial / std::f64::consts::E).powf(1.0 / (r - 1) as f64)
}

/// `R_ℓ(H, k) >= c_r · (1 - π(H))^(-k/(r-1))`.
pub fn exponential_lower_bound(pi: DensityInput, r: usize, k: usize) -> Result<BoundReport> {
    pi.check()?;
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    let cr = c_r(r);
    let value = cr * (1.0 - pi.value).powf(-(k as f64) / (r - 1) as f64);
    let mut report = BoundReport::new(BoundKind::ExponentialLower)
        .input("pi", pi.value)
        .input("r", r as f64)
        .input("k", k as f64)
        .with_lower(value)
        .density_caveat(&pi);
    report.c_r = Some(cr);
    if pi.value == 0.0 {
        report = report.caveat("vacuous: π(H) = 0 (r-partite pattern) leaves only the constant c_r");
    }
    Ok(report)
}

/// `e^sqrt(k ln(χ-1)/(4r)) <= R_ℓ(H, k) <= (1 - π(H) + o(1))^(-k·m(H))`,
/// evaluated with the o(1) term dropped.
pub fn chromatic_density_bounds(
    chi: usize,
    m: Ratio<i64>,
    pi: DensityInput,
    r: usize,
    k: usize,
) -> Result<BoundReport> {
    if chi < 2 {
        return Err(Error::InvalidArgument(format!(
            "chromatic number must be at least 2, got {chi}"
        )));
    }
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    pi.check()?;
    let m_value = *m.numer() as f64 / *m.denom() as f64;
    let lower = (k as f64 * ((chi - 1) as f64).ln() / (4 * r) as f64).sqrt().exp();
    let upper = (1.0 - pi.value).powf(-(k as f64) * m_value);
    let mut report = BoundReport::new(BoundKind::ChromaticDensity)
        .input("chi", chi as f64)
        .input("m", m_value)
        .input("pi", pi.value)
        .input("r", r as f64)
        .input("k", k as f64)
        .with_lower(lower)
        .caveat("upper bound holds only up to a (1 - π + o(1)) base as k grows; o(1) dropped")
        .density_caveat(&pi);
    report.upper = Some(round_up(upper));
    if chi == 2 {
        report = report.caveat("vacuous lower bound: χ(H) = 2 gives e^0 = 1");
    }
    Ok(report)
}

/// Same as [`chromatic_density_bounds`] with χ, m and r computed from the
/// pattern. Rejects patterns whose m(H) contradicts `m(H) > 1/(r-1)` for
/// non-r-partite patterns.
pub fn chromatic_density_bounds_for(pattern: &Hypergraph, pi: DensityInput, k: usize) -> Result<BoundReport> {
    let r = pattern.r();
    let m = m_parameter(pattern)?;
    check_m_parameter(m, r, !pattern.is_r_partite())?;
    chromatic_density_bounds(pattern.weak_chromatic_number(), m, pi, r, k)
}

/// For a non-r-partite pattern m(H) must exceed 1/(r-1).
pub fn check_m_parameter(m: Ratio<i64>, r: usize, non_r_partite: bool) -> Result<()> {
    if non_r_partite && m <= Ratio::new(1, r as i64 - 1) {
        return Err(Error::InvalidArgument(format!(
            "m(H) = {m} must exceed 1/{} for a pattern that is not r-partite",
            r - 1
        )));
    }
    Ok(())
}

/// `s^k / e <= R_ℓ(H_s, k) <= s^k + 1` for the family of graphs with
/// chromatic number above `s`.
pub fn family_bounds(s: usize, k: usize) -> Result<BoundReport> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s must be at least 2, got {s}")));
    }
    let power = (s as f64).powi(k as i32);
    let mut report = BoundReport::new(BoundKind::ChromaticFamily)
        .input("s", s as f64)
        .input("k", k as f64)
        .with_lower(power / std::f64::consts::E);
    report.c_r = Some(c_r(2));
    report.upper = Some(round_up(power + 1.0));
    Ok(report)
}

/// List size Ramsey number `>= (1 - π)^(-k)`; the list degree Ramsey number
/// grows like `(1 - π)^(-k)` up to an unspecified constant, so only the
/// base `1/(1 - π)` is reported for it.
pub fn size_degree_lower_bounds(pi: DensityInput, k: usize) -> Result<BoundReport> {
    pi.check()?;
    let base = 1.0 / (1.0 - pi.value);
    let mut report = BoundReport::new(BoundKind::SizeDegree)
        .input("pi", pi.value)
        .input("k", k as f64)
        .with_lower(base.powi(k as i32))
        .caveat("degree variant: Ω((1 - π)^(-k)) with an unspecified constant; only the growth base is reported")
        .density_caveat(&pi);
    report.growth_base = Some(base);
    if pi.value == 0.0 {
        report = report.caveat("vacuous: π(H) = 0 gives a size bound of 1");
    }
    Ok(report)
}

/// Local lemma condition on an arbitrary host. Bad events of disjoint
/// edges are independent, so `d` is the largest number of other edges
/// meeting a given edge. On a complete host the distinguished-vertex
/// dependency degree is smaller and is used instead; both are reported.
pub fn lll_host_feasibility(host: &Hypergraph, k: usize, target: &Hypergraph) -> Result<FeasibilityReport> {
    if host.r() != target.r() {
        return Err(Error::UniformityMismatch {
            pattern: target.r(),
            host: host.r(),
        });
    }
    let edges: Vec<_> = host.edges().collect();
    let intersecting = edges
        .iter()
        .map(|e| {
            edges
                .iter()
                .filter(|f| *f != e && f.vertices().iter().any(|&v| e.contains(v)))
                .count() as u128
        })
        .max()
        .unwrap_or(0);
    let refined = (host.is_complete() && host.n() >= host.r()).then(|| refined_dependency_degree(host.n(), host.r()));
    let d = refined.unwrap_or(intersecting);
    let mut report = evaluate_condition(host.n(), host.r(), k, target, d)?;
    report.d_intersecting = Some(intersecting);
    report.d_refined = refined;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::lll_feasibility;
    use std::f64::consts::E;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn c_r_values() {
        assert!(close(c_r(2), 1.0 / E, 1e-15));
        assert!(close(c_r(3), (-0.5f64).exp(), 1e-15));
        assert!(close(c_r(4), (2.0 / E).powf(1.0 / 3.0), 1e-15));
    }

    #[test]
    fn exponential_lower_examples() {
        let rep = exponential_lower_bound(DensityInput::exact(0.5), 2, 5).unwrap();
        assert!(close(rep.lower.unwrap(), 32.0 / E, 1e-9));
        assert_eq!(rep.integer_lower, Some(11));
        assert!(rep.caveats.is_empty());

        let rep = exponential_lower_bound(DensityInput::exact(0.0), 2, 10).unwrap();
        assert!(close(rep.lower.unwrap(), 1.0 / E, 1e-9));
        assert_eq!(rep.caveats.len(), 1);

        let rep = exponential_lower_bound(DensityInput::exact(0.5), 3, 3).unwrap();
        assert!(close(rep.lower.unwrap(), (-0.5f64).exp() * 2f64.powf(1.5), 1e-9));
        assert!(close(rep.lower.unwrap(), 1.72, 0.005));

        assert!(exponential_lower_bound(DensityInput::exact(1.0), 2, 3).is_err());
    }

    #[test]
    fn table_estimates_are_flagged() {
        let rep = exponential_lower_bound(DensityInput::from_table(4.0 / 7.0, 8), 2, 3).unwrap();
        assert!(rep.caveats.iter().any(|c| c.contains("n <= 8")));
    }

    #[test]
    fn chromatic_density_examples() {
        let rep = chromatic_density_bounds(3, Ratio::new(2, 1), DensityInput::exact(0.5), 2, 5).unwrap();
        assert!(close(rep.lower.unwrap(), (5.0 * 2f64.ln() / 8.0).sqrt().exp(), 1e-9));
        assert!(close(rep.lower.unwrap(), 1.93, 0.005));
        assert!(close(rep.upper.unwrap(), 1024.0, 1e-9));
        assert!(rep.upper.unwrap() >= 1024.0);

        let rep = chromatic_density_bounds(2, Ratio::new(1, 1), DensityInput::exact(0.0), 2, 9).unwrap();
        assert!(close(rep.lower.unwrap(), 1.0, 1e-12));
        assert!(rep.caveats.iter().any(|c| c.contains("vacuous")));

        assert!(chromatic_density_bounds(1, Ratio::new(2, 1), DensityInput::exact(0.5), 2, 5).is_err());
    }

    #[test]
    fn chromatic_density_from_pattern() {
        let rep =
            chromatic_density_bounds_for(&Hypergraph::complete_graph(4), DensityInput::exact(2.0 / 3.0), 2).unwrap();
        assert_eq!(rep.inputs["chi"], 4.0);
        assert_eq!(rep.inputs["m"], 2.5);
        assert!(close(rep.upper.unwrap(), 3f64.powf(5.0), 1e-6));
    }

    #[test]
    fn m_validation() {
        assert!(check_m_parameter(Ratio::new(2, 1), 2, true).is_ok());
        assert!(check_m_parameter(Ratio::new(1, 1), 2, true).is_err());
        assert!(check_m_parameter(Ratio::new(1, 1), 2, false).is_ok());
        assert!(check_m_parameter(Ratio::new(1, 2), 3, true).is_err());
    }

    #[test]
    fn family_examples() {
        for (s, k, lo, hi) in [
            (2, 1, 0.736, 3.0),
            (2, 3, 2.94, 9.0),
            (3, 2, 3.31, 10.0),
            (2, 2, 1.47, 5.0),
        ] {
            let rep = family_bounds(s, k).unwrap();
            assert!(close(rep.lower.unwrap(), lo, 0.005), "{s} {k}");
            assert!(close(rep.upper.unwrap(), hi, 1e-9));
            assert!(rep.lower.unwrap() <= rep.upper.unwrap());
        }
        assert!(family_bounds(1, 2).is_err());
    }

    #[test]
    fn size_degree_examples() {
        let rep = size_degree_lower_bounds(DensityInput::exact(0.5), 4).unwrap();
        assert!(close(rep.lower.unwrap(), 16.0, 1e-9));
        assert_eq!(rep.integer_lower, Some(16));
        assert!(close(rep.growth_base.unwrap(), 2.0, 1e-12));
        let rep = size_degree_lower_bounds(DensityInput::exact(0.0), 10).unwrap();
        assert!(close(rep.lower.unwrap(), 1.0, 1e-12));
        assert!(rep.caveats.iter().any(|c| c.contains("vacuous")));
        let rep = size_degree_lower_bounds(DensityInput::exact(2.0 / 3.0), 3).unwrap();
        assert!(close(rep.lower.unwrap(), 27.0, 1e-9));
    }

    #[test]
    fn host_feasibility_complete() {
        for n in [5, 10, 24] {
            let host = Hypergraph::complete_graph(n);
            let rep = lll_host_feasibility(&host, 6, &Hypergraph::complete_graph(2)).unwrap();
            assert_eq!(rep.d_intersecting, Some(2 * (n as u128 - 2)));
            assert_eq!(rep.d_refined, Some(n as u128 - 2));
            let direct = lll_feasibility(n, 2, 6, &Hypergraph::complete_graph(2)).unwrap();
            assert_eq!(rep.d, direct.d);
            assert_eq!(rep.condition_value, direct.condition_value);
            assert_eq!(rep.feasible, direct.feasible);
        }
    }

    #[test]
    fn host_feasibility_matching_and_star() {
        let matching = Hypergraph::from_edges(2, 6, [[0, 1], [2, 3], [4, 5]]).unwrap();
        let rep = lll_host_feasibility(&matching, 2, &Hypergraph::complete_graph(2)).unwrap();
        assert_eq!(rep.d, 0);
        assert!(close(rep.condition_value, E / 4.0, 1e-12));
        assert!(rep.feasible);

        for delta in [3usize, 5, 8] {
            let star = Hypergraph::star(delta);
            for k in 1..8 {
                let rep = lll_host_feasibility(&star, k, &Hypergraph::complete_graph(2)).unwrap();
                assert_eq!(rep.d, delta as u128 - 1);
                let expect = E * 2f64.powi(-(k as i32)) * delta as f64 <= 1.0;
                assert_eq!(rep.feasible, expect, "delta {delta} k {k}");
            }
        }
    }
}
