//! Closed-form and numerically solved quantities attached to a degree
//! distribution: moments, the criticality parameter, survival probability,
//! Poisson limit means, percolation thresholds, and the high-density
//! max-cut constant.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Probability tolerance for distribution validation.
const PMF_SUM_TOL: f64 = 1e-12;

/// Default tolerance for the fixed-point solver.
pub const DEFAULT_XI_TOL: f64 = 1e-12;

/// Iteration cap for the fixed-point solver.
const XI_MAX_ITERS: u64 = 1_000_000;

/// Default tolerance for the `cstar` bisection.
pub const DEFAULT_CSTAR_TOL: f64 = 1e-10;

/// A probability mass function on nonnegative integer degrees with finite
/// support. The source of every theory quantity in this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    /// Sorted by degree; probabilities strictly positive.
    support: Vec<(u32, f64)>,
}

impl DegreeDistribution {
    /// Validate and build a distribution from (degree, probability) pairs.
    /// Zero-probability entries are dropped; probabilities must be
    /// nonnegative and sum to 1 within 1e-12.
    pub fn new<I: IntoIterator<Item = (u32, f64)>>(pmf: I) -> Result<Self> {
        let mut map: BTreeMap<u32, f64> = BTreeMap::new();
        for (d, p) in pmf {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} for degree {d} is not a finite nonnegative number"
                )));
            }
            *map.entry(d).or_insert(0.0) += p;
        }
        let sum: f64 = map.values().sum();
        if (sum - 1.0).abs() > PMF_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1 within {PMF_SUM_TOL:e}"
            )));
        }
        let support: Vec<(u32, f64)> = map.into_iter().filter(|&(_, p)| p > 0.0).collect();
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        Ok(Self { support })
    }

    /// Distribution that is a point mass at degree `d` (a d-regular law).
    pub fn regular(d: u32) -> Self {
        Self { support: vec![(d, 1.0)] }
    }

    /// Renormalize arbitrary nonnegative weights into a distribution.
    pub fn normalized<I: IntoIterator<Item = (u32, f64)>>(weights: I) -> Result<Self> {
        let entries: Vec<(u32, f64)> = weights.into_iter().collect();
        let total: f64 = entries.iter().map(|&(_, w)| w).sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Self::new(entries.into_iter().map(|(d, w)| (d, w / total)))
    }

    /// Truncate a Poisson(lambda) law at cumulative mass >= 1 - 1e-12 and
    /// renormalize. Finite-support stand-in for an infinite-support law.
    pub fn poisson_truncated(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!("poisson rate must be positive, got {lambda}")));
        }
        let mut weights = Vec::new();
        let mut p = (-lambda).exp();
        let mut cum = 0.0;
        let mut k = 0u32;
        loop {
            weights.push((k, p));
            cum += p;
            if cum >= 1.0 - 1e-12 {
                break;
            }
            k += 1;
            p *= lambda / f64::from(k);
        }
        Self::normalized(weights)
    }

    /// Support as (degree, probability) pairs, ascending by degree.
    pub fn support(&self) -> &[(u32, f64)] {
        &self.support
    }

    pub fn max_degree(&self) -> u32 {
        self.support.last().map(|&(d, _)| d).unwrap_or(0)
    }

    pub fn prob(&self, degree: u32) -> f64 {
        self.support
            .binary_search_by_key(&degree, |&(d, _)| d)
            .map(|i| self.support[i].1)
            .unwrap_or(0.0)
    }

    /// Probability generating function g(x) = E[x^D].
    pub fn pgf(&self, x: f64) -> f64 {
        self.support.iter().map(|&(d, p)| p * x.powi(d as i32)).sum()
    }

    /// g'(x) = E[D x^(D-1)].
    pub fn pgf_derivative(&self, x: f64) -> f64 {
        self.support
            .iter()
            .filter(|&&(d, _)| d > 0)
            .map(|&(d, p)| p * f64::from(d) * x.powi(d as i32 - 1))
            .sum()
    }

    /// The size-biased law D*: P(D* = j) = j P(D = j) / E[D].
    pub fn size_biased(&self) -> Result<DegreeDistribution> {
        let (mu, _, _) = moments(self)?;
        DegreeDistribution::new(
            self.support
                .iter()
                .filter(|&&(d, _)| d > 0)
                .map(|&(d, p)| (d, f64::from(d) * p / mu)),
        )
    }

    /// Cumulative-table sampler over the support.
    pub fn sampler(&self) -> DegreeSampler {
        let mut cum = Vec::with_capacity(self.support.len());
        let mut acc = 0.0;
        for &(d, p) in &self.support {
            acc += p;
            cum.push((acc, d));
        }
        // Guard the last bin against rounding.
        if let Some(last) = cum.last_mut() {
            last.0 = f64::INFINITY;
        }
        DegreeSampler { cum }
    }

    /// Parse the text literal format: one "degree probability" pair per
    /// line, `#` starts a comment, blank lines ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let d: u32 = it
                .next()
                .unwrap()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: bad degree: {e}", lineno + 1)))?;
            let p: f64 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing probability", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: bad probability: {e}", lineno + 1)))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("line {}: trailing fields", lineno + 1)));
            }
            pairs.push((d, p));
        }
        Self::new(pairs)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(d, p) in &self.support {
            let _ = writeln!(out, "{d} {p}");
        }
        out
    }

    /// Some(d) when the law is a point mass at d.
    pub fn as_regular(&self) -> Option<u32> {
        if self.support.len() == 1 {
            Some(self.support[0].0)
        } else {
            None
        }
    }
}

/// Precomputed cumulative table for O(log support) degree draws.
#[derive(Debug, Clone)]
pub struct DegreeSampler {
    cum: Vec<(f64, u32)>,
}

impl DegreeSampler {
    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let idx = self.cum.partition_point(|&(c, _)| c < u);
        self.cum[idx.min(self.cum.len() - 1)].1
    }
}

/// Derived scalar parameters of a degree distribution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TheoryParams {
    /// E[D]
    pub mu: f64,
    /// E[D(D-1)]
    pub ed2: f64,
    /// E[D(D-1)] / E[D]
    pub nu: f64,
    /// Smallest fixed point in [0,1] of x -> g'(x)/E[D]
    pub xi: f64,
    /// 1 - g(xi): limiting giant-component fraction
    pub eta: f64,
}

/// First two factorial moments and the criticality parameter
/// nu = E[D(D-1)] / E[D]. Exact finite sums over the support.
pub fn moments(dist: &DegreeDistribution) -> Result<(f64, f64, f64)> {
    let mut mu = 0.0;
    let mut ed2 = 0.0;
    for &(d, p) in dist.support() {
        let d = f64::from(d);
        mu += d * p;
        ed2 += d * (d - 1.0) * p;
    }
    if mu <= 0.0 {
        return Err(Error::DegenerateDistribution);
    }
    Ok((mu, ed2, ed2 / mu))
}

/// Solve for xi, the smallest fixed point in [0,1] of x -> g'(x)/E[D], by
/// monotone fixed-point iteration from 0, and return (xi, eta) with
/// eta = 1 - g(xi). Subcritical and critical laws (nu <= 1) get xi = 1,
/// eta = 0 directly.
pub fn solve_xi_eta(dist: &DegreeDistribution, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (mu, _, nu) = moments(dist)?;
    if nu <= 1.0 {
        return Ok((1.0, 0.0));
    }
    // The map x -> g'(x)/mu is increasing on [0,1], so iterating from 0
    // converges monotonically to the smallest fixed point.
    let mut x = 0.0f64;
    for _ in 0..XI_MAX_ITERS {
        let next = dist.pgf_derivative(x) / mu;
        let delta = (next - x).abs();
        x = next;
        if delta < tol {
            let xi = x.clamp(0.0, 1.0);
            return Ok((xi, 1.0 - dist.pgf(xi)));
        }
    }
    Err(Error::NonConvergence { iterations: XI_MAX_ITERS, last_delta: (dist.pgf_derivative(x) / mu - x).abs() })
}

/// Convenience bundle of all scalar parameters.
pub fn theory_params(dist: &DegreeDistribution, tol: f64) -> Result<TheoryParams> {
    let (mu, ed2, nu) = moments(dist)?;
    let (xi, eta) = solve_xi_eta(dist, tol)?;
    Ok(TheoryParams { mu, ed2, nu, xi, eta })
}

/// Mean of the limiting Poisson law of the distance from bipartiteness in
/// the subcritical regime: (1/4) ln((1+nu)/(1-nu)), valid for 0 <= nu < 1.
pub fn distbip_poisson_mean(nu: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&nu) {
        return Err(Error::Domain(format!("requires 0 <= nu < 1, got {nu}")));
    }
    Ok(0.25 * ((1.0 + nu) / (1.0 - nu)).ln())
}

/// Mean of the limiting Poisson count of length-k cycles: nu^k / (2k).
pub fn cycle_poisson_mean(nu: f64, k: u32) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::Domain(format!("requires nu >= 0, got {nu}")));
    }
    if k == 0 {
        return Err(Error::Domain("cycle length k must be >= 1".into()));
    }
    Ok(nu.powi(k as i32) / (2.0 * f64::from(k)))
}

/// Percolation thresholds for the d-regular law, d >= 3:
/// `p_min(k, d)` where the k-section width transitions, and
/// `p_max(d) = 1/(d-1)` where the max-cut (giant component) transitions.
pub fn percolation_thresholds(k: u32, d: u32) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(Error::Domain(format!("requires k >= 2, got {k}")));
    }
    if d < 3 {
        return Err(Error::Domain(format!("requires d >= 3, got {d}")));
    }
    let base = 1.0 - 1.0 / f64::from(k);
    let df = f64::from(d);
    let p_min = (1.0 - base.powf(1.0 / df)) / (1.0 - base.powf((df - 1.0) / df));
    let p_max = 1.0 / (df - 1.0);
    Ok((p_min, p_max))
}

/// The function whose root in c defines `cstar`:
/// (1/4 - c/sqrt(mu))^-(1/4 - c/sqrt(mu)) (1/4 + c/sqrt(mu))^-(1/4 + c/sqrt(mu)) - 2^(1 - 1/mu).
pub fn cstar_objective(c: f64, mu: f64) -> f64 {
    let s = c / mu.sqrt();
    let a = 0.25 - s;
    let b = 0.25 + s;
    a.powf(-a) * b.powf(-b) - 2f64.powf(1.0 - 1.0 / mu)
}

/// The threshold constant c*(mu) for the high-density max-cut bound,
/// found by bisection on (0, sqrt(mu)/4). The objective is strictly
/// decreasing in c with a sign change inside the bracket for every mu > 2.
pub fn cstar(mu: f64, tol: f64) -> Result<f64> {
    if !(mu > 2.0) {
        return Err(Error::Domain(format!("requires mu > 2, got {mu}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut lo = 1e-9;
    let mut hi = mu.sqrt() / 4.0 - 1e-9;
    debug_assert!(cstar_objective(lo, mu) > 0.0 && cstar_objective(hi, mu) < 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if cstar_objective(mid, mu) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Upper bound n (mu/4 + c sqrt(mu)) on the max-cut in the high-density
/// regime.
pub fn maxcut_upper_bound(n: u64, mu: f64, c: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("requires n >= 1".into()));
    }
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("requires mu > 0, got {mu}")));
    }
    if c < 0.0 {
        return Err(Error::Domain(format!("requires c >= 0, got {c}")));
    }
    Ok(n as f64 * (mu / 4.0 + c * mu.sqrt()))
}
