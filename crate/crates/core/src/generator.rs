//! Configuration-model generation: uniform half-edge pairing, the
//! sequential coalescing construction, percolation, and simple-graph
//! conditioning by rejection.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::rng::{derive_seed, rng_from_seed};
use crate::theory::DegreeDistribution;

/// A degree sequence indexed by vertex. The half-edge sum must be even
/// before a graph can be generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    /// Vertex whose degree was bumped by the parity rule, if any.
    parity_adjusted: Option<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Self {
        Self { degrees, parity_adjusted: None }
    }

    pub fn regular(d: u32, n: usize) -> Self {
        Self::new(vec![d; n])
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Total number of half-edges.
    pub fn stub_count(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }

    /// The vertex bumped by the sampling parity rule, if one was.
    pub fn parity_adjusted(&self) -> Option<usize> {
        self.parity_adjusted
    }

    fn check_even(&self) -> Result<()> {
        if self.stub_count() % 2 != 0 {
            return Err(Error::OddDegreeSum);
        }
        Ok(())
    }
}

/// Outcome report for generation with rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenReport {
    pub seed: u64,
    pub attempts: u32,
    pub simple: bool,
}

/// Draw n i.i.d. degrees from `dist`. If the sum comes out odd, one
/// uniformly chosen vertex has its degree incremented by 1; the fix is
/// recorded on the returned sequence.
pub fn sample_degree_sequence(dist: &DegreeDistribution, n: usize, seed: u64) -> DegreeSequence {
    let mut rng = rng_from_seed(seed);
    let sampler = dist.sampler();
    let degrees: Vec<u32> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    let mut seq = DegreeSequence::new(degrees);
    if seq.stub_count() % 2 != 0 {
        let v = rng.gen_range(0..n);
        seq.degrees[v] += 1;
        seq.parity_adjusted = Some(v);
    }
    seq
}

fn stub_array(seq: &DegreeSequence) -> Vec<u32> {
    let mut stubs = Vec::with_capacity(seq.stub_count() as usize);
    for (v, &d) in seq.degrees().iter().enumerate() {
        for _ in 0..d {
            stubs.push(v as u32);
        }
    }
    stubs
}

/// Uniform configuration model: Fisher-Yates shuffle of the stub array,
/// then pair consecutive entries. Every perfect matching of the half-edges
/// is equally likely.
pub fn generate(seq: &DegreeSequence, seed: u64) -> Result<MultiGraph> {
    seq.check_even()?;
    let mut rng = rng_from_seed(seed);
    let mut stubs = stub_array(seq);
    stubs.shuffle(&mut rng);
    let edges: Vec<(u32, u32)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    MultiGraph::from_edges(seq.n(), edges)
}

/// Sequential coalescing construction. Starts from one degree-one stub
/// vertex per half-edge under a uniform matching; then, following `order`
/// (a permutation of the indices with degree > 1), repeatedly draws that
/// many unlabeled stub vertices uniformly at random and merges them into
/// the labeled vertex; finally the leftover stub vertices are labeled with
/// the degree-one indices at random. The output law is identical to
/// [`generate`].
pub fn generate_sequential(seq: &DegreeSequence, order: &[usize], seed: u64) -> Result<MultiGraph> {
    seq.check_even()?;
    let n = seq.n();
    let degrees = seq.degrees();

    let mut expected: Vec<usize> =
        (0..n).filter(|&v| degrees[v] > 1).collect();
    let mut given: Vec<usize> = order.to_vec();
    given.sort_unstable();
    expected.sort_unstable();
    if given != expected {
        return Err(Error::InvalidArgument(
            "order must be a permutation of the vertex indices with degree > 1".into(),
        ));
    }

    let total = seq.stub_count() as usize;
    let mut rng = rng_from_seed(seed);

    // (S1) uniform matching of the stub vertices 0..total.
    let mut stubs: Vec<u32> = (0..total as u32).collect();
    stubs.shuffle(&mut rng);

    // label[s] = final vertex index of stub vertex s.
    let mut label: Vec<u32> = vec![u32::MAX; total];
    // Pool of still-unlabeled stub vertices; draws are partial
    // Fisher-Yates picks so each subset is uniform.
    let mut pool: Vec<u32> = (0..total as u32).collect();

    let mut draw = |pool: &mut Vec<u32>, rng: &mut crate::rng::Rng| -> u32 {
        let i = rng.gen_range(0..pool.len());
        pool.swap_remove(i)
    };

    // (S2) coalesce degree-one stub vertices into each labeled vertex.
    for &v in order {
        for _ in 0..degrees[v] {
            let s = draw(&mut pool, &mut rng);
            label[s as usize] = v as u32;
        }
    }

    // (S3) the remaining stub vertices become the degree-one vertices,
    // assigned at random.
    let mut one_indices: Vec<u32> =
        (0..n as u32).filter(|&v| degrees[v as usize] == 1).collect();
    one_indices.shuffle(&mut rng);
    debug_assert_eq!(one_indices.len(), pool.len());
    for (&s, &v) in pool.iter().zip(one_indices.iter()) {
        label[s as usize] = v;
    }

    let edges: Vec<(u32, u32)> = stubs
        .chunks_exact(2)
        .map(|c| (label[c[0] as usize], label[c[1] as usize]))
        .collect();
    MultiGraph::from_edges(n, edges)
}

/// Identity order on the indices with degree > 1, the default order for
/// [`generate_sequential`].
pub fn identity_order(seq: &DegreeSequence) -> Vec<usize> {
    (0..seq.n()).filter(|&v| seq.degrees()[v] > 1).collect()
}

/// Keep every edge (loops included) independently with probability `p`.
/// The vertex set is unchanged.
pub fn percolate(g: &MultiGraph, p: f64, seed: u64) -> Result<MultiGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("retention probability must lie in [0,1], got {p}")));
    }
    let mut rng = rng_from_seed(seed);
    let kept: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen::<f64>() < p)
        .collect();
    MultiGraph::from_edges(g.n(), kept)
}

/// Rejection-sample a uniform simple graph with the given degrees:
/// regenerate until the pairing has no loops and no parallel edges.
pub fn condition_simple(
    seq: &DegreeSequence,
    seed: u64,
    max_attempts: u32,
) -> Result<(MultiGraph, GenReport)> {
    seq.check_even()?;
    for attempt in 1..=max_attempts {
        let g = generate(seq, derive_seed(seed, u64::from(attempt)))?;
        if g.is_simple() {
            return Ok((g, GenReport { seed, attempts: attempt, simple: true }));
        }
    }
    Err(Error::RejectionExhausted { attempts: max_attempts })
}

/// Probability that a fixed set of `s` half-edges pairs internally in a
/// uniform matching of 2m half-edges: (s-1)!! (2m-s-1)!! / (2m-1)!!, with
/// the odd double factorial and (-1)!! = 1. Computed as a product of
/// ratios so it stays exact-ish at large m.
pub fn matching_probability(s: u64, m: u64) -> Result<f64> {
    if s % 2 != 0 {
        return Err(Error::Domain(format!("half-edge set size must be even, got {s}")));
    }
    if s > 2 * m {
        return Err(Error::Domain(format!("s = {s} exceeds the 2m = {} half-edges", 2 * m)));
    }
    let mut p = 1.0f64;
    for j in 1..=(s / 2) {
        p *= (s + 1 - 2 * j) as f64 / (2 * m + 1 - 2 * j) as f64;
    }
    Ok(p)
}
