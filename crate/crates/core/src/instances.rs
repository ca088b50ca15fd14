//! Deterministic instance generators.
//!
//! Random generators draw from [`SplitMix64`] in a fixed order (pairs in
//! lexicographic order `(0,1), (0,2), …, (n-2,n-1)`), so a seed pins the
//! instance exactly.

use thiserror::Error;

use crate::graph::{BipartiteSides, SignedEdge, SignedGraph};
use crate::reductions::{CutKind, CutProblem};
use crate::rng::SplitMix64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("gap cycle needs n >= 3, got {0}")]
    CycleTooSmall(usize),
    #[error("{0}")]
    Parameter(String),
}

/// Unit-weight cycle `0 - 1 - … - (n-1)` with `+` edges along the path and a
/// single `-` edge closing it from `n-1` back to `0`.
pub fn gap_cycle(n: usize) -> Result<SignedGraph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::CycleTooSmall(n));
    }
    let mut edges: Vec<SignedEdge> = (0..n - 1).map(|i| SignedEdge::plus(i, i + 1, 1.0)).collect();
    edges.push(SignedEdge::minus(n - 1, 0, 1.0));
    Ok(SignedGraph::new(n, edges).expect("cycle is a simple graph"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomSignedParams {
    pub n: usize,
    /// Probability that a vertex pair is joined.
    pub edge_probability: f64,
    /// Probability that a present edge is labelled `+`.
    pub plus_probability: f64,
    /// Weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: u64,
}

impl RandomSignedParams {
    pub fn new(n: usize, plus_probability: f64, max_weight: u64) -> Self {
        RandomSignedParams { n, edge_probability: 0.5, plus_probability, max_weight }
    }

    pub fn with_edge_probability(mut self, p: f64) -> Self {
        self.edge_probability = p;
        self
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if self.n == 0 {
            return Err(InstanceError::Parameter("n must be positive".into()));
        }
        if !prob(self.edge_probability) || !prob(self.plus_probability) {
            return Err(InstanceError::Parameter("probabilities must lie in [0, 1]".into()));
        }
        if self.max_weight == 0 {
            return Err(InstanceError::Parameter("max weight must be at least 1".into()));
        }
        Ok(())
    }
}

/// Erdős–Rényi pair inclusion with a sign bias and integer weights.
///
/// Per pair, in order: one draw for inclusion; if included, one draw for the
/// sign and one for the weight.
pub fn try_random_signed(params: &RandomSignedParams, seed: u64) -> Result<SignedGraph, InstanceError> {
    params.validate()?;
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..params.n {
        for v in u + 1..params.n {
            if !rng.bernoulli(params.edge_probability) {
                continue;
            }
            let plus = rng.bernoulli(params.plus_probability);
            let w = 1 + rng.next_below(params.max_weight);
            let e = if plus { SignedEdge::plus(u, v, w as f64) } else { SignedEdge::minus(u, v, w as f64) };
            edges.push(e);
        }
    }
    Ok(SignedGraph::new(params.n, edges).expect("generated graph is simple"))
}

/// Panicking form of [`try_random_signed`] for test and bench code.
pub fn random_signed(params: &RandomSignedParams, seed: u64) -> SignedGraph {
    try_random_signed(params, seed).expect("valid generator parameters")
}

/// Unweighted complete graph with uniformly random signs.
pub fn complete_random(n: usize, seed: u64) -> SignedGraph {
    random_signed(&RandomSignedParams::new(n, 0.5, 1).with_edge_probability(1.0), seed)
}

/// Unweighted complete bipartite graph, left side `0..n1`, right side
/// `n1..n1+n2`, uniformly random signs.
pub fn complete_bipartite_random(n1: usize, n2: usize, seed: u64) -> (SignedGraph, BipartiteSides) {
    assert!(n1 + n2 >= 1, "bipartite graph needs a vertex");
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(n1 * n2);
    for u in 0..n1 {
        for v in n1..n1 + n2 {
            let e = if rng.bernoulli(0.5) { SignedEdge::plus(u, v, 1.0) } else { SignedEdge::minus(u, v, 1.0) };
            edges.push(e);
        }
    }
    let g = SignedGraph::new(n1 + n2, edges).expect("generated graph is simple");
    let sides = BipartiteSides::split_at(&g, n1).expect("edges cross sides");
    (g, sides)
}

/// Random Min Max s-t Cut instance: a random unsigned graph (all `+`) with
/// `s = 0`, `t = n - 1` and no base edge between them.
pub fn random_st_problem(
    n: usize,
    edge_probability: f64,
    max_weight: u64,
    seed: u64,
) -> Result<CutProblem, InstanceError> {
    if n < 2 {
        return Err(InstanceError::Parameter("s-t problem needs n >= 2".into()));
    }
    let params = RandomSignedParams { n, edge_probability, plus_probability: 1.0, max_weight };
    let g = try_random_signed(&params, seed)?;
    let (s, t) = (0, n - 1);
    let edges = g.edges().iter().filter(|e| !(e.u == s && e.v == t)).copied().collect();
    let base = SignedGraph::new(n, edges).expect("subgraph of a simple graph");
    CutProblem::new(base, CutKind::St { s, t }).map_err(|e| InstanceError::Parameter(e.to_string()))
}
