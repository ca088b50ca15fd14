//! Max Min Agreements by non-oblivious local search.
//!
//! Weights are first reduced so that every edge touches a vertex of minimum
//! total weight `c*`. The search then flips single vertices of a two-sided
//! cut while some vertex agrees with less than `(1/2 - ε)·c*` of its weight.
//! Each flip raises the potential `Φ = Σ agree(u)` by at least `4ε·c*`, and
//! `Φ <= 2n·c*`, so at most `n/(2ε)` flips happen.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{
    agreement_vector, evaluate_objective, total_incident_weight, Clustering, LocalObjective, SignedGraph,
};

/// Absolute slack in the loop guard.
pub const GUARD_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AgreementsError {
    #[error("epsilon must lie in (0, 1/2), got {0}")]
    InternalEpsilon(f64),
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
    #[error("start set has {got} entries, graph has {expected} vertices")]
    StartSize { expected: usize, got: usize },
}

/// Graph with reduced weights, the tight set `T` and `c*`.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub graph: SignedGraph,
    /// `in_t[u]` is true when `u` has total weight `c*`.
    pub in_t: Vec<bool>,
    pub c_star: f64,
}

impl ReducedInstance {
    pub fn t_set(&self) -> Vec<usize> {
        (0..self.in_t.len()).filter(|&u| self.in_t[u]).collect()
    }
}

/// One pass over the edges by index: an edge with both endpoints outside `T`
/// loses `min(weight, slack(u), slack(v))`, where `slack = c(u) - c*`; an
/// endpoint whose slack runs out joins `T`. Edges reduced to zero are
/// dropped.
pub fn reduce_weights(graph: &SignedGraph) -> ReducedInstance {
    let mut c = total_incident_weight(graph);
    let c_star = c.iter().copied().fold(f64::INFINITY, f64::min);
    let mut in_t: Vec<bool> = c.iter().map(|&x| x == c_star).collect();
    let mut weights: Vec<f64> = graph.edges().iter().map(|e| e.weight).collect();
    for (i, e) in graph.edges().iter().enumerate() {
        if in_t[e.u] || in_t[e.v] {
            continue;
        }
        let (su, sv) = (c[e.u] - c_star, c[e.v] - c_star);
        let r = weights[i].min(su).min(sv);
        weights[i] -= r;
        for (x, s) in [(e.u, su), (e.v, sv)] {
            if r == s {
                c[x] = c_star;
                in_t[x] = true;
            } else {
                c[x] -= r;
            }
        }
    }
    let reduced = graph.reweighted(&weights, true).expect("reduced weights stay valid");
    ReducedInstance { graph: reduced, in_t, c_star }
}

/// A two-sided cut `{S, V∖S}` with its agreement vector and potential.
#[derive(Clone, Debug)]
pub struct CutState {
    in_s: Vec<bool>,
    agree: Vec<f64>,
    potential: f64,
    iteration: usize,
}

impl CutState {
    pub fn new(graph: &SignedGraph, in_s: Vec<bool>) -> Self {
        let agree = agreement_vector(graph, &Self::clustering_of(&in_s));
        let potential = agree.iter().sum();
        CutState { in_s, agree, potential, iteration: 0 }
    }

    fn clustering_of(in_s: &[bool]) -> Clustering {
        Clustering::from_labels(in_s)
    }

    pub fn clustering(&self) -> Clustering {
        Self::clustering_of(&self.in_s)
    }

    pub fn in_s(&self) -> &[bool] {
        &self.in_s
    }

    pub fn agree(&self) -> &[f64] {
        &self.agree
    }

    pub fn potential(&self) -> f64 {
        self.potential
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Moves `u` to the other side; `u`'s agreement becomes its previous
    /// disagreement and each neighbor gains or loses the shared edge.
    pub fn flip(&mut self, graph: &SignedGraph, u: usize) {
        let mut own = 0.0;
        for &ei in graph.incident(u) {
            let e = graph.edge(ei);
            let v = e.other(u);
            let agreed = e.agrees(self.in_s[u] == self.in_s[v]);
            if agreed {
                self.agree[v] -= e.weight;
            } else {
                self.agree[v] += e.weight;
                own += e.weight;
            }
        }
        let delta = own - self.agree[u];
        self.agree[u] = own;
        self.potential += 2.0 * delta;
        self.in_s[u] = !self.in_s[u];
        self.iteration += 1;
    }
}

/// One recorded flip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry {
    pub iteration: usize,
    pub vertex: usize,
    /// Potential after the flip.
    pub potential: f64,
}

/// `iter u Φ` lines, one per flip.
pub fn format_trace(trace: &[TraceEntry]) -> String {
    let mut out = String::new();
    for t in trace {
        let _ = writeln!(out, "{} {} {}", t.iteration, t.vertex, t.potential);
    }
    out
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub state: CutState,
    pub initial_potential: f64,
    pub trace: Vec<TraceEntry>,
}

impl SearchOutcome {
    pub fn iterations(&self) -> usize {
        self.state.iteration()
    }
}

/// `ε` for which the search threshold is `1/(2 + caller_eps)`.
pub fn internal_epsilon(caller_eps: f64) -> f64 {
    caller_eps / (4.0 + 2.0 * caller_eps)
}

/// Runs the search on the reduced graph from the cut `s0` (`true` = in `S`).
/// Violators are flipped smallest id first.
pub fn non_oblivious_local_search(
    reduced: &ReducedInstance,
    eps_int: f64,
    s0: Vec<bool>,
) -> Result<SearchOutcome, AgreementsError> {
    if !(eps_int > 0.0 && eps_int < 0.5) {
        return Err(AgreementsError::InternalEpsilon(eps_int));
    }
    let g = &reduced.graph;
    if s0.len() != g.n() {
        return Err(AgreementsError::StartSize { expected: g.n(), got: s0.len() });
    }
    let threshold = (0.5 - eps_int) * reduced.c_star - GUARD_SLACK;
    let mut state = CutState::new(g, s0);
    let initial_potential = state.potential();
    let mut trace = Vec::new();
    while let Some(u) = (0..g.n()).find(|&u| state.agree[u] < threshold) {
        state.flip(g, u);
        trace.push(TraceEntry { iteration: state.iteration(), vertex: u, potential: state.potential() });
    }
    Ok(SearchOutcome { state, initial_potential, trace })
}

/// Evidence for the returned value.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub eps: f64,
    pub eps_int: f64,
    pub c_star: f64,
    /// `(1/2 - ε_int)·c*`, which equals `c*/(2 + ε)`.
    pub threshold: f64,
    pub reduced_min_agree: f64,
    /// Minimum agreement on the original weights; never below the reduced
    /// one because restoring weights only adds agreeing weight.
    pub original_min_agree: f64,
    pub iterations: usize,
    pub iteration_bound: usize,
}

impl Certificate {
    /// True when every recorded bound holds.
    pub fn holds(&self) -> bool {
        self.reduced_min_agree >= self.threshold - GUARD_SLACK
            && self.original_min_agree >= self.reduced_min_agree - GUARD_SLACK
            && self.iterations <= self.iteration_bound
    }
}

#[derive(Clone, Debug)]
pub struct AgreementsOutcome {
    pub clustering: Clustering,
    pub value: f64,
    pub certificate: Certificate,
    pub reduced: ReducedInstance,
    pub trace: Vec<TraceEntry>,
}

/// Max Min Agreements within a factor `1/(2 + eps)`.
pub fn solve_maxmin_agreements(graph: &SignedGraph, eps: f64) -> Result<AgreementsOutcome, AgreementsError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(AgreementsError::Epsilon(eps));
    }
    let eps_int = internal_epsilon(eps);
    let reduced = reduce_weights(graph);
    let search = non_oblivious_local_search(&reduced, eps_int, vec![false; graph.n()])?;
    let clustering = search.state.clustering();
    let reduced_min_agree = evaluate_objective(LocalObjective::Min, search.state.agree());
    let value = evaluate_objective(LocalObjective::Min, &agreement_vector(graph, &clustering));
    let n = graph.n() as f64;
    let certificate = Certificate {
        eps,
        eps_int,
        c_star: reduced.c_star,
        threshold: (0.5 - eps_int) * reduced.c_star,
        reduced_min_agree,
        original_min_agree: value,
        iterations: search.iterations(),
        iteration_bound: (n / (2.0 * eps_int)).ceil() as usize,
    };
    Ok(AgreementsOutcome { clustering, value, certificate, reduced, trace: search.trace })
}
