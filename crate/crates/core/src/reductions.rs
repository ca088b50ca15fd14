//! Min Max s-t Cut, Multiway Cut and Multicut as Min Max Disagreements.
//!
//! Base edges become `+` edges; each pair that must be separated gets a `-`
//! edge of weight `W = 1 + Σ base weights`. Any clustering that keeps a
//! required pair together pays at least `W` at that pair's endpoints, while a
//! separating clustering never pays more than the total base weight.

use thiserror::Error;

use crate::graph::{
    disagreement_vector, evaluate_objective, Clustering, LocalObjective, Sign, SignedEdge, SignedGraph,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutKind {
    St { s: usize, t: usize },
    Multiway(Vec<usize>),
    Multicut(Vec<(usize, usize)>),
}

impl CutKind {
    pub fn name(&self) -> &'static str {
        match self {
            CutKind::St { .. } => "st",
            CutKind::Multiway(_) => "multiway",
            CutKind::Multicut(_) => "multicut",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("base graph of a cut problem must contain only + edges (edge {0} is -)")]
    SignedBase(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("pair ({0}, {1}) must have distinct endpoints")]
    DegeneratePair(usize, usize),
    #[error("terminal {0} is listed twice")]
    DuplicateTerminal(usize),
    #[error("base edge {edge} joins the pair ({s}, {t}) that must be separated")]
    SeparatedPairAdjacent { edge: usize, s: usize, t: usize },
    #[error("clustering covers {got} vertices, problem has {expected}")]
    Size { expected: usize, got: usize },
}

#[derive(Clone, Debug)]
pub struct CutProblem {
    base: SignedGraph,
    kind: CutKind,
}

impl CutProblem {
    pub fn new(base: SignedGraph, kind: CutKind) -> Result<Self, CutError> {
        if let Some(i) = base.edges().iter().position(|e| e.sign == Sign::Minus) {
            return Err(CutError::SignedBase(i));
        }
        let n = base.n();
        let in_range = |u: usize| if u < n { Ok(()) } else { Err(CutError::VertexOutOfRange(u)) };
        match &kind {
            CutKind::St { s, t } => {
                in_range(*s)?;
                in_range(*t)?;
                if s == t {
                    return Err(CutError::DegeneratePair(*s, *t));
                }
            }
            CutKind::Multiway(ts) => {
                for (i, &t) in ts.iter().enumerate() {
                    in_range(t)?;
                    if ts[..i].contains(&t) {
                        return Err(CutError::DuplicateTerminal(t));
                    }
                }
            }
            CutKind::Multicut(pairs) => {
                for &(s, t) in pairs {
                    in_range(s)?;
                    in_range(t)?;
                    if s == t {
                        return Err(CutError::DegeneratePair(s, t));
                    }
                }
            }
        }
        Ok(CutProblem { base, kind })
    }

    pub fn base(&self) -> &SignedGraph {
        &self.base
    }

    pub fn kind(&self) -> &CutKind {
        &self.kind
    }

    /// Pairs that must end up in different clusters, deduplicated, in a
    /// canonical order.
    pub fn required_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = match &self.kind {
            CutKind::St { s, t } => vec![(*s, *t)],
            CutKind::Multiway(ts) => {
                let mut out = Vec::new();
                for (i, &a) in ts.iter().enumerate() {
                    for &b in &ts[i + 1..] {
                        out.push((a, b));
                    }
                }
                out
            }
            CutKind::Multicut(ps) => ps.clone(),
        };
        let mut seen = std::collections::HashSet::new();
        pairs.retain(|&(a, b)| seen.insert((a.min(b), a.max(b))));
        pairs
    }
}

#[derive(Clone, Debug)]
pub struct EncodedCut {
    pub graph: SignedGraph,
    pub big_weight: f64,
}

/// Builds the signed instance: base edges as `+`, one `-` edge of weight
/// `W = 1 + Σ base weights` per required pair.
pub fn encode(problem: &CutProblem) -> Result<EncodedCut, CutError> {
    let base = problem.base();
    let big_weight = 1.0 + base.total_weight();
    let mut edges: Vec<SignedEdge> = base.edges().to_vec();
    for (s, t) in problem.required_pairs() {
        if let Some(edge) = base.edge_between(s, t) {
            return Err(CutError::SeparatedPairAdjacent { edge, s, t });
        }
        edges.push(SignedEdge::minus(s, t, big_weight));
    }
    let graph = SignedGraph::new(base.n(), edges).expect("separator edges join non-adjacent pairs");
    Ok(EncodedCut { graph, big_weight })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutDecoding {
    /// Base edges with endpoints in different clusters.
    pub cut_edges: Vec<usize>,
    /// Per-vertex base weight of cut incident edges.
    pub incidence: Vec<f64>,
    /// `max` of `incidence`: the min-max cut objective.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decoded {
    Cut(CutDecoding),
    Violation { s: usize, t: usize },
}

impl Decoded {
    pub fn cut(&self) -> Option<&CutDecoding> {
        match self {
            Decoded::Cut(d) => Some(d),
            Decoded::Violation { .. } => None,
        }
    }
}

/// Reads a clustering of the encoded graph back as a cut of the base graph,
/// or reports the first required pair left in one cluster.
pub fn decode(clustering: &Clustering, problem: &CutProblem) -> Result<Decoded, CutError> {
    let base = problem.base();
    if clustering.n() != base.n() {
        return Err(CutError::Size { expected: base.n(), got: clustering.n() });
    }
    if let Some(&(s, t)) = problem.required_pairs().iter().find(|&&(s, t)| clustering.same(s, t)) {
        return Ok(Decoded::Violation { s, t });
    }
    let cut_edges = (0..base.m()).filter(|&i| !clustering.same(base.edge(i).u, base.edge(i).v)).collect();
    // All base edges are +, so their disagreement is exactly the cut incidence.
    let incidence = disagreement_vector(base, clustering);
    let value = evaluate_objective(LocalObjective::Max, &incidence);
    Ok(Decoded::Cut(CutDecoding { cut_edges, incidence, value }))
}
