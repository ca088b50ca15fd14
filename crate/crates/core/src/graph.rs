//! Signed graphs, clusterings and per-vertex disagreement/agreement accounting.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Label carried by an edge: `Plus` edges want to be inside a cluster, `Minus`
/// edges want to be cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub sign: Sign,
}

impl SignedEdge {
    pub fn new(u: usize, v: usize, weight: f64, sign: Sign) -> Self {
        SignedEdge { u, v, weight, sign }
    }

    pub fn plus(u: usize, v: usize, weight: f64) -> Self {
        Self::new(u, v, weight, Sign::Plus)
    }

    pub fn minus(u: usize, v: usize, weight: f64) -> Self {
        Self::new(u, v, weight, Sign::Minus)
    }

    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Whether the edge is classified correctly when its endpoints are
    /// (`same = true`) or are not co-clustered.
    #[inline]
    pub fn agrees(&self, same: bool) -> bool {
        match self.sign {
            Sign::Plus => same,
            Sign::Minus => !same,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge {index}: endpoint {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index}: weight {weight} is negative or not finite")]
    BadWeight { index: usize, weight: f64 },
    #[error("edge {index}: parallel edge between {u} and {v} (first seen as edge {first})")]
    ParallelEdge { index: usize, u: usize, v: usize, first: usize },
    #[error("clustering covers {got} vertices, graph has {expected}")]
    ClusteringSize { expected: usize, got: usize },
    #[error("vertex {vertex} appears in more than one cluster")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} is not assigned to any cluster")]
    MissingVertex { vertex: usize },
}

/// Undirected graph whose edges carry a nonnegative weight and a sign.
///
/// Immutable after construction. An incident-edge index is built once so every
/// algorithm can scan the neighbourhood of a vertex directly.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<SignedEdge>,
    incident: Vec<Vec<usize>>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<SignedEdge>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut incident = vec![Vec::new(); n];
        let mut pair_index = HashMap::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { index, vertex: e.u });
            }
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return Err(GraphError::BadWeight { index, weight: e.weight });
            }
            let key = pair_key(e.u, e.v);
            if let Some(&first) = pair_index.get(&key) {
                return Err(GraphError::ParallelEdge { index, u: e.u, v: e.v, first });
            }
            pair_index.insert(key, index);
            incident[e.u].push(index);
            incident[e.v].push(index);
        }
        Ok(SignedGraph { n, edges, incident, pair_index })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> &SignedEdge {
        &self.edges[index]
    }

    /// Indices of the edges touching `u`.
    #[inline]
    pub fn incident(&self, u: usize) -> &[usize] {
        &self.incident[u]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.pair_index.get(&pair_key(u, v)).copied()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn count_sign(&self, sign: Sign) -> usize {
        self.edges.iter().filter(|e| e.sign == sign).count()
    }

    /// Every unordered pair of vertices is joined by an edge.
    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    /// All weights equal exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    /// Copy of the graph with new edge weights; edges whose new weight is zero
    /// are dropped when `drop_zero` is set.
    pub fn reweighted(&self, weights: &[f64], drop_zero: bool) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), self.m(), "one weight per edge");
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .filter(|(_, &w)| !(drop_zero && w <= 0.0))
            .map(|(e, &w)| SignedEdge { weight: w, ..*e })
            .collect();
        SignedGraph::new(self.n, edges)
    }
}

#[inline]
fn pair_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Side of a bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSides {
    side: Vec<Side>,
}

impl BipartiteSides {
    /// Validates that every edge of `graph` crosses sides.
    pub fn new(graph: &SignedGraph, side: Vec<Side>) -> Option<Self> {
        if side.len() != graph.n() {
            return None;
        }
        let crosses = graph.edges().iter().all(|e| side[e.u] != side[e.v]);
        crosses.then_some(BipartiteSides { side })
    }

    /// Vertices `0..left` are `Left`, the rest `Right`.
    pub fn split_at(graph: &SignedGraph, left: usize) -> Option<Self> {
        let side = (0..graph.n()).map(|u| if u < left { Side::Left } else { Side::Right }).collect();
        Self::new(graph, side)
    }

    /// Two-colours the graph by breadth-first search; the smallest vertex of
    /// each connected component is placed on the left.
    pub fn infer(graph: &SignedGraph) -> Option<Self> {
        let n = graph.n();
        let mut side: Vec<Option<Side>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(Side::Left);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                let flip = if su == Side::Left { Side::Right } else { Side::Left };
                for &ei in graph.incident(u) {
                    let v = graph.edge(ei).other(u);
                    match side[v] {
                        None => {
                            side[v] = Some(flip);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(BipartiteSides { side: side.into_iter().map(Option::unwrap).collect() })
    }

    #[inline]
    pub fn side(&self, u: usize) -> Side {
        self.side[u]
    }

    #[inline]
    pub fn is_left(&self, u: usize) -> bool {
        self.side[u] == Side::Left
    }

    pub fn left(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.side.len()).filter(move |&u| self.is_left(u))
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    /// Every left-right pair is joined by an edge.
    pub fn is_complete_bipartite(&self, graph: &SignedGraph) -> bool {
        let left = self.side.iter().filter(|&&s| s == Side::Left).count();
        graph.m() == left * (self.side.len() - left)
    }
}

/// A partition of the vertex set. Labels are normalised to first-occurrence
/// order, so they always form the range `0..num_clusters`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clustering {
    labels: Vec<usize>,
    num_clusters: usize,
}

impl Clustering {
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut map = HashMap::new();
        let labels: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Clustering { labels, num_clusters: map.len() }
    }

    /// Builds a clustering from explicit clusters; each vertex of `0..n` must
    /// appear exactly once.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self, GraphError> {
        let mut labels = vec![usize::MAX; n];
        for (k, cluster) in clusters.iter().enumerate() {
            for &u in cluster {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange { index: k, vertex: u, n });
                }
                if labels[u] != usize::MAX {
                    return Err(GraphError::DuplicateVertex { vertex: u });
                }
                labels[u] = k;
            }
        }
        if let Some(vertex) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(GraphError::MissingVertex { vertex });
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn single(n: usize) -> Self {
        Clustering { labels: vec![0; n], num_clusters: usize::from(n > 0) }
    }

    pub fn singletons(n: usize) -> Self {
        Clustering { labels: (0..n).collect(), num_clusters: n }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn label(&self, u: usize) -> usize {
        self.labels[u]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_clusters(&self) -> usize {
        self.num_clusters
    }

    #[inline]
    pub fn same(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (u, &k) in self.labels.iter().enumerate() {
            out[k].push(u);
        }
        out
    }
}

/// Aggregator applied to a per-vertex vector. `Max` and `Sum` are the
/// minimisation objectives, `Min` and `Sum` the maximisation ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalObjective {
    Max,
    Min,
    Sum,
}

impl LocalObjective {
    pub fn minimizable(self) -> bool {
        matches!(self, LocalObjective::Max | LocalObjective::Sum)
    }

    pub fn maximizable(self) -> bool {
        matches!(self, LocalObjective::Min | LocalObjective::Sum)
    }

    pub fn name(self) -> &'static str {
        match self {
            LocalObjective::Max => "max",
            LocalObjective::Min => "min",
            LocalObjective::Sum => "sum",
        }
    }
}

impl std::str::FromStr for LocalObjective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(LocalObjective::Max),
            "min" => Ok(LocalObjective::Min),
            "sum" => Ok(LocalObjective::Sum),
            other => Err(format!("unknown objective `{other}` (expected max, min or sum)")),
        }
    }
}

/// Applies `objective` to `values`.
///
/// Panics on an empty vector.
pub fn evaluate_objective(objective: LocalObjective, values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "objective of an empty vector is undefined");
    match objective {
        LocalObjective::Max => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        LocalObjective::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
        LocalObjective::Sum => values.iter().sum(),
    }
}

fn check_cover(graph: &SignedGraph, clustering: &Clustering) {
    assert_eq!(clustering.n(), graph.n(), "clustering covers {} vertices, graph has {}", clustering.n(), graph.n());
}

/// Per-vertex weight of misclassified incident edges.
///
/// Panics if the clustering does not cover exactly the vertices of `graph`.
pub fn disagreement_vector(graph: &SignedGraph, clustering: &Clustering) -> Vec<f64> {
    classified_weight(graph, clustering, false)
}

/// Per-vertex weight of correctly classified incident edges.
///
/// Panics if the clustering does not cover exactly the vertices of `graph`.
pub fn agreement_vector(graph: &SignedGraph, clustering: &Clustering) -> Vec<f64> {
    classified_weight(graph, clustering, true)
}

fn classified_weight(graph: &SignedGraph, clustering: &Clustering, agreeing: bool) -> Vec<f64> {
    check_cover(graph, clustering);
    let mut out = vec![0.0; graph.n()];
    for e in graph.edges() {
        if e.agrees(clustering.same(e.u, e.v)) == agreeing {
            out[e.u] += e.weight;
            out[e.v] += e.weight;
        }
    }
    out
}

/// `c(u)`: total weight of the edges touching each vertex.
pub fn total_incident_weight(graph: &SignedGraph) -> Vec<f64> {
    let mut out = vec![0.0; graph.n()];
    for e in graph.edges() {
        out[e.u] += e.weight;
        out[e.v] += e.weight;
    }
    out
}
