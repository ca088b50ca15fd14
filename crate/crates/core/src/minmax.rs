//! Layered clustering for Min Max Disagreements on general weighted graphs.
//!
//! For each guess of `c_max` (the heaviest edge an optimum misclassifies) the
//! disagreement LP is solved with heavier edges pinned, edges are classified
//! by their fractional length, and every component of the short-`+`-edge
//! graph is carved into spheres of the 0/1 shortest-path metric until no long
//! `-` edge has both endpoints inside one piece.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{disagreement_vector, evaluate_objective, Clustering, LocalObjective, Sign, SignedGraph};
use crate::lp::TOLERANCE;
use crate::oracle::{exact_min_local_disagreements, OracleError};
use crate::relaxation::{solve_disagreement_relaxation, MetricSolution, Pin, RelaxationError};

/// Smallest instance the layered rounding is defined for; below it the exact
/// oracle is used instead.
pub const MIN_LAYERED_N: usize = 4;

/// Multiplier of `√n` in the approximation guarantee.
pub const APPROX_FACTOR: f64 = 49.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinmaxError {
    #[error("layered clustering needs at least {MIN_LAYERED_N} vertices, got {0}")]
    TooSmall(usize),
    #[error("pinned relaxation is infeasible for c_max = {0}")]
    Infeasible(f64),
    #[error("no admissible level cut for pair edge {edge} (layer sizes {sizes:?})")]
    NoLevelCut { edge: usize, sizes: Vec<usize> },
    #[error("every c_max guess was infeasible")]
    AllGuessesInfeasible,
    #[error(transparent)]
    Relaxation(RelaxationError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `{0} ∪ {distinct edge weights}`, ascending.
pub fn candidate_cmax_values(graph: &SignedGraph) -> Vec<f64> {
    let mut values: Vec<f64> = std::iter::once(0.0).chain(graph.edges().iter().map(|e| e.weight)).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

/// Pins for a guess: `d = 0` on `+` edges heavier than `c_max`, `d = 1` on
/// heavier `-` edges.
pub fn heavy_pins(graph: &SignedGraph, c_max: f64) -> Vec<Pin> {
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.weight > c_max)
        .map(|(i, e)| match e.sign {
            Sign::Plus => Pin::Zero(i),
            Sign::Minus => Pin::One(i),
        })
        .collect()
}

/// Edge sets by fractional length; each holds ascending edge indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeClassification {
    pub plus_bad: Vec<usize>,
    pub minus_bad: Vec<usize>,
    pub plus_zero: Vec<usize>,
}

impl EdgeClassification {
    pub fn is_plus_bad(&self, edge: usize) -> bool {
        self.plus_bad.binary_search(&edge).is_ok()
    }

    pub fn is_minus_bad(&self, edge: usize) -> bool {
        self.minus_bad.binary_search(&edge).is_ok()
    }

    pub fn is_plus_zero(&self, edge: usize) -> bool {
        self.plus_zero.binary_search(&edge).is_ok()
    }
}

/// Thresholds are `1/√n` and `1 - 1/√n`; values within `τ` of either
/// threshold count as not bad. Zero length means `d <= τ`.
pub fn classify_edges(graph: &SignedGraph, metric: &MetricSolution) -> EdgeClassification {
    let inv = 1.0 / (graph.n() as f64).sqrt();
    let mut out = EdgeClassification::default();
    for (i, e) in graph.edges().iter().enumerate() {
        let d = metric.d(e.u, e.v);
        match e.sign {
            Sign::Plus => {
                if d < inv - TOLERANCE {
                    out.plus_bad.push(i);
                }
                if d <= TOLERANCE {
                    out.plus_zero.push(i);
                }
            }
            Sign::Minus => {
                if d > 1.0 - inv + TOLERANCE {
                    out.minus_bad.push(i);
                }
            }
        }
    }
    out
}

/// `G⁺_bad` with the 0/1 length function: zero on `E⁺_0`, one elsewhere.
#[derive(Clone, Debug)]
pub struct BadPlusGraph {
    adj: Vec<Vec<(usize, u8)>>,
}

impl BadPlusGraph {
    pub fn new(graph: &SignedGraph, classes: &EdgeClassification) -> Self {
        let mut adj = vec![Vec::new(); graph.n()];
        for &i in &classes.plus_bad {
            let e = graph.edge(i);
            let len = u8::from(!classes.is_plus_zero(i));
            adj[e.u].push((e.v, len));
            adj[e.v].push((e.u, len));
        }
        BadPlusGraph { adj }
    }

    /// Builds the graph from explicit `(u, v, zero_length)` triples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, bool)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v, zero) in edges {
            let len = u8::from(!zero);
            adj[u].push((v, len));
            adj[v].push((u, len));
        }
        BadPlusGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, u8)] {
        &self.adj[u]
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// 0/1 shortest paths from `source` through vertices with `live[v]`
    /// (all vertices when `live` is `None`).
    pub fn zero_one_layers(&self, source: usize, live: Option<&[bool]>) -> LayerDecomposition {
        let n = self.n();
        let alive = |v: usize| live.is_none_or(|l| l[v]);
        assert!(alive(source), "source {source} is not live");
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut deque = VecDeque::new();
        dist[source] = Some(0);
        deque.push_back(source);
        while let Some(u) = deque.pop_front() {
            let du = dist[u].unwrap();
            for &(v, len) in &self.adj[u] {
                if !alive(v) {
                    continue;
                }
                let cand = du + len as usize;
                if dist[v].is_none_or(|dv| cand < dv) {
                    dist[v] = Some(cand);
                    if len == 0 {
                        deque.push_front(v);
                    } else {
                        deque.push_back(v);
                    }
                }
            }
        }
        let depth = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); depth + 1];
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                layers[*d].push(v);
            }
        }
        LayerDecomposition { source, layers, dist }
    }
}

/// Layers of the 0/1 distance from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub source: usize,
    /// `layers[j]` holds the vertices at distance exactly `j`, ascending.
    pub layers: Vec<Vec<usize>>,
    /// `None` for vertices that are unreachable or not live.
    pub dist: Vec<Option<usize>>,
}

impl LayerDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }
}

/// Largest admissible cut index, `floor((√n - 1) / 2)`.
pub fn max_level_index(n: usize) -> usize {
    let x = ((n as f64).sqrt() - 1.0) / 2.0;
    if x <= 0.0 {
        0
    } else {
        (x + 1e-12).floor() as usize
    }
}

/// Size bound `16√n` on the three layers around the cut.
pub fn layer_size_bound(n: usize) -> f64 {
    16.0 * (n as f64).sqrt()
}

/// Smallest `j <= floor((√n - 1)/2)` with `|L_j|, |L_{j+1}|, |L_{j+2}| <= 16√n`.
/// Layers past the end count as empty.
pub fn choose_level_cut(layer_sizes: &[usize], n: usize) -> Option<usize> {
    let bound = layer_size_bound(n);
    let size = |j: usize| layer_sizes.get(j).copied().unwrap_or(0) as f64;
    (0..=max_level_index(n)).find(|&j| (j..j + 3).all(|k| size(k) <= bound))
}

/// One sphere carved out of a component.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCut {
    /// Index of the `E⁻_bad` edge whose endpoints triggered the cut.
    pub pair_edge: usize,
    pub target: usize,
    /// 0/1 distance to the target inside the residual set.
    pub target_distance: usize,
    pub decomposition: LayerDecomposition,
    pub j_star: usize,
    pub cluster: Vec<usize>,
}

/// Full record of one layered clustering run.
#[derive(Clone, Debug)]
pub struct LayeredRun {
    pub c_max: f64,
    pub metric: MetricSolution,
    pub classification: EdgeClassification,
    pub cuts: Vec<LevelCut>,
    pub clustering: Clustering,
}

/// Runs the layered clustering for one `c_max` guess.
pub fn layered_clustering(graph: &SignedGraph, c_max: f64) -> Result<LayeredRun, MinmaxError> {
    let n = graph.n();
    if n < MIN_LAYERED_N {
        return Err(MinmaxError::TooSmall(n));
    }
    let pins = heavy_pins(graph, c_max);
    let metric = match solve_disagreement_relaxation(graph, LocalObjective::Max, &pins) {
        Ok(m) => m,
        Err(e) if e.is_infeasible() => return Err(MinmaxError::Infeasible(c_max)),
        Err(e) => return Err(MinmaxError::Relaxation(e)),
    };
    let classification = classify_edges(graph, &metric);
    let bad = BadPlusGraph::new(graph, &classification);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut cuts = Vec::new();
    let mut live = vec![false; n];
    for comp in bad.components() {
        for &v in &comp {
            live[v] = true;
        }
        loop {
            let pair = classification.minus_bad.iter().copied().find(|&i| {
                let e = graph.edge(i);
                live[e.u] && live[e.v]
            });
            let Some(edge) = pair else { break };
            let (source, target) = (graph.edge(edge).u, graph.edge(edge).v);
            let decomposition = bad.zero_one_layers(source, Some(&live));
            let sizes = decomposition.sizes();
            let j_star = choose_level_cut(&sizes, n).ok_or(MinmaxError::NoLevelCut { edge, sizes })?;
            let mut cluster: Vec<usize> = decomposition.layers.iter().take(j_star + 1).flatten().copied().collect();
            cluster.sort_unstable();
            for &v in &cluster {
                live[v] = false;
            }
            let target_distance = decomposition.dist[target].unwrap_or(usize::MAX);
            clusters.push(cluster.clone());
            cuts.push(LevelCut { pair_edge: edge, target, target_distance, decomposition, j_star, cluster });
        }
        let rest: Vec<usize> = comp.iter().copied().filter(|&v| live[v]).collect();
        for &v in &rest {
            live[v] = false;
        }
        if !rest.is_empty() {
            clusters.push(rest);
        }
    }
    let clustering = Clustering::from_clusters(n, &clusters).expect("spheres partition the vertex set");
    Ok(LayeredRun { c_max, metric, classification, cuts, clustering })
}

/// Outcome of one guess in the search loop.
#[derive(Clone, Debug)]
pub struct GuessOutcome {
    pub c_max: f64,
    /// `None` when the pinned relaxation was infeasible.
    pub value: Option<f64>,
    pub lp_value: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct MinmaxOutcome {
    pub clustering: Clustering,
    pub value: f64,
    /// Guess that produced the returned clustering; `None` when the exact
    /// oracle was used.
    pub c_max: Option<f64>,
    /// Unpinned LP optimum, a lower bound on the integral optimum.
    pub lp_bound: Option<f64>,
    pub guesses: Vec<GuessOutcome>,
}

/// Tries every `c_max` guess and keeps the best clustering (ties keep the
/// smaller guess). Graphs with fewer than four vertices are solved exactly.
pub fn solve_minmax(graph: &SignedGraph) -> Result<MinmaxOutcome, MinmaxError> {
    solve_minmax_jobs(graph, 1)
}

/// As [`solve_minmax`], spreading the guesses over up to `jobs` threads. The
/// result does not depend on `jobs`.
pub fn solve_minmax_jobs(graph: &SignedGraph, jobs: usize) -> Result<MinmaxOutcome, MinmaxError> {
    if graph.n() < MIN_LAYERED_N {
        let (value, clustering) = exact_min_local_disagreements(graph, LocalObjective::Max)?;
        return Ok(MinmaxOutcome { clustering, value, c_max: None, lp_bound: None, guesses: Vec::new() });
    }
    let candidates = candidate_cmax_values(graph);
    let runs = run_guesses(graph, &candidates, jobs.max(1));
    let mut guesses = Vec::with_capacity(candidates.len());
    let mut best: Option<(f64, f64, Clustering)> = None;
    for (c_max, run) in candidates.iter().copied().zip(runs) {
        match run {
            Ok(run) => {
                let value = evaluate_objective(LocalObjective::Max, &disagreement_vector(graph, &run.clustering));
                guesses.push(GuessOutcome { c_max, value: Some(value), lp_value: Some(run.metric.objective_value()) });
                if best.as_ref().is_none_or(|b| value < b.0) {
                    best = Some((value, c_max, run.clustering));
                }
            }
            Err(MinmaxError::Infeasible(_)) => guesses.push(GuessOutcome { c_max, value: None, lp_value: None }),
            Err(e) => return Err(e),
        }
    }
    let (value, c_max, clustering) = best.ok_or(MinmaxError::AllGuessesInfeasible)?;
    // The largest guess pins nothing, so its LP is the plain relaxation.
    let lp_bound = guesses.last().and_then(|g| g.lp_value);
    Ok(MinmaxOutcome { clustering, value, c_max: Some(c_max), lp_bound, guesses })
}

fn run_guesses(graph: &SignedGraph, candidates: &[f64], jobs: usize) -> Vec<Result<LayeredRun, MinmaxError>> {
    if jobs == 1 || candidates.len() < 2 {
        return candidates.iter().map(|&c| layered_clustering(graph, c)).collect();
    }
    let chunk = candidates.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&c| layered_clustering(graph, c)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("guess worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedEdge;
    use crate::instances::{gap_cycle, random_signed, RandomSignedParams};
    use crate::oracle::exact_min_local_disagreements;
    use crate::rng::SplitMix64;

    #[test]
    fn candidates() {
        let g = gap_cycle(6).unwrap();
        assert_eq!(candidate_cmax_values(&g), vec![0.0, 1.0]);
        let w = SignedGraph::new(
            4,
            vec![SignedEdge::plus(0, 1, 2.0), SignedEdge::minus(1, 2, 2.0), SignedEdge::plus(2, 3, 5.0)],
        )
        .unwrap();
        assert_eq!(candidate_cmax_values(&w), vec![0.0, 2.0, 5.0]);
    }

    #[test]
    fn classify_cycle_metric() {
        let g = gap_cycle(10).unwrap();
        // Path metric: + edges have length 0.1, the closing - edge 0.9.
        let m = MetricSolution::from_fn(&g, |u, v| (v - u) as f64 / 10.0).unwrap();
        let c = classify_edges(&g, &m);
        assert_eq!(c.plus_bad, (0..9).collect::<Vec<_>>());
        assert_eq!(c.minus_bad, vec![9]);
        assert!(c.plus_zero.is_empty());
    }

    #[test]
    fn classify_constant_metrics() {
        let g = gap_cycle(10).unwrap();
        let half = MetricSolution::from_fn(&g, |_, _| 0.5).unwrap();
        assert_eq!(classify_edges(&g, &half), EdgeClassification::default());
        let zero = MetricSolution::from_fn(&g, |_, _| 0.0).unwrap();
        let c = classify_edges(&g, &zero);
        assert_eq!(c.plus_zero, (0..9).collect::<Vec<_>>());
        assert_eq!(c.plus_bad, c.plus_zero);
    }

    #[test]
    fn threshold_ties_are_not_bad() {
        let g = gap_cycle(4).unwrap();
        let m = MetricSolution::from_fn(&g, |_, _| 0.5).unwrap();
        let c = classify_edges(&g, &m);
        assert!(c.plus_bad.is_empty() && c.minus_bad.is_empty());
    }

    #[test]
    fn layers_on_path() {
        let g = BadPlusGraph::from_edges(3, &[(0, 1, true), (1, 2, false)]);
        let d = g.zero_one_layers(0, None);
        assert_eq!(d.layers, vec![vec![0, 1], vec![2]]);
        let iso = BadPlusGraph::from_edges(3, &[]).zero_one_layers(1, None);
        assert_eq!(iso.layers, vec![vec![1]]);
        assert_eq!(iso.dist, vec![None, Some(0), None]);
    }

    #[test]
    fn layers_respect_live_mask() {
        let g = BadPlusGraph::from_edges(4, &[(0, 1, false), (1, 2, false), (0, 3, false), (3, 2, false)]);
        let live = [true, false, true, true];
        let d = g.zero_one_layers(0, Some(&live));
        assert_eq!(d.dist, vec![Some(0), None, Some(2), Some(1)]);
    }

    fn brute_distances(n: usize, edges: &[(usize, usize, bool)]) -> Vec<Vec<Option<usize>>> {
        // Floyd-Warshall over the 0/1 lengths.
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = 0;
        }
        for &(u, v, z) in edges {
            let l = usize::from(!z);
            d[u][v] = d[u][v].min(l);
            d[v][u] = d[v][u].min(l);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        d.into_iter().map(|r| r.into_iter().map(|x| (x < inf).then_some(x)).collect()).collect()
    }

    #[test]
    fn layers_match_brute_force() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..200 {
            let n = 2 + rng.next_below(9) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.bernoulli(0.3) {
                        edges.push((u, v, rng.bernoulli(0.3)));
                    }
                }
            }
            let g = BadPlusGraph::from_edges(n, &edges);
            let all = brute_distances(n, &edges);
            for s in 0..n {
                let dec = g.zero_one_layers(s, None);
                assert_eq!(dec.dist, all[s]);
                for (j, layer) in dec.layers.iter().enumerate() {
                    assert!(layer.iter().all(|&v| dec.dist[v] == Some(j)));
                }
            }
        }
    }

    #[test]
    fn level_cut_examples() {
        assert_eq!(choose_level_cut(&[1, 2, 3, 4], 16), Some(0));
        let mut sizes = vec![5, 330, 5];
        sizes.extend(std::iter::repeat_n(5, 10));
        assert_eq!(choose_level_cut(&sizes, 400), Some(2));
        assert_eq!(max_level_index(4), 0);
        assert_eq!(max_level_index(9), 1);
        assert_eq!(max_level_index(25), 2);
        assert_eq!(max_level_index(400), 9);
    }

    #[test]
    fn level_cut_always_exists() {
        // Adversarial layer sizes under the total budget of n vertices.
        let mut rng = SplitMix64::new(99);
        for _ in 0..1000 {
            let n = 4 + rng.next_below(20_000) as usize;
            let bound = layer_size_bound(n).floor() as usize;
            let mut sizes = Vec::new();
            let mut left = n;
            while left > 0 {
                let s =
                    if rng.bernoulli(0.5) { (bound + 1).min(left) } else { 1 + rng.next_below(left as u64) as usize };
                sizes.push(s);
                left -= s;
            }
            let j = choose_level_cut(&sizes, n).expect("a level cut exists");
            assert!(j <= max_level_index(n));
        }
    }

    #[test]
    fn all_plus_graph_is_free() {
        let edges = (0..5).map(|i| SignedEdge::plus(i, i + 1, 1.0 + i as f64)).collect();
        let g = SignedGraph::new(6, edges).unwrap();
        let out = solve_minmax(&g).unwrap();
        assert_eq!(out.value, 0.0);
        let run = layered_clustering(&g, 0.0).unwrap();
        assert_eq!(run.clustering.num_clusters(), 1);
    }

    #[test]
    fn gap_cycle_bounds() {
        for n in [10, 16] {
            let g = gap_cycle(n).unwrap();
            let run = layered_clustering(&g, 1.0).unwrap();
            let v = evaluate_objective(LocalObjective::Max, &disagreement_vector(&g, &run.clustering));
            assert!(v >= 1.0 && v <= APPROX_FACTOR * (n as f64).sqrt());
        }
        let out = solve_minmax(&gap_cycle(10).unwrap()).unwrap();
        assert!(out.value >= 1.0 && out.value <= APPROX_FACTOR * 10f64.sqrt());
        assert!((out.lp_bound.unwrap() - 0.2).abs() < 1e-6);
    }

    #[test]
    fn contradictory_pins_are_infeasible() {
        // + triangle path 0-1-2 with a - edge closing it; c_max = 0 pins all.
        let g = SignedGraph::new(
            4,
            vec![SignedEdge::plus(0, 1, 1.0), SignedEdge::plus(1, 2, 1.0), SignedEdge::minus(0, 2, 1.0)],
        )
        .unwrap();
        assert_eq!(layered_clustering(&g, 0.0).unwrap_err(), MinmaxError::Infeasible(0.0));
        let out = solve_minmax(&g).unwrap();
        assert!(out.guesses[0].value.is_none());
        assert_eq!(out.value, 1.0);
    }

    #[test]
    fn tiny_graphs_use_oracle() {
        let g = SignedGraph::new(3, vec![SignedEdge::plus(0, 1, 1.0), SignedEdge::minus(1, 2, 1.0)]).unwrap();
        let out = solve_minmax(&g).unwrap();
        assert_eq!(out.value, 0.0);
        assert!(out.c_max.is_none());
        assert_eq!(layered_clustering(&g, 1.0).unwrap_err(), MinmaxError::TooSmall(3));
    }

    fn check_lemmas(graph: &SignedGraph, run: &LayeredRun) {
        let n = graph.n();
        let sqrt_n = (n as f64).sqrt();
        let c = &run.classification;
        let full = BadPlusGraph::new(graph, c);
        for &i in &c.minus_bad {
            let e = graph.edge(i);
            if let Some(d) = full.zero_one_layers(e.u, None).dist[e.v] {
                assert!(d as f64 > sqrt_n - 1.0, "pair distance {d} too short");
            }
            assert!(!run.clustering.same(e.u, e.v), "long - edge {i} kept inside a cluster");
        }
        for cut in &run.cuts {
            assert!(cut.target_distance as f64 > sqrt_n - 1.0);
            let big = cut.decomposition.sizes().iter().filter(|&&s| s as f64 > layer_size_bound(n)).count();
            assert!(big as f64 <= sqrt_n / 16.0);
        }
        for &i in &c.plus_zero {
            let e = graph.edge(i);
            assert!(run.clustering.same(e.u, e.v), "zero-length edge {i} was cut");
        }
        let mut cut_count = vec![0usize; n];
        for &i in &c.plus_bad {
            let e = graph.edge(i);
            if !c.is_plus_zero(i) && !run.clustering.same(e.u, e.v) {
                cut_count[e.u] += 1;
                cut_count[e.v] += 1;
            }
        }
        assert!(cut_count.iter().all(|&k| k as f64 <= 48.0 * sqrt_n));
        for (i, e) in graph.edges().iter().enumerate() {
            if e.weight > run.c_max {
                assert_eq!(run.clustering.same(e.u, e.v), e.sign == Sign::Plus, "heavy edge {i} misclassified");
            }
        }
    }

    #[test]
    fn lemmas_and_bound_on_random_instances() {
        for seed in 0..25 {
            let g = random_signed(&RandomSignedParams::new(8, 0.6, 4), seed);
            let (opt, _) = exact_min_local_disagreements(&g, LocalObjective::Max).unwrap();
            for c_max in candidate_cmax_values(&g) {
                if let Ok(run) = layered_clustering(&g, c_max) {
                    check_lemmas(&g, &run);
                }
            }
            let out = solve_minmax(&g).unwrap();
            assert!(out.value >= opt - 1e-9);
            assert!(out.value <= APPROX_FACTOR * 8f64.sqrt() * opt + 1e-6);
        }
    }

    #[test]
    fn jobs_do_not_change_result() {
        let g = random_signed(&RandomSignedParams::new(7, 0.5, 5), 3);
        let a = solve_minmax_jobs(&g, 1).unwrap();
        let b = solve_minmax_jobs(&g, 4).unwrap();
        assert_eq!(a.clustering, b.clustering);
        assert_eq!(a.value, b.value);
        assert_eq!(a.c_max, b.c_max);
    }

    #[test]
    fn deterministic() {
        let g = random_signed(&RandomSignedParams::new(9, 0.5, 3), 11);
        let a = layered_clustering(&g, 1.0).map(|r| r.clustering);
        let b = layered_clustering(&g, 1.0).map(|r| r.clustering);
        assert_eq!(a, b);
    }
}
