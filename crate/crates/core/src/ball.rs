//! Greedy ball rounding for Min Local Disagreements on complete and complete
//! bipartite graphs.
//!
//! Each round picks the live center whose radius-1/7 ball is largest and
//! removes its radius-3/7 ball as a cluster. Distances come from any
//! pseudometric; the LP optimum is the usual input.

use crate::graph::{BipartiteSides, Clustering, Side};
use crate::relaxation::MetricSolution;

/// Radius used to score candidate centers.
pub const SCORE_RADIUS: f64 = 1.0 / 7.0;
/// Radius of the emitted cluster.
pub const CLUSTER_RADIUS: f64 = 3.0 / 7.0;

/// `{v ∈ S : d(center, v) < radius}` with `S` given by `live`, ascending.
pub fn ball(metric: &MetricSolution, live: &[bool], center: usize, radius: f64) -> Vec<usize> {
    assert!(live[center], "center {center} is not live");
    (0..metric.n()).filter(|&v| live[v] && metric.d(center, v) < radius).collect()
}

/// One greedy round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub center: usize,
    /// Size of the scoring ball that won the argmax.
    pub score: usize,
    pub cluster: Vec<usize>,
}

/// Rounds of the complete-graph rounder in order.
pub fn greedy_rounds_complete(metric: &MetricSolution) -> Vec<Round> {
    let n = metric.n();
    let mut live = vec![true; n];
    let mut rounds = Vec::new();
    while live.iter().any(|&x| x) {
        let (center, score) = argmax_center(metric, &live, (0..n).filter(|&s| live[s]), |_| true);
        let cluster = ball(metric, &live, center, CLUSTER_RADIUS);
        for &v in &cluster {
            live[v] = false;
        }
        rounds.push(Round { center, score, cluster });
    }
    rounds
}

/// Rounds of the bipartite rounder; centers are LEFT vertices scored by the
/// live RIGHT vertices in their ball. RIGHT vertices left over after the
/// last round are not listed.
pub fn greedy_rounds_bipartite(metric: &MetricSolution, sides: &BipartiteSides) -> Vec<Round> {
    let n = metric.n();
    assert_eq!(sides.len(), n, "sides cover {} vertices, metric has {n}", sides.len());
    let mut live = vec![true; n];
    let mut rounds = Vec::new();
    loop {
        let left: Vec<usize> = (0..n).filter(|&s| live[s] && sides.side(s) == Side::Left).collect();
        if left.is_empty() {
            break;
        }
        let (center, score) = argmax_center(metric, &live, left.into_iter(), |v| sides.side(v) == Side::Right);
        let cluster = ball(metric, &live, center, CLUSTER_RADIUS);
        for &v in &cluster {
            live[v] = false;
        }
        rounds.push(Round { center, score, cluster });
    }
    rounds
}

fn argmax_center(
    metric: &MetricSolution,
    live: &[bool],
    candidates: impl Iterator<Item = usize>,
    counts: impl Fn(usize) -> bool,
) -> (usize, usize) {
    let mut best: Option<(usize, usize)> = None;
    for s in candidates {
        let score = ball(metric, live, s, SCORE_RADIUS).into_iter().filter(|&v| counts(v)).count();
        // Strict comparison keeps the smallest id on ties.
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((s, score));
        }
    }
    best.expect("at least one candidate center")
}

fn clustering_from_rounds(n: usize, rounds: &[Round]) -> Clustering {
    let mut clusters: Vec<Vec<usize>> = rounds.iter().map(|r| r.cluster.clone()).collect();
    let mut covered = vec![false; n];
    for &v in clusters.iter().flatten() {
        covered[v] = true;
    }
    clusters.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
    Clustering::from_clusters(n, &clusters).expect("balls of live vertices are disjoint")
}

/// Greedy clustering for complete graphs.
pub fn greedy_clustering_complete(metric: &MetricSolution) -> Clustering {
    clustering_from_rounds(metric.n(), &greedy_rounds_complete(metric))
}

/// Greedy clustering for complete bipartite graphs; leftover RIGHT vertices
/// become singletons.
pub fn greedy_clustering_bipartite(metric: &MetricSolution, sides: &BipartiteSides) -> Clustering {
    clustering_from_rounds(metric.n(), &greedy_rounds_bipartite(metric, sides))
}
