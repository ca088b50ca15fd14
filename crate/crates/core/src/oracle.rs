//! Exact brute-force solvers used to check every approximation guarantee.
//!
//! Two exhaustive routes are available:
//!
//! * **partitions**: every set partition of the vertex set, enumerated as
//!   restricted-growth strings; `Bell(n)` candidates.
//! * **edge patterns**: every subset of edges declared "cut", kept when it is
//!   realisable by some partition (no cut edge inside a connected component
//!   of the uncut edges); `2^m` candidates. Both objectives depend on a
//!   clustering only through which edges it cuts, so the two routes have the
//!   same optimum.
//!
//! Partitions are used whenever `n <= 12`; beyond that the edge-pattern route
//! is taken if `2^m` stays within the same work budget (`Bell(12)`).

use thiserror::Error;

use crate::graph::{evaluate_objective, Clustering, LocalObjective, SignedGraph};
use crate::reductions::{CutKind, CutProblem};

/// Largest vertex count handled by partition enumeration.
pub const MAX_PARTITION_N: usize = 12;
/// Largest vertex count handled by the s-t subset enumeration.
pub const MAX_ST_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search (n = {n}, m = {m})")]
    TooLarge { n: usize, m: usize },
    #[error("objective `{0}` is not valid for this problem")]
    Objective(&'static str),
}

/// Bell numbers; saturates at `u64::MAX`.
pub fn bell_number(n: usize) -> u64 {
    // Bell triangle.
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v.min(u64::MAX as u128));
        }
        row = next;
    }
    row[0].min(u64::MAX as u128) as u64
}

/// Enumerates the set partitions of `0..n` as restricted-growth strings:
/// `a[0] = 0` and `a[i] <= 1 + max(a[0..i])`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct PartitionIterator {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIterator {
    pub fn new(n: usize) -> Self {
        PartitionIterator { rgs: vec![0; n], prefix_max: vec![0; n], started: false, done: false }
    }

    /// Advances and returns the current string without allocating.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.rgs.is_empty() {
                self.done = true;
            }
            return Some(&self.rgs);
        }
        let n = self.rgs.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(&self.rgs);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Partitions,
    EdgePatterns,
}

/// Route the oracle would take for `graph`, or `None` when it would refuse.
pub fn route_for(graph: &SignedGraph) -> Option<Route> {
    if graph.n() <= MAX_PARTITION_N {
        Some(Route::Partitions)
    } else if graph.m() < 63 && (1u64 << graph.m()) <= bell_number(MAX_PARTITION_N) {
        Some(Route::EdgePatterns)
    } else {
        None
    }
}

#[derive(Clone, Copy)]
enum Goal {
    MinimizeDisagreement(LocalObjective),
    MaximizeAgreement(LocalObjective),
}

impl Goal {
    fn counts_agreeing(self) -> bool {
        matches!(self, Goal::MaximizeAgreement(_))
    }

    fn objective(self) -> LocalObjective {
        match self {
            Goal::MinimizeDisagreement(o) | Goal::MaximizeAgreement(o) => o,
        }
    }

    fn better(self, candidate: f64, best: f64) -> bool {
        match self {
            Goal::MinimizeDisagreement(_) => candidate < best,
            Goal::MaximizeAgreement(_) => candidate > best,
        }
    }

    fn worst(self) -> f64 {
        match self {
            Goal::MinimizeDisagreement(_) => f64::INFINITY,
            Goal::MaximizeAgreement(_) => f64::NEG_INFINITY,
        }
    }
}

fn vertex_vector(graph: &SignedGraph, same: impl Fn(usize) -> bool, agreeing: bool, out: &mut [f64]) {
    out.fill(0.0);
    for (i, e) in graph.edges().iter().enumerate() {
        if e.agrees(same(i)) == agreeing {
            out[e.u] += e.weight;
            out[e.v] += e.weight;
        }
    }
}

/// Exhaustive search over set partitions.
fn by_partitions(graph: &SignedGraph, goal: Goal, admissible: impl Fn(&[usize]) -> bool) -> Option<(f64, Clustering)> {
    let mut it = PartitionIterator::new(graph.n());
    let mut vec = vec![0.0; graph.n()];
    let mut best: Option<(f64, Vec<usize>)> = None;
    let edges = graph.edges();
    while let Some(rgs) = it.advance() {
        if !admissible(rgs) {
            continue;
        }
        vertex_vector(graph, |i| rgs[edges[i].u] == rgs[edges[i].v], goal.counts_agreeing(), &mut vec);
        let value = evaluate_objective(goal.objective(), &vec);
        if best.as_ref().is_none_or(|(b, _)| goal.better(value, *b)) {
            best = Some((value, rgs.to_vec()));
        }
    }
    best.map(|(v, labels)| (v, Clustering::from_labels(&labels)))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Exhaustive search over realisable cut patterns. The clustering returned
/// for a pattern is the set of connected components of its uncut edges.
fn by_edge_patterns(graph: &SignedGraph, goal: Goal) -> (f64, Clustering) {
    let m = graph.m();
    let edges = graph.edges();
    let mut vec = vec![0.0; graph.n()];
    let mut best = (goal.worst(), 0u64);
    for mask in 0..(1u64 << m) {
        let cut = |i: usize| mask >> i & 1 == 1;
        let mut uf = UnionFind::new(graph.n());
        for (i, e) in edges.iter().enumerate() {
            if !cut(i) {
                uf.union(e.u, e.v);
            }
        }
        if edges.iter().enumerate().any(|(i, e)| cut(i) && uf.find(e.u) == uf.find(e.v)) {
            continue;
        }
        vertex_vector(graph, |i| !cut(i), goal.counts_agreeing(), &mut vec);
        let value = evaluate_objective(goal.objective(), &vec);
        if goal.better(value, best.0) {
            best = (value, mask);
        }
    }
    let mut uf = UnionFind::new(graph.n());
    for (i, e) in edges.iter().enumerate() {
        if best.1 >> i & 1 == 0 {
            uf.union(e.u, e.v);
        }
    }
    let labels: Vec<usize> = (0..graph.n()).map(|u| uf.find(u)).collect();
    (best.0, Clustering::from_labels(&labels))
}

fn solve(graph: &SignedGraph, goal: Goal) -> Result<(f64, Clustering), OracleError> {
    match route_for(graph) {
        Some(Route::Partitions) => Ok(by_partitions(graph, goal, |_| true).expect("at least one partition")),
        Some(Route::EdgePatterns) => Ok(by_edge_patterns(graph, goal)),
        None => Err(OracleError::TooLarge { n: graph.n(), m: graph.m() }),
    }
}

/// Exact optimum of `min_S f(disagree_S)` for `f ∈ {max, sum}`. Ties keep the
/// first clustering in enumeration order.
pub fn exact_min_local_disagreements(
    graph: &SignedGraph,
    objective: LocalObjective,
) -> Result<(f64, Clustering), OracleError> {
    if !objective.minimizable() {
        return Err(OracleError::Objective(objective.name()));
    }
    solve(graph, Goal::MinimizeDisagreement(objective))
}

/// Exact optimum of `max_S g(agree_S)` for `g ∈ {min, sum}`.
pub fn exact_max_local_agreements(
    graph: &SignedGraph,
    objective: LocalObjective,
) -> Result<(f64, Clustering), OracleError> {
    if !objective.maximizable() {
        return Err(OracleError::Objective(objective.name()));
    }
    solve(graph, Goal::MaximizeAgreement(objective))
}

/// Exact Max Min Agreements optimum.
pub fn exact_max_min_agreements(graph: &SignedGraph) -> Result<(f64, Clustering), OracleError> {
    exact_max_local_agreements(graph, LocalObjective::Min)
}

/// Forces one route; used to cross-check the two enumerations.
pub fn exact_min_local_disagreements_via(
    graph: &SignedGraph,
    objective: LocalObjective,
    route: Route,
) -> (f64, Clustering) {
    let goal = Goal::MinimizeDisagreement(objective);
    match route {
        Route::Partitions => by_partitions(graph, goal, |_| true).unwrap(),
        Route::EdgePatterns => by_edge_patterns(graph, goal),
    }
}

/// Forces one route for the agreements objective.
pub fn exact_max_local_agreements_via(
    graph: &SignedGraph,
    objective: LocalObjective,
    route: Route,
) -> (f64, Clustering) {
    let goal = Goal::MaximizeAgreement(objective);
    match route {
        Route::Partitions => by_partitions(graph, goal, |_| true).unwrap(),
        Route::EdgePatterns => by_edge_patterns(graph, goal),
    }
}

/// Exact min-max cut value: the smallest achievable maximum, over vertices,
/// of the base weight of cut edges incident on the vertex, among clusterings
/// separating every required pair.
///
/// s-t problems enumerate the `2^(n-2)` two-sided cuts (a finer partition
/// only cuts more edges); multiway and multicut enumerate partitions.
pub fn exact_minmax_cut(problem: &CutProblem) -> Result<(f64, Clustering), OracleError> {
    let base = problem.base();
    let n = base.n();
    match problem.kind() {
        CutKind::St { s, t } => {
            if n > MAX_ST_N {
                return Err(OracleError::TooLarge { n, m: base.m() });
            }
            let (s, t) = (*s, *t);
            let others: Vec<usize> = (0..n).filter(|&u| u != s && u != t).collect();
            let mut side = vec![false; n];
            let mut vec = vec![0.0; n];
            let mut best = (f64::INFINITY, 0u64);
            for mask in 0..(1u64 << others.len()) {
                side[s] = true;
                side[t] = false;
                for (k, &u) in others.iter().enumerate() {
                    side[u] = mask >> k & 1 == 1;
                }
                vertex_vector(base, |i| side[base.edge(i).u] == side[base.edge(i).v], false, &mut vec);
                let value = evaluate_objective(LocalObjective::Max, &vec);
                if value < best.0 {
                    best = (value, mask);
                }
            }
            let mut labels = vec![1usize; n];
            labels[s] = 0;
            for (k, &u) in others.iter().enumerate() {
                if best.1 >> k & 1 == 1 {
                    labels[u] = 0;
                }
            }
            Ok((best.0, Clustering::from_labels(&labels)))
        }
        _ => {
            if n > MAX_PARTITION_N {
                return Err(OracleError::TooLarge { n, m: base.m() });
            }
            let pairs = problem.required_pairs();
            let admissible = |rgs: &[usize]| pairs.iter().all(|&(a, b)| rgs[a] != rgs[b]);
            Ok(by_partitions(base, Goal::MinimizeDisagreement(LocalObjective::Max), admissible)
                .expect("singletons separate every pair"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{agreement_vector, disagreement_vector, SignedEdge};
    use crate::instances::{gap_cycle, random_signed, RandomSignedParams};
    use crate::rng::SplitMix64;
    use std::collections::HashSet;

    #[test]
    fn bell_numbers() {
        let expected = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell_number(n), b);
        }
    }

    #[test]
    fn partition_iterator_counts_and_uniqueness() {
        for n in 0..=8 {
            let all: Vec<Vec<usize>> = PartitionIterator::new(n).collect();
            assert_eq!(all.len() as u64, bell_number(n), "n = {n}");
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for rgs in &all {
                let mut max = 0;
                for (i, &a) in rgs.iter().enumerate() {
                    assert!(i == 0 && a == 0 || i > 0 && a <= max + 1);
                    max = max.max(a);
                }
            }
        }
        let mut it = PartitionIterator::new(3);
        assert_eq!(it.next().unwrap(), vec![0, 0, 0]);
        assert_eq!(it.next().unwrap(), vec![0, 0, 1]);
        assert_eq!(it.next().unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn gap_cycle_optima() {
        let g = gap_cycle(10).unwrap();
        let (v, c) = exact_min_local_disagreements(&g, LocalObjective::Max).unwrap();
        assert_eq!(v, 1.0);
        assert_eq!(evaluate_objective(LocalObjective::Max, &disagreement_vector(&g, &c)), 1.0);
        let (v, c) = exact_max_min_agreements(&g).unwrap();
        assert_eq!(v, 1.0);
        assert_eq!(evaluate_objective(LocalObjective::Min, &agreement_vector(&g, &c)), 1.0);
    }

    #[test]
    fn large_sparse_graphs_use_edge_patterns() {
        let g = gap_cycle(16).unwrap();
        assert_eq!(route_for(&g), Some(Route::EdgePatterns));
        assert_eq!(exact_min_local_disagreements(&g, LocalObjective::Max).unwrap().0, 1.0);
        assert_eq!(exact_max_min_agreements(&g).unwrap().0, 1.0);
        let dense = random_signed(&RandomSignedParams::new(14, 0.5, 1).with_edge_probability(1.0), 0);
        assert!(matches!(
            exact_min_local_disagreements(&dense, LocalObjective::Max),
            Err(OracleError::TooLarge { n: 14, .. })
        ));
    }

    #[test]
    fn routes_agree() {
        for seed in 0..40 {
            let g = random_signed(&RandomSignedParams::new(7, 0.5, 4).with_edge_probability(0.4), seed);
            for obj in [LocalObjective::Max, LocalObjective::Sum] {
                let a = exact_min_local_disagreements_via(&g, obj, Route::Partitions);
                let b = exact_min_local_disagreements_via(&g, obj, Route::EdgePatterns);
                assert_eq!(a.0, b.0, "seed {seed} {obj:?}");
                assert_eq!(evaluate_objective(obj, &disagreement_vector(&g, &b.1)), b.0);
            }
            for obj in [LocalObjective::Min, LocalObjective::Sum] {
                let a = exact_max_local_agreements_via(&g, obj, Route::Partitions);
                let b = exact_max_local_agreements_via(&g, obj, Route::EdgePatterns);
                assert_eq!(a.0, b.0, "seed {seed} {obj:?}");
                assert_eq!(evaluate_objective(obj, &agreement_vector(&g, &b.1)), b.0);
            }
        }
    }

    #[test]
    fn trivial_instances() {
        let g = random_signed(&RandomSignedParams::new(6, 1.0, 3), 1);
        let (v, c) = exact_min_local_disagreements(&g, LocalObjective::Max).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(c, Clustering::single(6));
        let e = SignedGraph::new(2, vec![SignedEdge::plus(0, 1, 1.0)]).unwrap();
        assert_eq!(exact_max_min_agreements(&e).unwrap().0, 1.0);
        assert!(matches!(exact_min_local_disagreements(&e, LocalObjective::Min), Err(OracleError::Objective("min"))));
        assert!(exact_max_local_agreements(&e, LocalObjective::Max).is_err());
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = SplitMix64::new(3);
        for seed in 0..15 {
            let g = random_signed(&RandomSignedParams::new(7, 0.5, 5), seed);
            let mut perm: Vec<usize> = (0..7).collect();
            rng.shuffle(&mut perm);
            let edges = g.edges().iter().map(|e| SignedEdge { u: perm[e.u], v: perm[e.v], ..*e }).collect();
            let h = SignedGraph::new(7, edges).unwrap();
            assert_eq!(
                exact_min_local_disagreements(&g, LocalObjective::Max).unwrap().0,
                exact_min_local_disagreements(&h, LocalObjective::Max).unwrap().0
            );
            assert_eq!(exact_max_min_agreements(&g).unwrap().0, exact_max_min_agreements(&h).unwrap().0);
        }
    }

    #[test]
    fn st_cut_examples() {
        let base = SignedGraph::new(3, vec![SignedEdge::plus(0, 1, 1.0), SignedEdge::plus(1, 2, 1.0)]).unwrap();
        let p = CutProblem::new(base, CutKind::St { s: 0, t: 2 }).unwrap();
        let (v, c) = exact_minmax_cut(&p).unwrap();
        assert_eq!(v, 1.0);
        assert!(!c.same(0, 2));

        // Star with s = centre 0, t = leaf 1 of weight 2; other leaves weight 5.
        // Cutting only (0,1) costs 2 at the centre, cheaper than any other cut.
        let base = SignedGraph::new(
            4,
            vec![SignedEdge::plus(0, 1, 2.0), SignedEdge::plus(0, 2, 5.0), SignedEdge::plus(0, 3, 5.0)],
        )
        .unwrap();
        let p = CutProblem::new(base, CutKind::St { s: 0, t: 1 }).unwrap();
        let (v, c) = exact_minmax_cut(&p).unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(c, Clustering::from_labels(&[0, 1, 0, 0]));
    }

    #[test]
    fn st_subset_enumeration_matches_partition_filter() {
        for seed in 0..20 {
            let p = crate::instances::random_st_problem(7, 0.6, 4, seed).unwrap();
            let (v, _) = exact_minmax_cut(&p).unwrap();
            let (w, _) =
                by_partitions(p.base(), Goal::MinimizeDisagreement(LocalObjective::Max), |rgs| rgs[0] != rgs[6])
                    .unwrap();
            assert_eq!(v, w, "seed {seed}");
        }
    }

    #[test]
    fn multiway_oracle_separates_terminals() {
        let base = SignedGraph::new(
            4,
            vec![SignedEdge::plus(0, 3, 1.0), SignedEdge::plus(1, 3, 1.0), SignedEdge::plus(2, 3, 1.0)],
        )
        .unwrap();
        let p = CutProblem::new(base, CutKind::Multiway(vec![0, 1, 2])).unwrap();
        let (v, c) = exact_minmax_cut(&p).unwrap();
        // Vertex 3 joins one terminal; the other two edges are cut at 3.
        assert_eq!(v, 2.0);
        assert!(!c.same(0, 1) && !c.same(1, 2) && !c.same(0, 2));
    }
}
