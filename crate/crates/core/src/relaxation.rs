//! Metric LP relaxations for local disagreement and agreement objectives.
//!
//! Variables are one length `d(u,v) ∈ [0,1]` per unordered pair, a per-vertex
//! fractional value (`D(u)` or `A(u)`), and for the max/min objectives an
//! auxiliary bound `t`. All `3·C(n,3)` triangle inequalities are emitted.

use thiserror::Error;

use crate::graph::{total_incident_weight, LocalObjective, Sign, SignedGraph};
use crate::lp::{solve_lp, LinearProgram, LpError, LpSolution, Relation, Sense, TOLERANCE};

/// A length pin forcing an edge to be classified correctly by the metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pin {
    /// `d = 0`; only valid on `+` edges.
    Zero(usize),
    /// `d = 1`; only valid on `-` edges.
    One(usize),
}

impl Pin {
    pub fn edge(self) -> usize {
        match self {
            Pin::Zero(e) | Pin::One(e) => e,
        }
    }

    pub fn length(self) -> f64 {
        match self {
            Pin::Zero(_) => 0.0,
            Pin::One(_) => 1.0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelaxationError {
    #[error("objective `{0}` cannot be minimised by the disagreement relaxation")]
    Objective(&'static str),
    #[error("pin references edge {0}, which does not exist")]
    PinOutOfRange(usize),
    #[error("pin {pin:?} contradicts the sign of edge {edge}")]
    WrongSignPin { pin: Pin, edge: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

impl RelaxationError {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, RelaxationError::Lp(LpError::Infeasible))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("distance matrix has {got} entries, expected {expected}")]
    Size { expected: usize, got: usize },
    #[error("d({u},{v}) = {value} lies outside [0, 1]")]
    OutOfRange { u: usize, v: usize, value: f64 },
    #[error("d({u},{v}) != d({v},{u})")]
    Asymmetric { u: usize, v: usize },
    #[error("d({u},{u}) = {value} is not zero")]
    Diagonal { u: usize, value: f64 },
    #[error("triangle inequality fails on ({u},{v},{w}): d({u},{w}) exceeds the detour by {excess:e}")]
    Triangle { u: usize, v: usize, w: usize, excess: f64 },
    #[error("vertex {u}: solver reports {reported}, recomputation from d gives {recomputed}")]
    VertexValue { u: usize, reported: f64, recomputed: f64 },
}

/// Index of the pair variable for `u != v` in a dense upper-triangular layout.
#[inline]
fn pair_slot(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Variable layout shared by both relaxations.
#[derive(Clone, Debug)]
pub struct MetricLayout {
    n: usize,
    pair_vars: Vec<usize>,
    vertex_vars: Vec<usize>,
    bound_var: Option<usize>,
}

impl MetricLayout {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_var(&self, u: usize, v: usize) -> usize {
        self.pair_vars[pair_slot(self.n, u, v)]
    }

    pub fn vertex_var(&self, u: usize) -> usize {
        self.vertex_vars[u]
    }

    pub fn bound_var(&self) -> Option<usize> {
        self.bound_var
    }
}

/// Which per-vertex quantity a relaxation measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexQuantity {
    Disagreement,
    Agreement,
}

#[derive(Clone, Debug)]
pub struct MetricLp {
    pub lp: LinearProgram,
    pub layout: MetricLayout,
    pub quantity: VertexQuantity,
}

fn metric_skeleton(graph: &SignedGraph, sense: Sense, vertex_prefix: &str) -> (LinearProgram, MetricLayout) {
    let n = graph.n();
    let mut lp = LinearProgram::new(sense);
    let mut pair_vars = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pair_vars.push(lp.add_var(format!("d_{u}_{v}"), 0.0, 1.0));
        }
    }
    let vertex_vars = (0..n).map(|u| lp.add_var(format!("{vertex_prefix}_{u}"), 0.0, f64::INFINITY)).collect();
    let layout = MetricLayout { n, pair_vars, vertex_vars, bound_var: None };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (layout.pair_var(a, b), layout.pair_var(b, c), layout.pair_var(a, c));
                lp.add_constraint(vec![(ab, 1.0), (bc, 1.0), (ac, -1.0)], Relation::Ge, 0.0);
                lp.add_constraint(vec![(ab, 1.0), (ac, 1.0), (bc, -1.0)], Relation::Ge, 0.0);
                lp.add_constraint(vec![(ac, 1.0), (bc, 1.0), (ab, -1.0)], Relation::Ge, 0.0);
            }
        }
    }
    (lp, layout)
}

/// Number of triangle rows emitted for `n` vertices: `3·C(n,3)`.
pub fn triangle_row_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 2
    }
}

/// Builds the disagreement relaxation: `D(u) = Σ₊ c·d + Σ₋ c·(1-d)` and
/// minimises `max D` (via `D(u) <= t`) or `Σ D`.
pub fn build_disagreement_lp(
    graph: &SignedGraph,
    objective: LocalObjective,
    pins: &[Pin],
) -> Result<MetricLp, RelaxationError> {
    if !objective.minimizable() {
        return Err(RelaxationError::Objective(objective.name()));
    }
    for &pin in pins {
        let edge = pin.edge();
        let e = graph.edges().get(edge).ok_or(RelaxationError::PinOutOfRange(edge))?;
        let ok = matches!((pin, e.sign), (Pin::Zero(_), Sign::Plus) | (Pin::One(_), Sign::Minus));
        if !ok {
            return Err(RelaxationError::WrongSignPin { pin, edge });
        }
    }
    let (mut lp, mut layout) = metric_skeleton(graph, Sense::Minimize, "D");
    for u in 0..graph.n() {
        let mut terms = Vec::with_capacity(graph.incident(u).len() + 1);
        let mut rhs = 0.0;
        for &ei in graph.incident(u) {
            let e = graph.edge(ei);
            let d = layout.pair_var(e.u, e.v);
            match e.sign {
                Sign::Plus => terms.push((d, e.weight)),
                Sign::Minus => {
                    terms.push((d, -e.weight));
                    rhs -= e.weight;
                }
            }
        }
        terms.push((layout.vertex_var(u), -1.0));
        lp.add_constraint(terms, Relation::Eq, rhs);
    }
    for &pin in pins {
        let e = graph.edge(pin.edge());
        lp.fix_var(layout.pair_var(e.u, e.v), pin.length());
    }
    match objective {
        LocalObjective::Max => {
            let t = lp.add_var("t", 0.0, f64::INFINITY);
            for u in 0..graph.n() {
                lp.add_constraint(vec![(layout.vertex_var(u), 1.0), (t, -1.0)], Relation::Le, 0.0);
            }
            lp.set_objective(Sense::Minimize, vec![(t, 1.0)]);
            layout.bound_var = Some(t);
        }
        LocalObjective::Sum => {
            let terms = (0..graph.n()).map(|u| (layout.vertex_var(u), 1.0)).collect();
            lp.set_objective(Sense::Minimize, terms);
        }
        LocalObjective::Min => unreachable!(),
    }
    Ok(MetricLp { lp, layout, quantity: VertexQuantity::Disagreement })
}

/// Builds the agreements relaxation: `A(u) = Σ₊ c·(1-d) + Σ₋ c·d`, maximising
/// `min A` via `A(u) >= t`.
pub fn build_agreements_lp(graph: &SignedGraph) -> MetricLp {
    let (mut lp, mut layout) = metric_skeleton(graph, Sense::Maximize, "A");
    for u in 0..graph.n() {
        let mut terms = Vec::with_capacity(graph.incident(u).len() + 1);
        let mut rhs = 0.0;
        for &ei in graph.incident(u) {
            let e = graph.edge(ei);
            let d = layout.pair_var(e.u, e.v);
            match e.sign {
                Sign::Plus => {
                    terms.push((d, -e.weight));
                    rhs -= e.weight;
                }
                Sign::Minus => terms.push((d, e.weight)),
            }
        }
        terms.push((layout.vertex_var(u), -1.0));
        lp.add_constraint(terms, Relation::Eq, rhs);
    }
    let t = lp.add_var("t", 0.0, f64::INFINITY);
    for u in 0..graph.n() {
        lp.add_constraint(vec![(layout.vertex_var(u), 1.0), (t, -1.0)], Relation::Ge, 0.0);
    }
    lp.set_objective(Sense::Maximize, vec![(t, 1.0)]);
    layout.bound_var = Some(t);
    MetricLp { lp, layout, quantity: VertexQuantity::Agreement }
}

/// Pseudometric over the vertices together with the per-vertex fractional
/// disagreement `D(u)` it induces on a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSolution {
    n: usize,
    d: Vec<f64>,
    disagreement: Vec<f64>,
    objective_value: f64,
}

/// Pseudometric with the per-vertex fractional agreement `A(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementsSolution {
    n: usize,
    d: Vec<f64>,
    agreement: Vec<f64>,
    objective_value: f64,
}

fn check_metric(n: usize, d: &[f64]) -> Result<(), MetricError> {
    if d.len() != n * n {
        return Err(MetricError::Size { expected: n * n, got: d.len() });
    }
    for u in 0..n {
        if d[u * n + u] != 0.0 {
            return Err(MetricError::Diagonal { u, value: d[u * n + u] });
        }
        for v in u + 1..n {
            let x = d[u * n + v];
            if x != d[v * n + u] {
                return Err(MetricError::Asymmetric { u, v });
            }
            if !(-TOLERANCE..=1.0 + TOLERANCE).contains(&x) {
                return Err(MetricError::OutOfRange { u, v, value: x });
            }
        }
    }
    for u in 0..n {
        for w in 0..n {
            let direct = d[u * n + w];
            for v in 0..n {
                let excess = direct - d[u * n + v] - d[v * n + w];
                if excess > TOLERANCE {
                    return Err(MetricError::Triangle { u, v, w, excess });
                }
            }
        }
    }
    Ok(())
}

fn induced(graph: &SignedGraph, n: usize, d: &[f64], quantity: VertexQuantity) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for e in graph.edges() {
        let x = d[e.u * n + e.v];
        let frac = match (e.sign, quantity) {
            (Sign::Plus, VertexQuantity::Disagreement) | (Sign::Minus, VertexQuantity::Agreement) => x,
            _ => 1.0 - x,
        };
        out[e.u] += e.weight * frac;
        out[e.v] += e.weight * frac;
    }
    out
}

fn distances_from_solution(layout: &MetricLayout, sol: &LpSolution) -> Vec<f64> {
    let n = layout.n;
    let mut d = vec![0.0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let x = sol.value(layout.pair_var(u, v));
            d[u * n + v] = x;
            d[v * n + u] = x;
        }
    }
    d
}

fn clamp_unit(d: &mut [f64]) {
    for x in d {
        *x = x.clamp(0.0, 1.0);
    }
}

fn audit_vertex_values(
    graph: &SignedGraph,
    layout: &MetricLayout,
    sol: &LpSolution,
    recomputed: &[f64],
) -> Result<(), MetricError> {
    let c = total_incident_weight(graph);
    for u in 0..graph.n() {
        let reported = sol.value(layout.vertex_var(u));
        if (reported - recomputed[u]).abs() > TOLERANCE * (1.0 + c[u]) {
            return Err(MetricError::VertexValue { u, reported, recomputed: recomputed[u] });
        }
    }
    Ok(())
}

impl MetricSolution {
    /// Wraps an arbitrary pseudometric given as a dense row-major `n × n`
    /// matrix. `D` is computed from `graph`; the objective value is `max D`.
    pub fn from_distances(graph: &SignedGraph, mut d: Vec<f64>) -> Result<Self, MetricError> {
        let n = graph.n();
        check_metric(n, &d)?;
        clamp_unit(&mut d);
        let disagreement = induced(graph, n, &d, VertexQuantity::Disagreement);
        let objective_value = disagreement.iter().copied().fold(0.0, f64::max);
        Ok(MetricSolution { n, d, disagreement, objective_value })
    }

    pub fn from_fn(graph: &SignedGraph, f: impl Fn(usize, usize) -> f64) -> Result<Self, MetricError> {
        let n = graph.n();
        let mut d = vec![0.0; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d[u * n + v] = f(u.min(v), u.max(v));
                }
            }
        }
        Self::from_distances(graph, d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> f64 {
        self.d[u * self.n + v]
    }

    /// `D(u)` for every vertex.
    pub fn disagreement(&self) -> &[f64] {
        &self.disagreement
    }

    pub fn objective_value(&self) -> f64 {
        self.objective_value
    }

    pub fn distances(&self) -> &[f64] {
        &self.d
    }
}

impl AgreementsSolution {
    #[inline]
    pub fn d(&self, u: usize, v: usize) -> f64 {
        self.d[u * self.n + v]
    }

    /// `A(u)` for every vertex.
    pub fn agreement(&self) -> &[f64] {
        &self.agreement
    }

    pub fn objective_value(&self) -> f64 {
        self.objective_value
    }
}

/// Reads the metric out of a solved disagreement LP and audits every
/// invariant: range, symmetry, triangle inequality, and `D(u)` against its
/// recomputation from `d` within `τ·(1 + c(u))`.
pub fn extract_metric(graph: &SignedGraph, lp: &MetricLp, sol: &LpSolution) -> Result<MetricSolution, MetricError> {
    assert_eq!(lp.quantity, VertexQuantity::Disagreement, "expected a disagreement relaxation");
    let n = graph.n();
    let d = distances_from_solution(&lp.layout, sol);
    check_metric(n, &d)?;
    let mut d = d;
    clamp_unit(&mut d);
    let disagreement = induced(graph, n, &d, VertexQuantity::Disagreement);
    audit_vertex_values(graph, &lp.layout, sol, &disagreement)?;
    Ok(MetricSolution { n, d, disagreement, objective_value: sol.objective })
}

pub fn extract_agreements(
    graph: &SignedGraph,
    lp: &MetricLp,
    sol: &LpSolution,
) -> Result<AgreementsSolution, MetricError> {
    assert_eq!(lp.quantity, VertexQuantity::Agreement, "expected an agreements relaxation");
    let n = graph.n();
    let mut d = distances_from_solution(&lp.layout, sol);
    check_metric(n, &d)?;
    clamp_unit(&mut d);
    let agreement = induced(graph, n, &d, VertexQuantity::Agreement);
    audit_vertex_values(graph, &lp.layout, sol, &agreement)?;
    Ok(AgreementsSolution { n, d, agreement, objective_value: sol.objective })
}

/// Builds, solves and extracts the disagreement relaxation in one call.
pub fn solve_disagreement_relaxation(
    graph: &SignedGraph,
    objective: LocalObjective,
    pins: &[Pin],
) -> Result<MetricSolution, RelaxationError> {
    let lp = build_disagreement_lp(graph, objective, pins)?;
    let sol = solve_lp(&lp.lp)?;
    Ok(extract_metric(graph, &lp, &sol)?)
}

/// Builds, solves and extracts the agreements relaxation in one call.
pub fn solve_agreements_relaxation(graph: &SignedGraph) -> Result<AgreementsSolution, RelaxationError> {
    let lp = build_agreements_lp(graph);
    let sol = solve_lp(&lp.lp)?;
    Ok(extract_agreements(graph, &lp, &sol)?)
}
