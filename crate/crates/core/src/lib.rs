//! Correlation clustering with local objectives: metric LP relaxations,
//! deterministic rounding, non-oblivious local search, min-max cut
//! reductions, and an exact oracle for small instances.

pub mod agreements;
pub mod ball;
pub mod graph;
pub mod instances;
pub mod io;
pub mod lp;
pub mod minmax;
pub mod oracle;
pub mod reductions;
pub mod relaxation;
pub mod rng;

pub use agreements::{solve_maxmin_agreements, AgreementsOutcome, Certificate, CutState, ReducedInstance};
pub use ball::{greedy_clustering_bipartite, greedy_clustering_complete};
pub use graph::{
    agreement_vector, disagreement_vector, evaluate_objective, total_incident_weight, BipartiteSides, Clustering,
    GraphError, LocalObjective, Side, Sign, SignedEdge, SignedGraph,
};
pub use minmax::{solve_minmax, solve_minmax_jobs, MinmaxOutcome};
pub use reductions::{CutKind, CutProblem};
pub use relaxation::{AgreementsSolution, MetricSolution};
pub use rng::SplitMix64;
