//! Approximation algorithms for maximum-weight k-cycle and k-path packing on
//! complete weighted graphs, with exact oracles for auditing them.
//!
//! Everything is generic over a [`Weight`] scalar. Integer and rational
//! weights make every ratio check exact; floats are accepted with a small
//! comparison slack.

pub mod audit;
pub mod cycle_packing;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod grouping;
pub mod io;
pub mod matching;
pub mod oracles;
pub mod packing;
pub mod path_packing;
pub mod reductions;
pub mod tsp;
pub mod weight;

pub use audit::{audit_instance, run_algorithm, Algorithm, AuditEntry, RatioReport, RunConfig};
pub use cycle_packing::{
    alg1_metric_kcp, alg2_metric_kcp_even, alg3_matching_kcp_odd, alg6_general_4cp, alg7_metric_4cp,
    best_cycle_from_path,
};
pub use error::{Error, PackingViolation, Result};
pub use fixtures::{certify_optimum, fixture, verify_fixture, Fixture, FixtureId};
pub use generate::{generate_instance, Distribution, GeneratorSpec};
pub use graph::{HamiltonianCycle, Matching, MetricViolation, WeightClass, WeightedCompleteGraph};
pub use matching::{brute_force_matching, max_weight_matching_of_size, max_weight_perfect_matching};
pub use grouping::EdgeGroupPlan;
pub use oracles::{optimal_k_packing, Optimum};
pub use path_packing::{alg4_tsp_kpp, alg5_matching_kpp_even, alg8_metric_4pp, general_4pp, metric_kpp_combined};
pub use reductions::{lift_12_to_01, solve_12_via_01, three_cp_9_11, PluggableSolver};
pub use tsp::{exact_max_tsp, heuristic_max_tsp, TspSolver};
pub use packing::{validate_packing, KCyclePacking, KPathPacking, Packing, PackingKind};
pub use weight::{Coef, Fraction, Weight};

/// Integer-weighted graph; the on-disk representation.
pub type Graph = WeightedCompleteGraph<i64>;
/// Exact rational weights.
pub type RationalGraph = WeightedCompleteGraph<num_rational::Ratio<i64>>;
/// Double-precision weights; ratio checks use a relative slack.
pub type FloatGraph = WeightedCompleteGraph<f64>;
