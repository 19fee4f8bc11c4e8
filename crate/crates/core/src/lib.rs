//! Exact combinatorics for upper bounds on n_m, the least n for which the
//! complete bipartite graph K_{m,n} fails to be (m-2)-choosable.
//!
//! The toolkit builds explicit list families, enumerates the minimal
//! transversals of their transversal hypergraphs, collapses interchangeable
//! colors into a weighted quotient, solves the resulting minimum weighted
//! k-cover problem exactly (or by the track-peeling construction), expands
//! the cover back, and certifies the bound end to end against a brute-force
//! coloring search.

pub mod choosability;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod formulas;
pub mod hypergraph;
pub mod json;
pub mod optimize;
pub mod pipeline;
pub mod quotient;
pub mod set;
pub mod solver;

pub use choosability::{
    find_proper_coloring, is_bad_assignment_via_transversals, verify_witness, Assignment,
    ProperColoring, WitnessReport,
};
pub use constructions::{
    hoffman_johnson_range, theorem1_lift, theorem1_lift_cover, theorem2_family, theorem3_cover,
    theorem3_family, trivial_family, Theorem2Params, Theorem3Params,
};
pub use cover::{candidate_edges, verify_cover, Cover, CoverValue};
pub use error::{Error, Result};
pub use formulas::{
    asymptotic_coefficient, big_ratio_to_f64, rational, theorem2_reduced_value, theorem2_value,
    theorem3_optimal_l, theorem3_value, AlphaVector,
};
pub use hypergraph::{
    enumerate_minimal_transversals, is_transversal, minimal_edges, Hypergraph, ListFamily, Track,
};
pub use optimize::{optimize_theorem2, OptimizeMode, OptimizeResult};
pub use pipeline::{run_bound_pipeline, PipelineMethod, PipelineReport};
pub use quotient::{
    lift_cover, membership_pattern_partition, quotient_family, weighted_value, PartitionClass,
    WeightedFamily,
};
pub use set::{Color, ColorSet, MAX_COLORS};
pub use solver::{
    brute_force_min_cover, greedy_track_peel_cover, minimalize_cover,
    solve_exact_min_weighted_cover, SolveMethod, SolveReport, SolverLimits, DEFAULT_ORACLE_CAP,
};
