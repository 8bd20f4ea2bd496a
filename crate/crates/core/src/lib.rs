//! Simulation and verification of lackadaisical quantum walks and quantum
//! interpolated walks on regular graphs.
//!
//! The crate is organized around the two walks and the machinery connecting
//! them:
//!
//! - [`graph`]: regular graphs with ordered arcs, family generators, and the
//!   brute-force local arc-transitivity checker.
//! - [`classical`]: the random walk P, absorbing/interpolated/lazy variants,
//!   and classical hitting times (exact solve plus Monte Carlo oracle).
//! - [`spectral`]: discriminants, a deterministic symmetric eigensolver,
//!   interpolated hitting times and the cotangent quantum hitting time.
//! - [`coined`]: the lackadaisical walk L and its variant on the coin space,
//!   with matrix-free O(dN) steps.
//! - [`szegedy`]: the quantum interpolated walk in reduced edge space,
//!   eigenpair lifting, the isometries between the spaces, and trajectory
//!   distances.
//! - [`verify`]: one check per claim, producing `ClaimReport`s.

pub mod classical;
pub mod coined;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod spectral;
pub mod szegedy;
pub mod verify;

pub use classical::{
    absorbing_matrix, hitting_time_exact, hitting_time_monte_carlo, interpolated_matrix,
    lazy_interpolated_matrix, lazy_matrix, walk_matrix, Distribution, MonteCarloEstimate,
    StochasticMatrix, WalkKind,
};
pub use coined::{
    apply_coin, apply_oracle_g, apply_oracle_ghat, apply_shift, initial_state_lazy,
    marked_arc_spread, step_l, step_lhat, success_probability, verify_marked_arc_symmetry,
    CoinConfig, CoinState, WalkVariant,
};
pub use error::{Result, WalkError};
pub use graph::{
    build_graph, is_locally_arc_transitive, parse_edge_list, GraphFamily, MarkedInstance,
    RegularGraph, BRUTE_FORCE_LIMIT,
};
pub use spectral::{
    cotangent_qht_from_spectrum, discriminant, eigendecompose, interpolated_hitting_time,
    overlap_decomposition, Discriminant, OverlapDecomposition, Spectrum,
};
pub use szegedy::{
    busy_projection, cotangent_qht_direct, evolve_via_eigenpairs, initial_state_ip, isometry_e,
    isometry_e_adjoint, isometry_t, isometry_t_adjoint, lift_eigenpairs,
    r1_r2_operator_distance, step_u, theorem2_distances, BusyProjection, EdgeSpace, EdgeState,
    FrameTransport, SzegedyEigenpair, Theorem2Row, WalkParams,
};
pub use verify::{
    check_arc_invariance, check_facts, check_lemma1, check_lemma2, check_lemma3, check_theorem1,
    check_theorem2, default_t_max, eigenvalue_map_residual, search_experiment, threshold_angle,
    ClaimReport, SearchCurve,
};
