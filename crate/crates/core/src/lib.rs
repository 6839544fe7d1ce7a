//! Decay points of monotone maps on the nonnegative orthant.
//!
//! For a monotone `T: R^n_+ → R^n_+` with `T(0) = 0`, a decay point is an
//! `s* ≫ 0` on the sphere `S_r = { s ≥ 0 : ‖s‖₁ = r }` with `Ts* ≪ s*`.
//! [`find_decay_point`] locates one by following complete labeled simplices
//! through a refining triangulation of `S_r`, and [`solve_problem1`] then
//! checks that the trajectory from `s*` tends to zero, which certifies
//! `[0, s*]` as part of the region of attraction of `s⁺ = Ts`.
//!
//! ```
//! use decaypoint::{find_decay_point, make_chain_map, SolverConfig};
//!
//! let t = make_chain_map(3).unwrap();
//! let report = find_decay_point(&t, &SolverConfig::new(10.0)).unwrap();
//! assert!(report.success);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod dynamics;
pub mod error;
pub mod homotopy;
pub mod labeling;
pub mod linear;
pub mod maps;
pub mod maxpreserving;
pub mod order;
pub mod scalar;

pub use dynamics::{
    iterate, ordering_check, solve_problem1, verify_attraction, CertificateReport, TrajectoryPoint,
    TrajectoryReport, DEFAULT_K_MAX, DEFAULT_STOP_TOL,
};
pub use error::{Error, Result};
pub use homotopy::{
    complete_subset_drops, complete_subsets, decay_margin, entry_set, find_decay_point,
    find_decay_point_observed, pivot_step, FailureReason, PivotEvent, SolveReport, SolverConfig,
    DEFAULT_EPSILON, DEFAULT_MAX_ITERATIONS, DEFAULT_MESH_TOLERANCE,
};
pub use labeling::{
    is_complete, label_eps, label_eps_with, label_exact, omega_membership, Label, LabeledVertexSet,
    TieBreak,
};
pub use linear::{
    neumann_inverse, perron_direction, random_contractive, spectral_radius, NonnegativeMatrix,
    PerronPair,
};
pub use maps::{
    chain_feasible_point, compose, make_chain_map, make_diagonal, make_flipflop_map,
    make_linear_map, make_max_preserving, ChainMap, Composed, DiagonalMap, FlipFlopMap, FnMap,
    GainEntry, LinearMap, MapSpec, MonotoneMap,
};
pub use maxpreserving::{
    cycle_condition, default_cycle_grid, path_q, reparametrize_path, CycleReading, CycleWitness,
    GainTable, MaxPreservingMap,
};
pub use order::{compare, one_norm, sphere_project, OrderRelation, OrthantVector};
pub use scalar::ScalarFn;
