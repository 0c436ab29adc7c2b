//! Path-space structure: sinks and sources, periods and residue classes,
//! eventual path-length thresholds, condition (K), cofinality, hereditary and
//! saturated closures, deep paths and aperiodicity of the incidence matrix.

mod aperiodic;
mod basic;
mod closure;
mod cofinal;
mod deep;
mod loops;
mod period;

pub use aperiodic::{first_positive_power, wielandt_bound, BoolMatrix};
pub use basic::{incidence_matrix, is_row_finite, sinks, sources};
pub use closure::{
    hereditary_closure, is_hereditary, is_saturated, saturated_closure, SaturatedClosure,
};
pub use cofinal::{cofinal_sc_subgraph, is_cofinal, reaching, CofinalReport, ScSubgraph};
pub use deep::{deep_paths, distance_layers};
pub use loops::{condition_k, simple_cycles, KReport, DEFAULT_CYCLE_CAP};
pub use period::{
    eventual_loop_threshold, path_threshold, period, strong_period, PathThreshold, PeriodReport,
};
