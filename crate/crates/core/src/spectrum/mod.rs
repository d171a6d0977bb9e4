//! Exact weight spectra of small Reed-Muller codes and the quantities
//! derived from them.

mod bounds;
mod calculators;
mod enumerator;
mod intervals;

pub use bounds::{
    check_low_bound, check_med_bound, low_weight_coefficients, ss_low_bound,
    ss_low_bound_simplified, ss_med_bound, wtdist, BoundCheck, BoundParams,
};
pub use calculators::{
    expected_size, expected_size_exact, expected_size_log_space, k_for_epsilon, scaled_avoid_sum,
    union_bound_failure, union_bound_failure_exact, EXACT_MAX_N,
};
pub use enumerator::{
    weight_enumerator, weight_enumerator_with, WeightEnumerator, DEFAULT_ENUM_CAP,
};
pub use intervals::{interval_counts, SpectrumReport};
