//! Closed-form engine: set posteriors, decision pmfs, fusion weights,
//! Gaussian error characterization, and the auxiliary measures (blinding,
//! pair agreement ratio, Bhattacharyya distance, transmitted bits).

pub mod as_printed;
pub mod kernel;
mod measures;
mod performance;
mod pmf;
mod posterior;

pub use measures::{
    bhattacharyya_distance, blinding_condition, expected_transmitted_bits, mismatch_ratio_f,
    mismatch_ratio_f_by_complement, Blinding, ExpectedBits, Grouping,
};
pub use performance::{q_function, scheme_performance, FusionTerm, Scheme, SchemePerformance};
pub use pmf::{
    clamp_probability, conditional_pmf, exact_group_vote, group_vote_pmf, llr_weight, threshold_offset,
    ConditionalPmf, EPSILON,
};
pub use posterior::{eas_posterior, intelligent_posterior, tas_posterior, SetEntry, SetId, SetPosterior};
