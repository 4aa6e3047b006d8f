//! Monte Carlo estimators and closed-form evaluators for chain lengths,
//! maximum loads and the long-path tail.

mod bins;
mod gamma;
mod paths;
mod sweep;
mod tail;

pub use bins::{balls_bins_max_load, predicted_max_load, BinsResult};
pub use gamma::inverse_gamma;
pub use paths::{count_labeled_interference_paths, labeled_path_frequency, ENUMERATION_MAX_N};
pub use sweep::{
    log_ratio_normalizer, sample_chain_stats, summarize, sweep_expected_chain, SweepResult,
    MIN_TRIALS_FOR_CI,
};
pub use tail::{
    adversarial_tail_frequency, ln_interference_path_bound, ln_interference_path_count,
    ln_union_bound, min_k_for_bound, path_probability, tail_frequency, theorem2_bound, theorem_k,
    TailBound, TailFrequency,
};
