use serde::{Deserialize, Serialize};

use crate::analysis::gamma::inverse_gamma;
use crate::error::{Error, Result};
use crate::trials::run_trials;

/// Maximum bin load for `2n` balls in `n` bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinsResult {
    pub n_bins: usize,
    pub n_balls: usize,
    pub trials: usize,
    pub mean_max_load: f64,
    /// `Γ⁻¹(2n) − 3/2`.
    pub predicted: f64,
    pub seed: u64,
}

/// `Γ⁻¹(2n) − 3/2`, the predicted expected maximum load of `2n` balls in `n` bins.
pub fn predicted_max_load(n_bins: usize) -> Result<f64> {
    Ok(inverse_gamma(2.0 * n_bins as f64)? - 1.5)
}

pub fn balls_bins_max_load(n_bins: usize, trials: usize, master_seed: u64) -> Result<BinsResult> {
    if n_bins == 0 || trials == 0 {
        return Err(Error::Domain(format!(
            "need n_bins ≥ 1 and trials ≥ 1 (got {n_bins}, {trials})"
        )));
    }
    let n_balls = 2 * n_bins;
    let loads = run_trials(trials, master_seed, |rng| {
        let mut bins = vec![0u32; n_bins];
        for _ in 0..n_balls {
            bins[rng.below(n_bins)] += 1;
        }
        bins.into_iter().max().unwrap_or(0)
    });
    let mean = loads.iter().map(|&l| f64::from(l)).sum::<f64>() / trials as f64;
    Ok(BinsResult {
        n_bins,
        n_balls,
        trials,
        mean_max_load: mean,
        predicted: predicted_max_load(n_bins)?,
        seed: master_seed,
    })
}
