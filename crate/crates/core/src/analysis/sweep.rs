use serde::{Deserialize, Serialize};

use crate::dependency::{chain_stats, ChainStats};
use crate::error::{Error, Result};
use crate::model::sample_round;
use crate::trials::run_trials;

/// Fewest trials for which a normal-approximation CI is reported.
pub const MIN_TRIALS_FOR_CI: usize = 30;

/// Aggregate chain statistics for random rounds of one population size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub n: usize,
    pub trials: usize,
    pub mean_chain: f64,
    pub std_chain: f64,
    /// Half-width of the 95% CI on `mean_chain`; absent below 30 trials.
    pub ci95: Option<f64>,
    pub mean_max_degree: f64,
    /// `mean_chain / (ln n / ln ln n)`; absent when `ln ln n ≤ 0`.
    pub ratio: Option<f64>,
    pub seed: u64,
    /// Raw chain sizes, kept only when there are too few trials for a CI.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<Vec<usize>>,
}

/// `ln n / ln ln n`, or `None` where it is not positive.
pub fn log_ratio_normalizer(n: usize) -> Option<f64> {
    let l = (n as f64).ln();
    let ll = l.ln();
    (ll > 0.0 && l.is_finite()).then(|| l / ll)
}

/// Chain statistics for `trials` rounds of length `length` over `n` agents.
/// Trial `i` uses stream `i` of `master_seed`.
pub fn sample_chain_stats(
    n: usize,
    length: usize,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<ChainStats>> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    let out = run_trials(trials, master_seed, |rng| {
        sample_round(n, length, rng).map(|r| chain_stats(&r))
    });
    out.into_iter().collect()
}

pub fn summarize(n: usize, master_seed: u64, stats: &[ChainStats]) -> SweepResult {
    let trials = stats.len();
    let t = trials as f64;
    let mean_chain = stats.iter().map(|s| s.chain_size as f64).sum::<f64>() / t;
    let var = if trials > 1 {
        stats
            .iter()
            .map(|s| (s.chain_size as f64 - mean_chain).powi(2))
            .sum::<f64>()
            / (t - 1.0)
    } else {
        0.0
    };
    let std_chain = var.sqrt();
    let mean_max_degree = stats.iter().map(|s| s.max_agent_degree as f64).sum::<f64>() / t;
    let enough = trials >= MIN_TRIALS_FOR_CI;
    SweepResult {
        n,
        trials,
        mean_chain,
        std_chain,
        ci95: enough.then(|| 1.96 * std_chain / t.sqrt()),
        mean_max_degree,
        ratio: log_ratio_normalizer(n).map(|d| mean_chain / d),
        seed: master_seed,
        samples: (!enough).then(|| stats.iter().map(|s| s.chain_size).collect()),
    }
}

/// One [`SweepResult`] per population size, each over `trials` rounds with `T = n`.
pub fn sweep_expected_chain(
    n_list: &[usize],
    trials: usize,
    master_seed: u64,
) -> Result<Vec<SweepResult>> {
    if trials < 2 {
        return Err(Error::Domain(format!(
            "a sweep needs ≥ 2 trials (got {trials})"
        )));
    }
    n_list
        .iter()
        .map(|&n| {
            let stats = sample_chain_stats(n, n, trials, master_seed)?;
            Ok(summarize(n, master_seed, &stats))
        })
        .collect()
}
