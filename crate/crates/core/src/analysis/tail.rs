//! Union-bound tail for long monotone interference paths and its empirical
//! counterpart.
//!
//! For a round of `n` interactions over `n` agents the number of labeled
//! interference paths with `k` edges is at most `2^(k-1) n^(2k+1) / k!`, each
//! appears with probability `(1 / C(n,2))^k ≤ (2/n)^(2k)`, so a monotone path
//! of `k` interactions exists with probability at most `8^k n / k!`. All
//! three quantities are evaluated as logarithms.

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::dependency::chain_stats;
use crate::error::{Error, Result};
use crate::model::{adversarial_chain_round, sample_round};
use crate::trials::run_trials;

fn ln_choose2(n: u64) -> f64 {
    (n as f64).ln() + ((n - 1) as f64).ln() - std::f64::consts::LN_2
}

fn check_nk(n: u64, k: u64) -> Result<()> {
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!(
            "need n ≥ 2 and k ≥ 1 (got n = {n}, k = {k})"
        )));
    }
    Ok(())
}

/// `ln(2^(k-1) n^(2k+1) / k!)`, the upper bound on the number of labeled
/// interference paths of `k` edges.
pub fn ln_interference_path_bound(n: u64, k: u64) -> Result<f64> {
    check_nk(n, k)?;
    Ok(
        (k - 1) as f64 * std::f64::consts::LN_2 + (2 * k + 1) as f64 * (n as f64).ln()
            - ln_factorial(k),
    )
}

/// `ln(C(n,2) (2n-3)^(k-1) C(n,k))`, the exact number of labeled interference
/// paths of `k` edges with labels drawn from `[n]`. Zero paths when `k > n`.
pub fn ln_interference_path_count(n: u64, k: u64) -> Result<Option<f64>> {
    check_nk(n, k)?;
    if k > n {
        return Ok(None);
    }
    let ln_labels = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
    Ok(Some(
        ln_choose2(n) + (k - 1) as f64 * ((2 * n - 3) as f64).ln() + ln_labels,
    ))
}

/// `(1 / C(n,2))^k`: probability that a fixed labeled path of `k` edges
/// appears in a uniformly random round.
pub fn path_probability(n: u64, k: u64) -> Result<f64> {
    check_nk(n, k)?;
    Ok((-(k as f64) * ln_choose2(n)).exp())
}

/// `ln(8^k n / k!)`.
pub fn ln_union_bound(n: u64, k: u64) -> Result<f64> {
    check_nk(n, k)?;
    Ok(k as f64 * 8f64.ln() + (n as f64).ln() - ln_factorial(k))
}

/// `⌈(3 + c) ln n / ln ln n⌉`.
pub fn theorem_k(n: u64, c: f64) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "ln ln n must be positive, which needs n ≥ 3 (got {n})"
        )));
    }
    if c.is_nan() || c <= 0.0 || c.is_infinite() {
        return Err(Error::Domain(format!(
            "c must be a positive constant (got {c})"
        )));
    }
    let l = (n as f64).ln();
    Ok(((3.0 + c) * l / l.ln()).ceil() as u64)
}

/// Smallest `k ≥ 1` with `8^k n / k! ≤ target`.
pub fn min_k_for_bound(n: u64, target: f64) -> Result<u64> {
    if target.is_nan() || target <= 0.0 {
        return Err(Error::Domain(format!(
            "target must be positive (got {target})"
        )));
    }
    let ln_target = target.ln();
    let mut k = 1;
    while ln_union_bound(n, k)? > ln_target {
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub n: u64,
    pub c: f64,
    pub k: u64,
    /// `8^k n / k!`; may exceed 1, in which case it is vacuous.
    pub bound_value: f64,
    pub ln_bound_value: f64,
    pub trials: Option<usize>,
    pub exceedances: Option<usize>,
    pub empirical_freq: Option<f64>,
}

impl TailBound {
    pub fn with_empirical(mut self, freq: &TailFrequency) -> Self {
        self.trials = Some(freq.trials);
        self.exceedances = Some(freq.exceedances);
        self.empirical_freq = Some(freq.empirical_freq);
        self
    }

    /// Largest empirical frequency still consistent with the `n^(-c)` tail:
    /// `max(5 n^(-c), 2 / trials)`.
    pub fn acceptance_threshold(&self) -> Option<f64> {
        let trials = self.trials?;
        let tail = 5.0 * (self.n as f64).powf(-self.c);
        Some(tail.max(2.0 / trials as f64))
    }

    pub fn within_tail(&self) -> Option<bool> {
        Some(self.empirical_freq? <= self.acceptance_threshold()?)
    }
}

pub fn theorem2_bound(n: u64, c: f64) -> Result<TailBound> {
    let k = theorem_k(n, c)?;
    let ln_bound = ln_union_bound(n, k)?;
    Ok(TailBound {
        n,
        c,
        k,
        bound_value: ln_bound.exp(),
        ln_bound_value: ln_bound,
        trials: None,
        exceedances: None,
        empirical_freq: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFrequency {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub exceedances: usize,
    pub empirical_freq: f64,
}

/// Fraction of `trials` random rounds (`T = n`) whose longest monotone
/// interference path has at least `k` interactions.
pub fn tail_frequency(
    n: usize,
    k: usize,
    trials: usize,
    master_seed: u64,
) -> Result<TailFrequency> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    if k == 0 || trials == 0 {
        return Err(Error::Domain(format!(
            "need k ≥ 1 and trials ≥ 1 (got k = {k}, trials = {trials})"
        )));
    }
    let hits = run_trials(trials, master_seed, |rng| {
        sample_round(n, n, rng).map(|r| chain_stats(&r).chain_size >= k)
    });
    let mut exceedances = 0;
    for h in hits {
        exceedances += usize::from(h?);
    }
    Ok(TailFrequency {
        n,
        k,
        trials,
        exceedances,
        empirical_freq: exceedances as f64 / trials as f64,
    })
}

/// Tail frequency of the deterministic worst-case round, repeated `trials` times.
pub fn adversarial_tail_frequency(n: usize, k: usize, trials: usize) -> Result<TailFrequency> {
    if k == 0 || trials == 0 {
        return Err(Error::Domain(format!(
            "need k ≥ 1 and trials ≥ 1 (got k = {k}, trials = {trials})"
        )));
    }
    let hit = chain_stats(&adversarial_chain_round(n)?).chain_size >= k;
    let exceedances = if hit { trials } else { 0 };
    Ok(TailFrequency {
        n,
        k,
        trials,
        exceedances,
        empirical_freq: exceedances as f64 / trials as f64,
    })
}
