//! Exhaustive enumeration of labeled interference paths and Monte Carlo
//! appearance frequencies of a fixed labeled path.

use crate::error::{Error, Result};
use crate::model::{sample_round, Pair};
use crate::trials::run_trials;

/// Largest `n` accepted by [`count_labeled_interference_paths`].
pub const ENUMERATION_MAX_N: usize = 8;

/// Counts tuples `⟨e_1..e_k; L⟩` where each `e_i` is a 2-subset of `[n]`,
/// consecutive edges intersect, and `L` is a `k`-subset of `[n]` of labels.
/// Every edge sequence and every label set is visited individually.
pub fn count_labeled_interference_paths(n: usize, k: usize) -> Result<u64> {
    if n < 2 || k == 0 || n > ENUMERATION_MAX_N {
        return Err(Error::Domain(format!(
            "enumeration needs 2 ≤ n ≤ {ENUMERATION_MAX_N} and k ≥ 1 (got n = {n}, k = {k})"
        )));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();

    fn extend(edges: &[(usize, usize)], last: (usize, usize), remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        edges
            .iter()
            .filter(|e| e.0 == last.0 || e.0 == last.1 || e.1 == last.0 || e.1 == last.1)
            .map(|&e| extend(edges, e, remaining - 1))
            .sum()
    }

    let sequences: u64 = edges.iter().map(|&e| extend(&edges, e, k - 1)).sum();
    let label_sets = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .count() as u64;
    Ok(sequences * label_sets)
}

/// Fraction of random rounds (`T = n`) in which every `(pair, label)` of
/// `path` occurs, i.e. the interaction labeled `label` joins `pair`.
pub fn labeled_path_frequency(
    n: usize,
    path: &[(Pair, u32)],
    trials: usize,
    master_seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("trials must be ≥ 1".into()));
    }
    if let Some(&(_, t)) = path.iter().find(|(_, t)| *t == 0 || *t as usize > n) {
        return Err(Error::Domain(format!("label {t} outside [1, {n}]")));
    }
    let hits = run_trials(trials, master_seed, |rng| {
        sample_round(n, n, rng).map(|r| {
            path.iter().all(|&(pair, t)| {
                let it = r.get(t).expect("label checked");
                Pair::new(it.initiator.0, it.responder.0) == pair
            })
        })
    });
    let mut count = 0usize;
    for h in hits {
        count += usize::from(h?);
    }
    Ok(count as f64 / trials as f64)
}
