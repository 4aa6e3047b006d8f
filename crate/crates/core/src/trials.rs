//! Fans independent trials out over the rayon pool.
//!
//! Trial `i` always draws from `RngStream::new(master_seed, i)` and results
//! come back in trial order, so every fold over them is independent of the
//! number of worker threads.

use rayon::prelude::*;

use crate::rng::RngStream;

pub fn run_trials<T, F>(trials: usize, master_seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream) -> T + Sync + Send,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|i| f(&mut RngStream::new(master_seed, i)))
        .collect()
}

/// Runs `op` inside a dedicated pool of `jobs` threads (`None` = rayon default).
pub fn with_jobs<R: Send>(jobs: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        },
        None => op(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn order_and_values_ignore_pool_size() {
        let draw = |r: &mut RngStream| r.next_u64();
        let one = with_jobs(Some(1), || run_trials(64, 5, draw));
        let many = with_jobs(Some(8), || run_trials(64, 5, draw));
        assert_eq!(one, many);
        assert_eq!(one[3], RngStream::new(5, 3).next_u64());
    }
}
