//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances and seeds are fixed here.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use roundsim::analysis::{
    balls_bins_max_load, count_labeled_interference_paths, labeled_path_frequency,
    ln_interference_path_bound, log_ratio_normalizer, path_probability, predicted_max_load,
    sample_chain_stats, tail_frequency, theorem_k,
};
use roundsim::dependency::{brute_force_chain, chain_stats, level_decomposition};
use roundsim::engine::{
    demo_protocols, execute_by_levels, execute_k_parallel, execute_sequential, Configuration,
    LeaderCollision, TransitionFunction,
};
use roundsim::model::{
    adversarial_chain_round, sample_k_parallel_schedule, sample_round, Pair, Round,
};
use roundsim::RngStream;

// Fixture seeds. Pilot values observed with these seeds are noted per criterion.
const SEED_ORACLE: u64 = 0x0AC1E;
const SEED_SOUNDNESS: u64 = 0x50D;
const SEED_LOWER: u64 = 2024; // pilot: mean max degree 10.70, all chains ≥ 2
const SEED_UPPER: u64 = 3; // pilot: 18 of 2000 rounds with chain ≥ 17
const SEED_PATH: u64 = 0x9A7;
const SEED_KPAR: u64 = 8;
const SEED_BINS: u64 = 31;
const SEED_BINS_LARGE: u64 = 9; // pilot: mean max load 10.61

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [2usize, 10, 1000] {
        let r = adversarial_chain_round(n).unwrap();
        let s = chain_stats(&r);
        let f = LeaderCollision;
        let rep = execute_by_levels(&r, &f, &f.initial_configuration(n)).unwrap();
        let good = s.chain_size == n && s.level_count == n && rep.parallel_steps == n;
        ok &= good;
        notes.push(format!(
            "n={n}: chain {} levels {} steps {}",
            s.chain_size, s.level_count, rep.parallel_steps
        ));
    }
    verdict(ok, notes.join("; "))
}

fn criterion_2() -> Verdict {
    let mut checked = 0;
    for n in [4usize, 8, 16, 32, 64] {
        for i in 0..1000 {
            let r = sample_round(n, n, &mut RngStream::new(SEED_ORACLE, i)).unwrap();
            if chain_stats(&r) != brute_force_chain(&r).unwrap() {
                return verdict(false, format!("mismatch at n={n}, stream {i}"));
            }
            checked += 1;
        }
    }
    for n in 2..=64 {
        let r = adversarial_chain_round(n).unwrap();
        if chain_stats(&r) != brute_force_chain(&r).unwrap() {
            return verdict(false, format!("mismatch on adversarial n={n}"));
        }
        checked += 1;
    }
    verdict(true, format!("{checked} rounds identical"))
}

fn levels_disjoint(r: &Round) -> bool {
    let mut stamp = vec![usize::MAX; r.n_agents()];
    for (i, level) in level_decomposition(r).levels.iter().enumerate() {
        for &t in level {
            for a in r.get(t).unwrap().agents() {
                if stamp[a.index()] == i {
                    return false;
                }
                stamp[a.index()] = i;
            }
        }
    }
    true
}

fn criterion_3() -> Verdict {
    let n = 256;
    let catalog = demo_protocols();
    let mut runs = 0;
    for i in 0..500u64 {
        let mut rng = RngStream::new(SEED_SOUNDNESS, i);
        let r = sample_round(n, n, &mut rng).unwrap();
        if !levels_disjoint(&r) {
            return verdict(false, format!("level shares an agent, stream {i}"));
        }
        for name in ["identity", "epidemic", "leader-collision"] {
            let f = catalog.get(name).unwrap();
            let init = Configuration::new(
                (0..n)
                    .map(|_| rng.below(f.state_count() as usize) as u32)
                    .collect(),
            );
            let seq = execute_sequential(&r, f.as_ref(), &init).unwrap();
            let lvl = execute_by_levels(&r, f.as_ref(), &init).unwrap();
            if seq.final_config != lvl.final_config {
                return verdict(false, format!("{name} diverges on stream {i}"));
            }
            runs += 1;
        }
    }
    verdict(
        true,
        format!("{runs} executions identical, all levels agent-disjoint"),
    )
}

fn criterion_4() -> Verdict {
    let n = 100_000usize;
    let trials = 100;
    let stats = sample_chain_stats(n, n, trials, SEED_LOWER).unwrap();
    let mean_deg = stats.iter().map(|s| s.max_agent_degree as f64).sum::<f64>() / trials as f64;
    let predicted = predicted_max_load(n).unwrap();
    let deg_ok = (mean_deg - predicted).abs() <= 1.0;
    let k = (0.5 * log_ratio_normalizer(n).unwrap()).floor() as usize;
    let long_enough = stats.iter().filter(|s| s.chain_size >= k).count();
    let chain_ok = long_enough as f64 >= 0.99 * trials as f64;
    verdict(
        deg_ok && chain_ok,
        format!(
            "mean max degree {mean_deg:.3} vs Γ⁻¹(2n)−3/2 = {predicted:.3} (|Δ| ≤ 1.0: {deg_ok}); \
             chain ≥ {k} in {long_enough}/{trials} (≥ 99%: {chain_ok})"
        ),
    )
}

fn criterion_5() -> Verdict {
    let n = 10_000usize;
    let k = theorem_k(n as u64, 1.0).unwrap() as usize;
    if k != 17 {
        return verdict(false, format!("k = {k}, expected 17"));
    }
    let f = tail_frequency(n, k, 2000, SEED_UPPER).unwrap();
    verdict(
        f.exceedances <= 1,
        format!(
            "{} of 2000 rounds with chain ≥ {k} (allowed ≤ 1)",
            f.exceedances
        ),
    )
}

fn criterion_6() -> Verdict {
    for n in 2..=6usize {
        for k in 1..=3usize {
            let count = count_labeled_interference_paths(n, k).unwrap();
            let bound = ln_interference_path_bound(n as u64, k as u64)
                .unwrap()
                .exp();
            if count as f64 > bound * (1.0 + 1e-12) {
                return verdict(false, format!("n={n}, k={k}: {count} > {bound}"));
            }
        }
    }
    let worst = count_labeled_interference_paths(6, 3).unwrap();
    verdict(
        true,
        format!("all n ≤ 6, k ≤ 3 within bound (n=6,k=3: {worst} paths)"),
    )
}

fn criterion_7() -> Verdict {
    let trials = 100_000;
    let p = path_probability(4, 2).unwrap();
    let exact = 1.0 / 36.0;
    let path = [(Pair::new(0, 1), 1u32), (Pair::new(1, 2), 3u32)];
    let freq = labeled_path_frequency(4, &path, trials, SEED_PATH).unwrap();
    let se = (exact * (1.0 - exact) / trials as f64).sqrt();
    let ok = (p - exact).abs() < 1e-15 && (freq - exact).abs() <= 3.0 * se;
    verdict(
        ok,
        format!(
            "freq {freq:.5} vs 1/36 = {exact:.5}, 3 SE = {:.5}",
            3.0 * se
        ),
    )
}

fn criterion_8() -> Verdict {
    let (n, k, steps) = (1000usize, 100usize, 100usize);
    let sched = sample_k_parallel_schedule(n, k, steps, &mut RngStream::new(SEED_KPAR, 0)).unwrap();
    for (i, step) in sched.steps().iter().enumerate() {
        let mut agents: Vec<_> = step.iter().flat_map(|p| [p.0, p.1]).collect();
        agents.sort();
        agents.dedup();
        if step.len() != k || agents.len() != 2 * k {
            return verdict(false, format!("step {i} is not a {k}-matching"));
        }
    }
    let f = LeaderCollision;
    let rep = execute_k_parallel(&sched, &f, &f.initial_configuration(n)).unwrap();
    verdict(
        rep.parallel_steps == 100 && rep.interactions_applied == 10_000,
        format!(
            "{} interactions in {} parallel steps",
            rep.interactions_applied, rep.parallel_steps
        ),
    )
}

fn criterion_9() -> Verdict {
    // all 16 placements of 4 balls into 2 bins
    let exact = (0u32..16)
        .map(|m| f64::from(m.count_ones().max(4 - m.count_ones())))
        .sum::<f64>()
        / 16.0;
    let r = balls_bins_max_load(2, 100_000, SEED_BINS).unwrap();
    verdict(
        (r.mean_max_load - exact).abs() <= 0.02,
        format!("mean {:.4} vs exact {exact}", r.mean_max_load),
    )
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_roundsim"))
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code(), o.stdout)
}

fn criterion_10() -> Verdict {
    let invocations: &[&[&str]] = &[
        &["sample", "--n", "50", "--t", "80", "--seed", "42"],
        &["sample", "--n", "50", "--seed", "42", "--format", "csv"],
        &["depth", "--n", "1024", "--trials", "200", "--seed", "7"],
        &[
            "sweep",
            "--n",
            "64,256,1024",
            "--trials",
            "50",
            "--seed",
            "7",
            "--format",
            "jsonl",
        ],
        &[
            "verify", "--n", "1000", "--c", "1", "--trials", "300", "--seed", "3",
        ],
        &["verify", "--adversarial", "--n", "100"],
        &["bins", "--n", "10000", "--trials", "50", "--seed", "9"],
        &[
            "run",
            "--protocol",
            "epidemic",
            "--n",
            "1000",
            "--schedule",
            "levels",
            "--seed",
            "4",
        ],
        &[
            "run",
            "--protocol",
            "leader-collision",
            "--n",
            "1000",
            "--schedule",
            "kparallel:50",
            "--steps",
            "20",
            "--seed",
            "4",
        ],
        &[
            "run",
            "--protocol",
            "identity",
            "--n",
            "200",
            "--schedule",
            "sequential",
            "--seed",
            "4",
        ],
        &["bound", "--n", "10000", "--c", "1"],
    ];
    for args in invocations {
        let base = cli(args);
        for jobs in ["1", "3", "8"] {
            let mut with_jobs = args.to_vec();
            with_jobs.extend(["--jobs", jobs]);
            if cli(&with_jobs) != base {
                return verdict(false, format!("{args:?} differs with --jobs {jobs}"));
            }
        }
        if cli(args) != base {
            return verdict(false, format!("{args:?} differs on repeat"));
        }
    }
    verdict(
        true,
        format!(
            "{} invocations byte-identical across repeats and --jobs",
            invocations.len()
        ),
    )
}

// Per-operation examples that share the root cause of criteria 4 and 5.

fn example_degree_band() -> Verdict {
    let n = 100_000usize;
    let stats = sample_chain_stats(n, n, 100, SEED_LOWER).unwrap();
    let mean = stats.iter().map(|s| s.max_agent_degree as f64).sum::<f64>() / 100.0;
    let g = predicted_max_load(n).unwrap() + 1.5;
    verdict(
        mean >= g - 3.5 && mean <= g + 0.5,
        format!(
            "mean max degree {mean:.3} vs band [{:.3}, {:.3}]",
            g - 3.5,
            g + 0.5
        ),
    )
}

fn example_bins_large() -> Verdict {
    let r = balls_bins_max_load(100_000, 100, SEED_BINS_LARGE).unwrap();
    verdict(
        (r.mean_max_load - r.predicted).abs() <= 1.0,
        format!(
            "mean {:.3} vs predicted {:.3}",
            r.mean_max_load, r.predicted
        ),
    )
}

fn example_verify_cli() -> Verdict {
    let (code, out) = cli(&[
        "verify", "--n", "10000", "--c", "1", "--trials", "2000", "--seed", "3",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
    verdict(
        code == Some(0) && v["k"] == 17,
        format!(
            "exit {code:?}, k {}, empirical_freq {}",
            v["k"], v["empirical_freq"]
        ),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Verdict;
    let criteria: [(&str, &str, Duration, Check); 13] = [
        (
            "1",
            "worst-case round is one chain",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            "2",
            "chain DP equals brute-force DAG oracle",
            Duration::from_secs(10),
            criterion_2,
        ),
        (
            "3",
            "level scheduling is sound",
            Duration::from_secs(30),
            criterion_3,
        ),
        (
            "4",
            "max-degree lower-bound surrogate at n=1e5",
            Duration::from_secs(60),
            criterion_4,
        ),
        (
            "5",
            "no chain of 17 at n=1e4 in ≥ 1999/2000",
            Duration::from_secs(120),
            criterion_5,
        ),
        (
            "6",
            "labeled interference-path counting bound",
            Duration::from_secs(10),
            criterion_6,
        ),
        (
            "7",
            "fixed labeled path probability 1/36",
            Duration::from_secs(30),
            criterion_7,
        ),
        (
            "8",
            "k-parallel contract, 1e4 interactions at k=100",
            Duration::from_secs(1),
            criterion_8,
        ),
        (
            "9",
            "two-bin max load vs enumeration",
            Duration::from_secs(10),
            criterion_9,
        ),
        (
            "10",
            "CLI determinism",
            Duration::from_secs(600),
            criterion_10,
        ),
        (
            "ex-degree",
            "max degree band at n=1e5",
            Duration::from_secs(60),
            example_degree_band,
        ),
        (
            "ex-bins",
            "bins n=1e5 within 1.0 of prediction",
            Duration::from_secs(60),
            example_bins_large,
        ),
        (
            "ex-verify",
            "verify n=1e4 c=1 exits 0",
            Duration::from_secs(120),
            example_verify_cli,
        ),
    ];
    let mut failed = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let kind = if id.starts_with("ex-") {
            "example"
        } else {
            "criterion"
        };
        println!(
            "{} {kind} {id}: {title} ({:.2}s / {}s{}) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", too slow" },
            v.detail
        );
    }
    println!("{} of {} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
