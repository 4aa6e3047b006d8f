use std::io::Write;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use roundsim::analysis::{
    adversarial_tail_frequency, balls_bins_max_load, ln_interference_path_bound, ln_union_bound,
    path_probability, sweep_expected_chain, tail_frequency, theorem2_bound, SweepResult, TailBound,
};
use roundsim::engine::{demo_protocols, execute_plan, ExecutionReport, SchedulerRegistry};
use roundsim::model::{adversarial_chain_round, sample_round, RoundHeader};
use roundsim::RngStream;

use crate::args::{Command, Format};

/// Exit code for a completed verification whose frequency exceeds the tail.
pub const EXIT_VERIFY_FAILED: u8 = 2;

pub struct Outcome {
    pub output: Vec<u8>,
    pub exit: u8,
}

impl Outcome {
    fn ok(output: Vec<u8>) -> Self {
        Self { output, exit: 0 }
    }
}

pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    let format = cmd.common().format;
    match *cmd {
        Command::Sample {
            n,
            length,
            seed,
            stream,
            adversarial,
            ..
        } => sample(n, length, seed, stream, adversarial, format),
        Command::Depth {
            n, trials, seed, ..
        } => sweep(&[n], trials, seed.expect("required by clap"), format),
        Command::Sweep {
            ref n_list,
            trials,
            seed,
            ..
        } => sweep(n_list, trials, seed.expect("required by clap"), format),
        Command::Verify {
            n,
            c,
            trials,
            seed,
            k,
            adversarial,
            ..
        } => verify(n, c, trials, seed, k, adversarial, format),
        Command::Bins {
            n, trials, seed, ..
        } => {
            let res = balls_bins_max_load(n, trials, seed.expect("required by clap"))?;
            Ok(Outcome::ok(single_record(&res, format)?))
        }
        Command::Run {
            ref protocol,
            n,
            ref schedule,
            steps,
            seed,
            ..
        } => run(
            protocol,
            n,
            schedule,
            steps,
            seed.expect("required by clap"),
            format,
        ),
        Command::Bound { n, c, .. } => bound(n, c, format),
    }
}

fn sample(
    n: usize,
    length: Option<usize>,
    seed: Option<u64>,
    stream: u64,
    adversarial: bool,
    format: Option<Format>,
) -> Result<Outcome> {
    let (round, key) = if adversarial {
        if length.is_some_and(|t| t != n) {
            bail!("the adversarial round always has T = n");
        }
        (adversarial_chain_round(n)?, None)
    } else {
        if n < 2 {
            return Err(roundsim::Error::InvalidPopulation(n).into());
        }
        let seed = seed.context("--seed is required")?;
        let mut rng = RngStream::new(seed, stream);
        (
            sample_round(n, length.unwrap_or(n), &mut rng)?,
            Some((seed, stream)),
        )
    };
    let mut out = Vec::new();
    match format.unwrap_or(Format::Jsonl) {
        Format::Jsonl => round.write_jsonl(&RoundHeader::for_round(&round, key), &mut out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["t", "a", "b"])?;
            for it in round.interactions() {
                w.write_record([
                    it.label.to_string(),
                    it.initiator.to_string(),
                    it.responder.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    trials: usize,
    mean_chain: f64,
    std_chain: f64,
    ci95: Option<f64>,
    mean_max_degree: f64,
    ratio: Option<f64>,
    seed: u64,
}

impl From<&SweepResult> for SweepRow {
    fn from(r: &SweepResult) -> Self {
        Self {
            n: r.n,
            trials: r.trials,
            mean_chain: r.mean_chain,
            std_chain: r.std_chain,
            ci95: r.ci95,
            mean_max_degree: r.mean_max_degree,
            ratio: r.ratio,
            seed: r.seed,
        }
    }
}

fn sweep(n_list: &[usize], trials: usize, seed: u64, format: Option<Format>) -> Result<Outcome> {
    let results = sweep_expected_chain(n_list, trials, seed)?;
    let mut out = Vec::new();
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for r in &results {
                w.serialize(SweepRow::from(r))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            for r in &results {
                serde_json::to_writer(&mut out, r)?;
                out.push(b'\n');
            }
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct VerifyReport {
    n: u64,
    c: f64,
    k: u64,
    bound_value: f64,
    ln_bound_value: f64,
    trials: Option<usize>,
    exceedances: Option<usize>,
    empirical_freq: Option<f64>,
    adversarial: bool,
    threshold: Option<f64>,
    passed: bool,
}

impl VerifyReport {
    fn new(bound: TailBound, adversarial: bool) -> Self {
        Self {
            threshold: bound.acceptance_threshold(),
            passed: bound.within_tail().unwrap_or(false),
            n: bound.n,
            c: bound.c,
            k: bound.k,
            bound_value: bound.bound_value,
            ln_bound_value: bound.ln_bound_value,
            trials: bound.trials,
            exceedances: bound.exceedances,
            empirical_freq: bound.empirical_freq,
            adversarial,
        }
    }
}

fn verify(
    n: usize,
    c: f64,
    trials: usize,
    seed: Option<u64>,
    k: Option<usize>,
    adversarial: bool,
    format: Option<Format>,
) -> Result<Outcome> {
    let mut bound = theorem2_bound(n as u64, c)?;
    if let Some(k) = k {
        if k == 0 {
            bail!("--k must be ≥ 1");
        }
        bound.k = k as u64;
        bound.ln_bound_value = ln_union_bound(n as u64, bound.k)?;
        bound.bound_value = bound.ln_bound_value.exp();
    }
    let k = bound.k as usize;
    let freq = if adversarial {
        adversarial_tail_frequency(n, k, trials)?
    } else {
        tail_frequency(n, k, trials, seed.context("--seed is required")?)?
    };
    let report = VerifyReport::new(bound.with_empirical(&freq), adversarial);
    Ok(Outcome {
        output: single_record(&report, format)?,
        exit: if report.passed { 0 } else { EXIT_VERIFY_FAILED },
    })
}

fn run(
    protocol: &str,
    n: usize,
    schedule: &str,
    steps: Option<usize>,
    seed: u64,
    format: Option<Format>,
) -> Result<Outcome> {
    if format == Some(Format::Csv) {
        bail!("`run` only emits jsonl");
    }
    let f = demo_protocols().get(protocol)?;
    let scheduler = SchedulerRegistry::new().parse(schedule)?;
    let plan = scheduler.plan(n, steps, &mut RngStream::new(seed, 0))?;
    let init = f.initial_configuration(n);
    let report: ExecutionReport = execute_plan(&plan, f.as_ref(), &init)?;
    let mut out = serde_json::to_vec(&report)?;
    out.push(b'\n');
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct BoundReport {
    n: u64,
    c: f64,
    k: u64,
    bound_value: f64,
    ln_bound_value: f64,
    ln_path_count_bound: f64,
    path_probability: f64,
}

fn bound(n: u64, c: f64, format: Option<Format>) -> Result<Outcome> {
    let b = theorem2_bound(n, c)?;
    let report = BoundReport {
        n,
        c,
        k: b.k,
        bound_value: b.bound_value,
        ln_bound_value: b.ln_bound_value,
        ln_path_count_bound: ln_interference_path_bound(n, b.k)?,
        path_probability: path_probability(n, b.k)?,
    };
    Ok(Outcome::ok(single_record(&report, format)?))
}

/// One JSON line, or a CSV header plus one row.
fn single_record<T: Serialize>(value: &T, format: Option<Format>) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    match format.unwrap_or(Format::Jsonl) {
        Format::Jsonl => {
            serde_json::to_writer(&mut out, value)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.serialize(value)?;
            w.flush()?;
        }
    }
    Ok(out)
}
