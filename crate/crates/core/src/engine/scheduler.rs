//! Named execution schedules, selectable at runtime by a spec string such as
//! `sequential`, `levels` or `kparallel:50`.

use std::collections::BTreeMap;

use crate::engine::StepPlan;
use crate::error::{Error, Result};
use crate::model::{sample_k_parallel_schedule, sample_round};
use crate::rng::RngStream;

pub trait Scheduler: Send + Sync {
    /// Spec string that selects this scheduler.
    fn name(&self) -> String;

    /// Samples a workload over `n` agents and lowers it to parallel steps.
    ///
    /// `length` is the round length for round-based schedules and the number
    /// of matchings for matching-based ones; `None` picks one round's worth of
    /// interactions.
    fn plan(&self, n: usize, length: Option<usize>, rng: &mut RngStream) -> Result<StepPlan>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SequentialScheduler;

impl Scheduler for SequentialScheduler {
    fn name(&self) -> String {
        "sequential".into()
    }

    fn plan(&self, n: usize, length: Option<usize>, rng: &mut RngStream) -> Result<StepPlan> {
        let round = sample_round(n, length.unwrap_or(n), rng)?;
        Ok(StepPlan::sequential(&round))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LevelScheduler;

impl Scheduler for LevelScheduler {
    fn name(&self) -> String {
        "levels".into()
    }

    fn plan(&self, n: usize, length: Option<usize>, rng: &mut RngStream) -> Result<StepPlan> {
        let round = sample_round(n, length.unwrap_or(n), rng)?;
        Ok(StepPlan::by_levels(&round))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KParallelScheduler {
    pub k: usize,
}

impl Scheduler for KParallelScheduler {
    fn name(&self) -> String {
        format!("kparallel:{}", self.k)
    }

    fn plan(&self, n: usize, length: Option<usize>, rng: &mut RngStream) -> Result<StepPlan> {
        let steps = length.unwrap_or_else(|| n.div_ceil(self.k.max(1)));
        let schedule = sample_k_parallel_schedule(n, self.k, steps, rng)?;
        Ok(StepPlan::k_parallel(&schedule))
    }
}

type Factory = fn(Option<&str>) -> Result<Box<dyn Scheduler>>;

/// Maps scheduler names to constructors taking the optional `:param` suffix.
#[derive(Clone)]
pub struct SchedulerRegistry {
    factories: BTreeMap<&'static str, Factory>,
}

impl Default for SchedulerRegistry {
    fn default() -> Self {
        let mut reg = Self {
            factories: BTreeMap::new(),
        };
        reg.register("sequential", |p| {
            no_param("sequential", p)?;
            Ok(Box::new(SequentialScheduler))
        });
        reg.register("levels", |p| {
            no_param("levels", p)?;
            Ok(Box::new(LevelScheduler))
        });
        reg.register("kparallel", |p| {
            let raw =
                p.ok_or_else(|| Error::Parse("kparallel needs a size, e.g. kparallel:50".into()))?;
            let k = raw
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad matching size `{raw}`")))?;
            if k == 0 {
                return Err(Error::InvalidK { k, max: usize::MAX });
            }
            Ok(Box::new(KParallelScheduler { k }))
        });
        reg
    }
}

fn no_param(name: &str, p: Option<&str>) -> Result<()> {
    match p {
        None => Ok(()),
        Some(x) => Err(Error::Parse(format!(
            "`{name}` takes no parameter (got `{x}`)"
        ))),
    }
}

impl SchedulerRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: &'static str, factory: Factory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn parse(&self, spec: &str) -> Result<Box<dyn Scheduler>> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let factory = self.factories.get(name).ok_or_else(|| Error::CatalogMiss {
            kind: "schedule",
            name: name.to_owned(),
        })?;
        factory(param)
    }
}
