//! Executes rounds against black-box transition functions and counts the
//! parallel steps each schedule needs.
//!
//! Every schedule is lowered to a [`StepPlan`]: a list of steps, each a set of
//! agent-disjoint ordered interactions applied as one parallel step. Steps are
//! applied in order; inside a step the interactions touch disjoint agents so
//! their order does not affect the result, and they are applied as listed.

mod protocol;
mod scheduler;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use protocol::{
    demo_protocols, Epidemic, Identity, LeaderCollision, ProtocolRegistry, State, TableProtocol,
    TransitionFunction,
};
pub use scheduler::{
    KParallelScheduler, LevelScheduler, Scheduler, SchedulerRegistry, SequentialScheduler,
};

use crate::dependency::level_decomposition;
use crate::error::{Error, Result};
use crate::model::{AgentId, KParallelSchedule, Round};

/// Agent states, indexed by agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<State>);

impl Configuration {
    pub fn new(states: Vec<State>) -> Self {
        Self(states)
    }

    pub fn uniform(n_agents: usize, state: State) -> Self {
        Self(vec![state; n_agents])
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn states_mut(&mut self) -> &mut [State] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, state: State) -> usize {
        self.0.iter().filter(|&&s| s == state).count()
    }

    pub fn histogram(&self) -> BTreeMap<State, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.0 {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }

    fn check(&self, n_agents: usize, state_count: u32) -> Result<()> {
        if self.0.len() != n_agents {
            return Err(Error::InvalidConfiguration(format!(
                "configuration has {} agents, round has {n_agents}",
                self.0.len()
            )));
        }
        if let Some((i, s)) = self.0.iter().enumerate().find(|(_, &s)| s >= state_count) {
            return Err(Error::InvalidConfiguration(format!(
                "agent {i} has state {s} outside [0, {state_count})"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionReport {
    pub final_config: Configuration,
    pub parallel_steps: usize,
    pub interactions_applied: usize,
}

#[derive(Serialize)]
struct ReportRecord {
    parallel_steps: usize,
    interactions_applied: usize,
    final_histogram: BTreeMap<State, usize>,
}

impl Serialize for ExecutionReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportRecord {
            parallel_steps: self.parallel_steps,
            interactions_applied: self.interactions_applied,
            final_histogram: self.final_config.histogram(),
        }
        .serialize(s)
    }
}

/// Ordered `(initiator, responder)` interactions grouped into parallel steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepPlan {
    n_agents: usize,
    steps: Vec<Vec<(AgentId, AgentId)>>,
}

impl StepPlan {
    pub fn new(n_agents: usize, steps: Vec<Vec<(AgentId, AgentId)>>) -> Self {
        Self { n_agents, steps }
    }

    /// One interaction per step, in label order.
    pub fn sequential(round: &Round) -> Self {
        let steps = round
            .interactions()
            .iter()
            .map(|it| vec![(it.initiator, it.responder)])
            .collect();
        Self::new(round.n_agents(), steps)
    }

    /// One step per DAG level, labels ascending within a level.
    pub fn by_levels(round: &Round) -> Self {
        let levels = level_decomposition(round);
        let steps = levels
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&t| {
                        let it = round.get(t).expect("level labels come from the round");
                        (it.initiator, it.responder)
                    })
                    .collect()
            })
            .collect();
        Self::new(round.n_agents(), steps)
    }

    /// One step per matching; the smaller agent index initiates.
    pub fn k_parallel(schedule: &KParallelSchedule) -> Self {
        let steps = schedule
            .steps()
            .iter()
            .map(|step| step.iter().map(|p| (p.0, p.1)).collect())
            .collect();
        Self::new(schedule.n_agents(), steps)
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn steps(&self) -> &[Vec<(AgentId, AgentId)>] {
        &self.steps
    }

    pub fn interaction_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }
}

/// Applies every step of `plan` in order and counts one parallel step per
/// plan step. A step that touches an agent twice is rejected before any of
/// its interactions is applied.
pub fn execute_plan(
    plan: &StepPlan,
    f: &dyn TransitionFunction,
    init: &Configuration,
) -> Result<ExecutionReport> {
    let s = f.state_count();
    init.check(plan.n_agents, s)?;
    let mut states = init.0.clone();
    let mut stamp = vec![usize::MAX; plan.n_agents];
    let mut applied = 0;
    for (idx, step) in plan.steps.iter().enumerate() {
        for &(a, b) in step {
            for x in [a, b] {
                if x.index() >= plan.n_agents {
                    return Err(Error::InvalidRound(format!(
                        "agent {x} out of range for n = {}",
                        plan.n_agents
                    )));
                }
                if stamp[x.index()] == idx {
                    return Err(Error::SchedulerInvariant {
                        step: idx,
                        agent: x.0,
                    });
                }
                stamp[x.index()] = idx;
            }
        }
        for &(a, b) in step {
            let (na, nb) = f.delta(states[a.index()], states[b.index()]);
            if na >= s || nb >= s {
                return Err(Error::Domain(format!(
                    "{} produced state outside [0, {s})",
                    f.name()
                )));
            }
            states[a.index()] = na;
            states[b.index()] = nb;
        }
        applied += step.len();
    }
    Ok(ExecutionReport {
        final_config: Configuration(states),
        parallel_steps: plan.steps.len(),
        interactions_applied: applied,
    })
}

pub fn execute_sequential(
    round: &Round,
    f: &dyn TransitionFunction,
    init: &Configuration,
) -> Result<ExecutionReport> {
    execute_plan(&StepPlan::sequential(round), f, init)
}

pub fn execute_by_levels(
    round: &Round,
    f: &dyn TransitionFunction,
    init: &Configuration,
) -> Result<ExecutionReport> {
    execute_plan(&StepPlan::by_levels(round), f, init)
}

pub fn execute_k_parallel(
    schedule: &KParallelSchedule,
    f: &dyn TransitionFunction,
    init: &Configuration,
) -> Result<ExecutionReport> {
    execute_plan(&StepPlan::k_parallel(schedule), f, init)
}
