//! Transition functions and the named catalog of demo protocols.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::engine::Configuration;
use crate::error::{Error, Result};

pub type State = u32;

/// A deterministic, total update rule on pairs of states in `[0, state_count)`.
///
/// The first argument is the initiator's state and the second the responder's.
/// Implementations must be referentially transparent.
pub trait TransitionFunction: Send + Sync {
    fn name(&self) -> &str;

    fn state_count(&self) -> u32;

    fn delta(&self, initiator: State, responder: State) -> (State, State);

    /// Starting configuration used by the command-line runner.
    fn initial_configuration(&self, n_agents: usize) -> Configuration {
        Configuration::uniform(n_agents, 0)
    }
}

/// `(a, b) -> (a, b)`.
#[derive(Debug, Clone, Copy)]
pub struct Identity {
    pub states: u32,
}

impl TransitionFunction for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn state_count(&self) -> u32 {
        self.states
    }

    fn delta(&self, a: State, b: State) -> (State, State) {
        (a, b)
    }

    fn initial_configuration(&self, n_agents: usize) -> Configuration {
        Configuration::new((0..n_agents).map(|i| i as u32 % self.states).collect())
    }
}

/// Two-way epidemic: 0 is susceptible, 1 infected; `(a, b) -> (a|b, a|b)`.
#[derive(Debug, Clone, Copy)]
pub struct Epidemic;

impl Epidemic {
    pub const SUSCEPTIBLE: State = 0;
    pub const INFECTED: State = 1;
}

impl TransitionFunction for Epidemic {
    fn name(&self) -> &str {
        "epidemic"
    }

    fn state_count(&self) -> u32 {
        2
    }

    fn delta(&self, a: State, b: State) -> (State, State) {
        let s = a | b;
        (s, s)
    }

    /// Agent 0 is the single initial source.
    fn initial_configuration(&self, n_agents: usize) -> Configuration {
        let mut c = Configuration::uniform(n_agents, Self::SUSCEPTIBLE);
        if n_agents > 0 {
            c.states_mut()[0] = Self::INFECTED;
        }
        c
    }
}

/// 1 is a leader, 0 a follower; two meeting leaders leave one leader.
#[derive(Debug, Clone, Copy)]
pub struct LeaderCollision;

impl LeaderCollision {
    pub const FOLLOWER: State = 0;
    pub const LEADER: State = 1;
}

impl TransitionFunction for LeaderCollision {
    fn name(&self) -> &str {
        "leader-collision"
    }

    fn state_count(&self) -> u32 {
        2
    }

    fn delta(&self, a: State, b: State) -> (State, State) {
        if a == Self::LEADER && b == Self::LEADER {
            (Self::LEADER, Self::FOLLOWER)
        } else {
            (a, b)
        }
    }

    fn initial_configuration(&self, n_agents: usize) -> Configuration {
        Configuration::uniform(n_agents, Self::LEADER)
    }
}

/// A transition function given as an explicit `s × s` table.
#[derive(Debug, Clone)]
pub struct TableProtocol {
    name: String,
    states: u32,
    table: Vec<(State, State)>,
}

impl TableProtocol {
    /// `table[a * s + b]` is the image of `(a, b)`.
    pub fn new(name: impl Into<String>, states: u32, table: Vec<(State, State)>) -> Result<Self> {
        if states == 0 {
            return Err(Error::Domain("state count must be ≥ 1".into()));
        }
        let s = states as usize;
        if table.len() != s * s {
            return Err(Error::Domain(format!(
                "transition table has {} entries, expected {}",
                table.len(),
                s * s
            )));
        }
        if let Some(bad) = table.iter().find(|(x, y)| *x >= states || *y >= states) {
            return Err(Error::Domain(format!(
                "transition output {bad:?} outside [0, {states})"
            )));
        }
        Ok(Self {
            name: name.into(),
            states,
            table,
        })
    }

    pub fn tabulate(f: &dyn TransitionFunction) -> Result<Self> {
        let s = f.state_count();
        let table = (0..s)
            .flat_map(|a| (0..s).map(move |b| (a, b)))
            .map(|(a, b)| f.delta(a, b))
            .collect();
        Self::new(f.name(), s, table)
    }
}

impl TransitionFunction for TableProtocol {
    fn name(&self) -> &str {
        &self.name
    }

    fn state_count(&self) -> u32 {
        self.states
    }

    fn delta(&self, a: State, b: State) -> (State, State) {
        self.table[(a * self.states + b) as usize]
    }
}

/// Name-indexed collection of transition functions.
#[derive(Clone, Default)]
pub struct ProtocolRegistry {
    entries: BTreeMap<String, Arc<dyn TransitionFunction>>,
}

impl ProtocolRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, f: Arc<dyn TransitionFunction>) {
        self.entries.insert(f.name().to_owned(), f);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn TransitionFunction>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::CatalogMiss {
                kind: "protocol",
                name: name.to_owned(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn TransitionFunction>> {
        self.entries.values()
    }
}

/// The demo catalog: `identity`, `epidemic` and `leader-collision`.
pub fn demo_protocols() -> ProtocolRegistry {
    let mut reg = ProtocolRegistry::new();
    reg.register(Arc::new(Identity { states: 2 }));
    reg.register(Arc::new(Epidemic));
    reg.register(Arc::new(LeaderCollision));
    reg
}
