//! Agents, interactions, rounds and the two samplers that produce them.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub u32);

impl AgentId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One ordered interaction between two distinct agents at time step `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interaction {
    pub initiator: AgentId,
    pub responder: AgentId,
    pub label: u32,
}

impl Interaction {
    pub fn new(initiator: u32, responder: u32, label: u32) -> Self {
        Self {
            initiator: AgentId(initiator),
            responder: AgentId(responder),
            label,
        }
    }

    pub fn agents(&self) -> [AgentId; 2] {
        [self.initiator, self.responder]
    }

    pub fn shares_agent(&self, other: &Interaction) -> bool {
        self.agents().iter().any(|a| other.agents().contains(a))
    }
}

/// A labeled sequence of interactions over `n_agents` agents.
///
/// Interactions are stored in ascending label order and the labels are
/// exactly `1..=T`, so the interaction with label `t` sits at index `t - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    n_agents: usize,
    interactions: Vec<Interaction>,
}

impl Round {
    pub fn new(n_agents: usize, interactions: Vec<Interaction>) -> Result<Self> {
        if n_agents < 2 {
            return Err(Error::InvalidPopulation(n_agents));
        }
        for (idx, it) in interactions.iter().enumerate() {
            let expected = idx as u64 + 1;
            if u64::from(it.label) != expected {
                return Err(Error::InvalidRound(format!(
                    "interaction #{idx} has label {}, expected {expected}",
                    it.label
                )));
            }
            if it.initiator == it.responder {
                return Err(Error::InvalidRound(format!(
                    "self-interaction of agent {} at label {}",
                    it.initiator, it.label
                )));
            }
            for a in it.agents() {
                if a.index() >= n_agents {
                    return Err(Error::InvalidRound(format!(
                        "agent {a} out of range for n = {n_agents}"
                    )));
                }
            }
        }
        Ok(Self {
            n_agents,
            interactions,
        })
    }

    /// Builds a round from `(initiator, responder)` pairs, labeling them 1, 2, ...
    pub fn from_pairs(n_agents: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        let interactions = pairs
            .iter()
            .zip(1u32..)
            .map(|(&(a, b), t)| Interaction::new(a, b, t))
            .collect();
        Self::new(n_agents, interactions)
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn len(&self) -> usize {
        self.interactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interactions.is_empty()
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    /// The interaction carrying `label`, if any.
    pub fn get(&self, label: u32) -> Option<&Interaction> {
        (label as usize)
            .checked_sub(1)
            .and_then(|i| self.interactions.get(i))
    }

    pub fn agent_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_agents];
        for it in &self.interactions {
            deg[it.initiator.index()] += 1;
            deg[it.responder.index()] += 1;
        }
        deg
    }

    pub fn max_agent_degree(&self) -> usize {
        self.agent_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn write_jsonl<W: Write>(&self, header: &RoundHeader, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer(&mut out, header)?;
        out.write_all(b"\n")?;
        for it in &self.interactions {
            serde_json::to_writer(&mut out, &InteractionRecord::from(*it))?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<(RoundHeader, Round)> {
        let mut lines = input.lines().filter(|l| match l {
            Ok(s) => !s.trim().is_empty(),
            Err(_) => true,
        });
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        let header: RoundHeader =
            serde_json::from_str(&first).map_err(|e| Error::Parse(format!("header: {e}")))?;
        let mut interactions = Vec::with_capacity(header.length);
        for line in lines {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let rec: InteractionRecord =
                serde_json::from_str(&line).map_err(|e| Error::Parse(format!("record: {e}")))?;
            interactions.push(Interaction::new(rec.a, rec.b, rec.t));
        }
        if interactions.len() != header.length {
            return Err(Error::Parse(format!(
                "header announces T = {} but {} records follow",
                header.length,
                interactions.len()
            )));
        }
        let round = Round::new(header.n, interactions)?;
        Ok((header, round))
    }
}

/// First line of a serialized round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundHeader {
    pub n: usize,
    #[serde(rename = "T")]
    pub length: usize,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

impl RoundHeader {
    pub fn for_round(round: &Round, rng_key: Option<(u64, u64)>) -> Self {
        Self {
            n: round.n_agents(),
            length: round.len(),
            seed: rng_key.map(|k| k.0),
            stream: rng_key.map(|k| k.1),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct InteractionRecord {
    t: u32,
    a: u32,
    b: u32,
}

impl From<Interaction> for InteractionRecord {
    fn from(it: Interaction) -> Self {
        Self {
            t: it.label,
            a: it.initiator.0,
            b: it.responder.0,
        }
    }
}

/// Draws `length` interactions, each an ordered pair of distinct agents chosen
/// uniformly among the `n(n-1)` possibilities, labeled 1..=length.
pub fn sample_round(n: usize, length: usize, rng: &mut RngStream) -> Result<Round> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    let mut interactions = Vec::with_capacity(length);
    for t in 1..=length {
        let i = rng.below(n);
        let mut j = rng.below(n - 1);
        if j >= i {
            j += 1;
        }
        interactions.push(Interaction::new(i as u32, j as u32, t as u32));
    }
    Ok(Round {
        n_agents: n,
        interactions,
    })
}

/// The worst-case round: interaction `t` joins agents `(t-1) mod n` and
/// `t mod n`, so consecutive interactions always share an agent and the whole
/// round is a single chain of `n` interactions.
pub fn adversarial_chain_round(n: usize) -> Result<Round> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    let interactions = (1..=n)
        .map(|t| Interaction::new(((t - 1) % n) as u32, (t % n) as u32, t as u32))
        .collect();
    Ok(Round {
        n_agents: n,
        interactions,
    })
}

/// Number of agents having each degree; degree-0 agents are included.
pub fn agent_degree_histogram(round: &Round) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for d in round.agent_degrees() {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}

/// An unordered agent pair, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair(pub AgentId, pub AgentId);

impl Pair {
    pub fn new(a: u32, b: u32) -> Self {
        if a <= b {
            Pair(AgentId(a), AgentId(b))
        } else {
            Pair(AgentId(b), AgentId(a))
        }
    }
}

/// A sequence of steps, each a matching of exactly `k` agent-disjoint pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KParallelSchedule {
    n_agents: usize,
    k: usize,
    steps: Vec<Vec<Pair>>,
}

impl KParallelSchedule {
    pub fn new(n_agents: usize, k: usize, steps: Vec<Vec<Pair>>) -> Result<Self> {
        check_k(n_agents, k)?;
        let mut seen = vec![usize::MAX; n_agents];
        for (s, step) in steps.iter().enumerate() {
            if step.len() != k {
                return Err(Error::InvalidRound(format!(
                    "step {s} has {} pairs, expected {k}",
                    step.len()
                )));
            }
            for p in step {
                for a in [p.0, p.1] {
                    if a.index() >= n_agents {
                        return Err(Error::InvalidRound(format!(
                            "agent {a} out of range for n = {n_agents}"
                        )));
                    }
                    if seen[a.index()] == s {
                        return Err(Error::SchedulerInvariant {
                            step: s,
                            agent: a.0,
                        });
                    }
                    seen[a.index()] = s;
                }
            }
        }
        Ok(Self { n_agents, k, steps })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn steps(&self) -> &[Vec<Pair>] {
        &self.steps
    }

    pub fn interaction_count(&self) -> usize {
        self.k * self.steps.len()
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    let max = n / 2;
    if k == 0 || k > max {
        return Err(Error::InvalidK { k, max });
    }
    Ok(())
}

/// Samples `steps` independent uniform size-`k` matchings: each step takes a
/// uniformly random ordered selection of `2k` agents and pairs them
/// consecutively.
pub fn sample_k_parallel_schedule(
    n: usize,
    k: usize,
    steps: usize,
    rng: &mut RngStream,
) -> Result<KParallelSchedule> {
    check_k(n, k)?;
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        // A partial shuffle yields a uniform ordered 2k-prefix whatever the
        // current contents of `perm`, so it never needs resetting.
        let (chosen, _) = perm.partial_shuffle(rng, 2 * k);
        let step = chosen
            .chunks_exact(2)
            .map(|c| Pair::new(c[0], c[1]))
            .collect();
        out.push(step);
    }
    Ok(KParallelSchedule {
        n_agents: n,
        k,
        steps: out,
    })
}
