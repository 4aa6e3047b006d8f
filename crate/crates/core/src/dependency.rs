//! Longest monotone interference chains in a round.
//!
//! The dependency DAG of a round has one vertex per interaction and an edge
//! `v -> u` whenever `label(v) < label(u)` and the two interactions share an
//! agent. A directed path is exactly a monotone interference path, and the
//! number of vertices on the longest one is the number of parallel steps any
//! black-box execution of the round needs.
//!
//! [`chain_stats`] never builds the DAG: the interactions touching one agent
//! are totally ordered by label, so the deepest predecessor of `u` is the most
//! recent earlier interaction of one of its two endpoints. [`brute_force_chain`]
//! materializes every edge and serves as the oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Round;

/// Largest round the quadratic oracle accepts.
pub const ORACLE_MAX_LEN: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStats {
    /// Interactions on the longest monotone interference path.
    pub chain_size: usize,
    /// DAG edges on that path, `chain_size - 1` (0 for an empty round).
    pub path_edges: usize,
    pub level_count: usize,
    pub max_agent_degree: usize,
}

impl ChainStats {
    fn from_chain(chain_size: usize, max_agent_degree: usize) -> Self {
        Self {
            chain_size,
            path_edges: chain_size.saturating_sub(1),
            level_count: chain_size,
            max_agent_degree,
        }
    }
}

/// Per-interaction depth and deepest-predecessor pointers from the one-pass DP.
#[derive(Debug, Clone)]
pub struct DepthProfile {
    /// `depth[t-1]` = vertices on the longest chain ending at label `t`.
    pub depth: Vec<usize>,
    /// Label of the predecessor on that chain, or `None` for a source.
    pub pred: Vec<Option<u32>>,
}

impl DepthProfile {
    pub fn chain_size(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

pub fn depth_profile(round: &Round) -> DepthProfile {
    let n = round.n_agents();
    // depth and label of the latest interaction seen per agent
    let mut best = vec![0usize; n];
    let mut last = vec![0u32; n];
    let mut depth = Vec::with_capacity(round.len());
    let mut pred = Vec::with_capacity(round.len());
    for it in round.interactions() {
        let (a, b) = (it.initiator.index(), it.responder.index());
        let (da, db) = (best[a], best[b]);
        let p = match da.cmp(&db) {
            std::cmp::Ordering::Greater => Some(last[a]),
            std::cmp::Ordering::Less => Some(last[b]),
            std::cmp::Ordering::Equal if da == 0 => None,
            std::cmp::Ordering::Equal => Some(last[a].min(last[b])),
        };
        let d = 1 + da.max(db);
        depth.push(d);
        pred.push(p);
        best[a] = d;
        best[b] = d;
        last[a] = it.label;
        last[b] = it.label;
    }
    DepthProfile { depth, pred }
}

pub fn chain_stats(round: &Round) -> ChainStats {
    let profile = depth_profile(round);
    ChainStats::from_chain(profile.chain_size(), round.max_agent_degree())
}

/// Same contract as [`chain_stats`], computed on the explicit DAG.
pub fn brute_force_chain(round: &Round) -> Result<ChainStats> {
    let len = round.len();
    if len > ORACLE_MAX_LEN {
        return Err(Error::OracleTooLarge {
            len,
            limit: ORACLE_MAX_LEN,
        });
    }
    let its = round.interactions();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); len];
    for u in 0..len {
        for v in 0..u {
            if its[v].label < its[u].label && its[v].shares_agent(&its[u]) {
                incoming[u].push(v);
            }
        }
    }
    let mut longest = vec![0usize; len];
    for u in 0..len {
        longest[u] = 1 + incoming[u].iter().map(|&v| longest[v]).max().unwrap_or(0);
    }
    let chain = longest.iter().copied().max().unwrap_or(0);

    let mut deg = vec![0usize; round.n_agents()];
    for it in its {
        for a in it.agents() {
            deg[a.index()] += 1;
        }
    }
    Ok(ChainStats::from_chain(
        chain,
        deg.into_iter().max().unwrap_or(0),
    ))
}

/// Interactions grouped by their distance from a source of the DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    /// `level_of[t-1]` is the level of the interaction labeled `t`.
    pub level_of: Vec<usize>,
    /// Labels on each level, ascending.
    pub levels: Vec<Vec<u32>>,
}

impl LevelDecomposition {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, label: u32) -> Option<usize> {
        (label as usize)
            .checked_sub(1)
            .and_then(|i| self.level_of.get(i).copied())
    }
}

pub fn level_decomposition(round: &Round) -> LevelDecomposition {
    let profile = depth_profile(round);
    let mut levels = vec![Vec::new(); profile.chain_size()];
    let level_of: Vec<usize> = profile.depth.iter().map(|d| d - 1).collect();
    for (it, &lvl) in round.interactions().iter().zip(&level_of) {
        levels[lvl].push(it.label);
    }
    LevelDecomposition { level_of, levels }
}

pub fn has_monotone_path(round: &Round, k: usize) -> bool {
    chain_stats(round).chain_size >= k
}

/// Labels of one longest monotone interference path, ascending.
///
/// Ties between predecessors resolve to the smaller label, and among equally
/// deep endpoints the smallest final label wins.
pub fn longest_chain_witness(round: &Round) -> Vec<u32> {
    let profile = depth_profile(round);
    let top = profile.chain_size();
    let Some(end) = profile.depth.iter().position(|&d| d == top) else {
        return Vec::new();
    };
    let mut chain = vec![end as u32 + 1];
    let mut cur = profile.pred[end];
    while let Some(label) = cur {
        chain.push(label);
        cur = profile.pred[label as usize - 1];
    }
    chain.reverse();
    chain
}
