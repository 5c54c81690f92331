use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SocialGraph, UserId};

use super::{check_probability, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AgentKind {
    #[default]
    Regular,
    /// Keeps its belief in every exchange.
    Forceful,
}

/// Belief levels in `[0, 1]` plus each agent's kind.
///
/// `epsilon` is how much a regular agent keeps of its own belief when it
/// meets a forceful one; it moves to `ε·x_i + (1 − ε)·x_j`. Two regular
/// agents always meet halfway.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefState {
    beliefs: BTreeMap<UserId, f64>,
    kinds: BTreeMap<UserId, AgentKind>,
    epsilon: f64,
}

impl BeliefState {
    /// Agents missing from `kinds` are regular.
    pub fn new(
        beliefs: BTreeMap<UserId, f64>,
        kinds: BTreeMap<UserId, AgentKind>,
        epsilon: f64,
    ) -> Result<Self> {
        check_probability("epsilon", epsilon)?;
        for (u, x) in &beliefs {
            check_probability(&format!("belief of {u}"), *x)?;
        }
        if let Some(u) = kinds.keys().find(|u| !beliefs.contains_key(u)) {
            return Err(Error::UnknownUser(*u));
        }
        Ok(Self {
            beliefs,
            kinds,
            epsilon,
        })
    }

    pub fn regular(beliefs: BTreeMap<UserId, f64>) -> Result<Self> {
        Self::new(beliefs, BTreeMap::new(), 0.5)
    }

    pub fn belief(&self, u: UserId) -> Option<f64> {
        self.beliefs.get(&u).copied()
    }

    pub fn kind(&self, u: UserId) -> AgentKind {
        self.kinds.get(&u).copied().unwrap_or_default()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beliefs(&self) -> &BTreeMap<UserId, f64> {
        &self.beliefs
    }

    pub fn len(&self) -> usize {
        self.beliefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beliefs.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.beliefs.is_empty() {
            return 0.0;
        }
        self.beliefs.values().sum::<f64>() / self.beliefs.len() as f64
    }

    /// `max − min` over all beliefs.
    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .beliefs
            .values()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        if lo > hi {
            0.0
        } else {
            hi - lo
        }
    }

    /// Applies one exchange between `i` and `j` in place.
    pub fn exchange(&mut self, i: UserId, j: UserId) -> Result<()> {
        if i == j {
            return Err(Error::config(format!("belief exchange of {i} with itself")));
        }
        let xi = self.belief(i).ok_or(Error::UnknownUser(i))?;
        let xj = self.belief(j).ok_or(Error::UnknownUser(j))?;
        let (ni, nj) = match (self.kind(i), self.kind(j)) {
            (AgentKind::Regular, AgentKind::Regular) => {
                let m = xi / 2.0 + xj / 2.0;
                (m, m)
            }
            (AgentKind::Regular, AgentKind::Forceful) => (pull(xi, xj, self.epsilon), xj),
            (AgentKind::Forceful, AgentKind::Regular) => (xi, pull(xj, xi, self.epsilon)),
            (AgentKind::Forceful, AgentKind::Forceful) => (xi, xj),
        };
        self.beliefs.insert(i, ni);
        self.beliefs.insert(j, nj);
        Ok(())
    }
}

/// `keep·own + (1 − keep)·other`, clamped to the segment between the two.
fn pull(own: f64, other: f64, keep: f64) -> f64 {
    let x = keep * own + (1.0 - keep) * other;
    x.clamp(own.min(other), own.max(other))
}

/// Pure form of [`BeliefState::exchange`].
pub fn belief_exchange(state: &BeliefState, i: UserId, j: UserId) -> Result<BeliefState> {
    let mut next = state.clone();
    next.exchange(i, j)?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeliefRun {
    pub state: BeliefState,
    /// Mean belief after each round.
    pub means: Vec<f64>,
}

/// Runs `iterations` rounds; each picks one edge uniformly at random and
/// lets its endpoints exchange beliefs.
pub fn run_belief_process(
    g: &SocialGraph,
    init: &BeliefState,
    iterations: usize,
    rng: &mut RngStream,
) -> Result<BeliefRun> {
    let edges: Vec<_> = g.edges().collect();
    if iterations > 0 && edges.is_empty() {
        return Err(Error::config("belief process needs at least one edge"));
    }
    if let Some(u) = g.nodes().find(|u| init.belief(*u).is_none()) {
        return Err(Error::config(format!("no initial belief for user {u}")));
    }
    let mut state = init.clone();
    let mut means = Vec::with_capacity(iterations);
    let n = state.len() as f64;
    let mut sum: f64 = state.beliefs.values().sum();
    for _ in 0..iterations {
        let (i, j) = edges[rng.below(edges.len() as u64) as usize];
        let before = state.beliefs[&i] + state.beliefs[&j];
        state.exchange(i, j)?;
        sum += state.beliefs[&i] + state.beliefs[&j] - before;
        means.push(sum / n);
    }
    Ok(BeliefRun { state, means })
}
