//! Classical diffusion step functions: SIR, tipping (linear threshold),
//! independent cascade, and pairwise belief exchange.
//!
//! Each step is a pure map from one state table to the next. Influence flows
//! along edges, so a node is exposed to the users it follows (its
//! in-neighbors). Stochastic steps draw from an explicit [`RngStream`] in
//! ascending node order, which makes a run a function of its seed.

mod belief;
mod cascade;
mod rng;
mod sir;
mod tipping;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SocialGraph, UserId};

pub use belief::{belief_exchange, run_belief_process, AgentKind, BeliefRun, BeliefState};
pub use cascade::{ic_step, EdgeProbability};
pub use rng::RngStream;
pub use sir::{sir_step, SirParams};
pub use tipping::{tipping_step, TippingParams};

/// Per-node state table.
pub type States<S> = BTreeMap<UserId, S>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeState {
    Susceptible,
    Infected,
    /// Absorbing.
    Recovered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Adoption {
    NotAdopted,
    /// Absorbing.
    Adopted,
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::config(format!("{name} must lie in [0, 1], got {p}")))
    }
}

pub(crate) fn check_states<S>(g: &SocialGraph, states: &States<S>) -> Result<()> {
    if let Some(u) = g.nodes().find(|u| !states.contains_key(u)) {
        return Err(Error::config(format!("no state for user {u}")));
    }
    Ok(())
}

/// Seeds get `active`, every other graph node gets `inactive`.
pub fn seeded_states<S: Copy>(
    g: &SocialGraph,
    seeds: impl IntoIterator<Item = UserId>,
    inactive: S,
    active: S,
) -> Result<States<S>> {
    let mut states: States<S> = g.nodes().map(|u| (u, inactive)).collect();
    for s in seeds {
        match states.get_mut(&s) {
            Some(st) => *st = active,
            None => return Err(Error::UnknownUser(s)),
        }
    }
    Ok(states)
}

pub fn count<S: PartialEq>(states: &States<S>, which: S) -> usize {
    states.values().filter(|s| **s == which).count()
}
