use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Edge, SocialGraph};

use super::{check_probability, check_states, NodeState, RngStream, States};

/// Per-edge activation probabilities with a fallback for unlisted edges.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeProbability {
    default: f64,
    per_edge: BTreeMap<Edge, f64>,
}

impl EdgeProbability {
    pub fn uniform(default: f64) -> Result<Self> {
        Ok(Self {
            default: check_probability("edge probability", default)?,
            per_edge: BTreeMap::new(),
        })
    }

    pub fn set(&mut self, edge: Edge, p: f64) -> Result<()> {
        self.per_edge
            .insert(edge, check_probability("edge probability", p)?);
        Ok(())
    }

    pub fn get(&self, edge: Edge) -> f64 {
        self.per_edge.get(&edge).copied().unwrap_or(self.default)
    }
}

/// One independent-cascade step.
///
/// Every node infected at the start of the step tries each of its out-edges
/// that is not yet in `attempted`, in ascending order, with one draw per
/// edge. A success infects the target if it is still susceptible. All tried
/// edges join the attempted set, and the step's infectors recover, so each
/// node gets exactly one infectious step and each edge one attempt per run.
pub fn ic_step(
    g: &SocialGraph,
    states: &States<NodeState>,
    probs: &EdgeProbability,
    attempted: &BTreeSet<Edge>,
    rng: &mut RngStream,
) -> Result<(States<NodeState>, BTreeSet<Edge>)> {
    check_states(g, states)?;
    if let Some(&(a, b)) = attempted.iter().find(|(a, b)| !g.has_edge(*a, *b)) {
        return Err(Error::config(format!(
            "attempted edge {a} -> {b} is not in the graph"
        )));
    }
    let mut next = states.clone();
    let mut tried = attempted.clone();
    for (&u, _) in states.iter().filter(|(_, s)| **s == NodeState::Infected) {
        let Ok(targets) = g.out_neighbors(u) else {
            continue;
        };
        for &v in targets {
            if !tried.insert((u, v)) {
                continue;
            }
            let success = rng.uniform() < probs.get((u, v));
            if success && next.get(&v) == Some(&NodeState::Susceptible) {
                next.insert(v, NodeState::Infected);
            }
        }
        next.insert(u, NodeState::Recovered);
    }
    Ok((next, tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UserId;
    use crate::models::{count, seeded_states};

    fn chain() -> SocialGraph {
        SocialGraph::from_edges([
            (UserId(1), UserId(2)),
            (UserId(2), UserId(3)),
            (UserId(1), UserId(3)),
        ])
    }

    #[test]
    fn zero_probability_only_recovers_seeds() {
        let g = chain();
        let s =
            seeded_states(&g, [UserId(1)], NodeState::Susceptible, NodeState::Infected).unwrap();
        let p = EdgeProbability::uniform(0.0).unwrap();
        let (s, tried) = ic_step(&g, &s, &p, &BTreeSet::new(), &mut RngStream::new(0)).unwrap();
        assert_eq!(s[&UserId(1)], NodeState::Recovered);
        assert_eq!(count(&s, NodeState::Infected), 0);
        assert_eq!(tried.len(), 2);
    }

    #[test]
    fn edges_are_attempted_once() {
        let g = chain();
        let mut s =
            seeded_states(&g, [UserId(1)], NodeState::Susceptible, NodeState::Infected).unwrap();
        let p = EdgeProbability::uniform(1.0).unwrap();
        let mut tried = BTreeSet::new();
        let mut rng = RngStream::new(0);
        let mut sizes = vec![];
        for _ in 0..4 {
            let (ns, nt) = ic_step(&g, &s, &p, &tried, &mut rng).unwrap();
            assert!(nt.is_superset(&tried));
            s = ns;
            tried = nt;
            sizes.push(tried.len());
        }
        assert_eq!(sizes, vec![2, 3, 3, 3]);
        assert!(s.values().all(|st| *st == NodeState::Recovered));
    }

    #[test]
    fn per_edge_override() {
        let mut p = EdgeProbability::uniform(0.0).unwrap();
        p.set((UserId(1), UserId(2)), 1.0).unwrap();
        assert_eq!(p.get((UserId(1), UserId(2))), 1.0);
        assert_eq!(p.get((UserId(2), UserId(3))), 0.0);
        assert!(p.set((UserId(1), UserId(3)), 2.0).is_err());
        assert!(EdgeProbability::uniform(-0.5).is_err());
    }

    #[test]
    fn foreign_attempted_edge_rejected() {
        let g = chain();
        let s =
            seeded_states(&g, [UserId(1)], NodeState::Susceptible, NodeState::Infected).unwrap();
        let bogus: BTreeSet<Edge> = [(UserId(3), UserId(1))].into();
        let p = EdgeProbability::uniform(0.5).unwrap();
        assert!(ic_step(&g, &s, &p, &bogus, &mut RngStream::new(0)).is_err());
    }
}
