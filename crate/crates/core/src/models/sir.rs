use crate::error::Result;
use crate::graph::SocialGraph;

use super::{check_probability, check_states, NodeState, RngStream, States};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirParams {
    beta: f64,
    gamma: f64,
}

impl SirParams {
    /// `beta`: per-contact infection probability; `gamma`: per-step recovery probability.
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            beta: check_probability("beta", beta)?,
            gamma: check_probability("gamma", gamma)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// One synchronous SIR update.
///
/// Nodes are visited in ascending id. A susceptible node draws one uniform
/// `u` per infected in-neighbor and becomes infected if any `u < beta`. A node
/// infected at the start of the step draws once and recovers if `u < gamma`.
/// Recovered nodes draw nothing and never change.
pub fn sir_step(
    g: &SocialGraph,
    states: &States<NodeState>,
    params: &SirParams,
    rng: &mut RngStream,
) -> Result<States<NodeState>> {
    check_states(g, states)?;
    let mut next = states.clone();
    for (&u, &state) in states {
        match state {
            NodeState::Susceptible => {
                let Ok(sources) = g.in_neighbors(u) else {
                    continue;
                };
                let mut hit = false;
                for src in sources {
                    if states.get(src) == Some(&NodeState::Infected) {
                        // one draw per infected contact, even after a hit
                        hit |= rng.uniform() < params.beta;
                    }
                }
                if hit {
                    next.insert(u, NodeState::Infected);
                }
            }
            NodeState::Infected => {
                if rng.uniform() < params.gamma {
                    next.insert(u, NodeState::Recovered);
                }
            }
            NodeState::Recovered => {}
        }
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UserId;
    use crate::models::{count, seeded_states};

    fn star() -> SocialGraph {
        // 0 -> 1..=5, 1 -> 6
        let mut edges: Vec<_> = (1..=5).map(|i| (UserId(0), UserId(i))).collect();
        edges.push((UserId(1), UserId(6)));
        SocialGraph::from_edges(edges)
    }

    fn seeded(g: &SocialGraph) -> States<NodeState> {
        seeded_states(g, [UserId(0)], NodeState::Susceptible, NodeState::Infected).unwrap()
    }

    #[test]
    fn beta_zero_never_infects() {
        let g = star();
        let s = sir_step(
            &g,
            &seeded(&g),
            &SirParams::new(0.0, 0.0).unwrap(),
            &mut RngStream::new(1),
        )
        .unwrap();
        assert_eq!(count(&s, NodeState::Infected), 1);
    }

    #[test]
    fn beta_one_infects_all_exposed() {
        let g = star();
        let s = sir_step(
            &g,
            &seeded(&g),
            &SirParams::new(1.0, 0.0).unwrap(),
            &mut RngStream::new(1),
        )
        .unwrap();
        for i in 0..=5 {
            assert_eq!(s[&UserId(i)], NodeState::Infected);
        }
        // 6 follows 1, which was not infected at step start
        assert_eq!(s[&UserId(6)], NodeState::Susceptible);
    }

    #[test]
    fn gamma_one_recovers_everyone_infected() {
        let g = star();
        let s = sir_step(
            &g,
            &seeded(&g),
            &SirParams::new(1.0, 1.0).unwrap(),
            &mut RngStream::new(1),
        )
        .unwrap();
        assert_eq!(s[&UserId(0)], NodeState::Recovered);
        // newly infected nodes keep their infection for this step
        assert_eq!(s[&UserId(3)], NodeState::Infected);
    }

    #[test]
    fn recovered_is_absorbing() {
        let g = star();
        let mut s = seeded(&g);
        s.insert(UserId(0), NodeState::Recovered);
        let next = sir_step(
            &g,
            &s,
            &SirParams::new(1.0, 1.0).unwrap(),
            &mut RngStream::new(1),
        )
        .unwrap();
        assert_eq!(next, s);
    }

    #[test]
    fn missing_state_is_config_error() {
        let g = star();
        let mut s = seeded(&g);
        s.remove(&UserId(4));
        let err = sir_step(
            &g,
            &s,
            &SirParams::new(0.5, 0.5).unwrap(),
            &mut RngStream::new(1),
        )
        .unwrap_err();
        assert!(matches!(err, crate::Error::Config(_)));
    }

    #[test]
    fn params_out_of_range() {
        assert!(SirParams::new(1.5, 0.0).is_err());
        assert!(SirParams::new(0.5, -0.1).is_err());
        assert!(SirParams::new(f64::NAN, 0.1).is_err());
    }
}
