use crate::error::Result;
use crate::graph::SocialGraph;

use super::{check_probability, check_states, Adoption, States};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TippingParams {
    theta: f64,
}

impl TippingParams {
    pub fn new(theta: f64) -> Result<Self> {
        Ok(Self {
            theta: check_probability("theta", theta)?,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// One synchronous threshold update. Deterministic.
///
/// A non-adopter adopts when at least one in-neighbor has adopted and the
/// adopted fraction of its in-neighbors reaches `theta`. Adoption is never
/// undone, and a node nobody influences never adopts, even at `theta = 0`.
pub fn tipping_step(
    g: &SocialGraph,
    states: &States<Adoption>,
    params: &TippingParams,
) -> Result<States<Adoption>> {
    check_states(g, states)?;
    let mut next = states.clone();
    for (&u, &state) in states {
        if state == Adoption::Adopted {
            continue;
        }
        let Ok(sources) = g.in_neighbors(u) else {
            continue;
        };
        let adopted = sources
            .iter()
            .filter(|s| states.get(*s) == Some(&Adoption::Adopted))
            .count();
        if adopted > 0 && adopted as f64 / sources.len() as f64 >= params.theta {
            next.insert(u, Adoption::Adopted);
        }
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UserId;

    // 1 -> 3, 2 -> 3, 4 isolated-ish: 4 -> 5
    fn graph() -> SocialGraph {
        SocialGraph::from_edges([
            (UserId(1), UserId(3)),
            (UserId(2), UserId(3)),
            (UserId(4), UserId(5)),
        ])
    }

    fn states(adopted: &[u64]) -> States<Adoption> {
        let g = graph();
        g.nodes()
            .map(|u| {
                let s = if adopted.contains(&u.0) {
                    Adoption::Adopted
                } else {
                    Adoption::NotAdopted
                };
                (u, s)
            })
            .collect()
    }

    #[test]
    fn half_reaches_half_threshold() {
        let next =
            tipping_step(&graph(), &states(&[1]), &TippingParams::new(0.5).unwrap()).unwrap();
        assert_eq!(next[&UserId(3)], Adoption::Adopted);
    }

    #[test]
    fn theta_one_needs_all_sources() {
        let p = TippingParams::new(1.0).unwrap();
        let next = tipping_step(&graph(), &states(&[1]), &p).unwrap();
        assert_eq!(next[&UserId(3)], Adoption::NotAdopted);
        let next = tipping_step(&graph(), &states(&[1, 2]), &p).unwrap();
        assert_eq!(next[&UserId(3)], Adoption::Adopted);
    }

    #[test]
    fn no_adopted_sources_never_adopts() {
        let p = TippingParams::new(0.0).unwrap();
        let next = tipping_step(&graph(), &states(&[]), &p).unwrap();
        assert!(next.values().all(|s| *s == Adoption::NotAdopted));
    }

    #[test]
    fn theta_out_of_range() {
        assert!(TippingParams::new(1.01).is_err());
    }
}
