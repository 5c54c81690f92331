//! Rumor diffusion on directed social graphs.
//!
//! Users follow each other; a rumor travels from a user to their followers.
//! The crate offers topic-profile similarity measures, a similarity-gated
//! spreading rule, classical epidemic and threshold models, a seeded
//! time-stepped simulator and accuracy evaluation against observed labels.
//!
//! ```
//! use std::collections::BTreeSet;
//! use rumorsim::{diffuse_user_user, GateMetric, MetricKind, Profiles, SimilarityGate, SocialGraph, TopicSet, UserId, UserProfile};
//!
//! let g = SocialGraph::from_edges([(UserId(1), UserId(2)), (UserId(2), UserId(3))]);
//! let profiles: Profiles = [
//!     UserProfile::new(UserId(1), TopicSet::from_labels(["sport", "music"]), 0, true),
//!     UserProfile::new(UserId(2), TopicSet::from_labels(["sport", "music"]), 0, true),
//!     UserProfile::new(UserId(3), TopicSet::from_labels(["cooking"]), 0, false),
//! ]
//! .into_iter()
//! .collect();
//! let gate = SimilarityGate::new(GateMetric::Kind(MetricKind::Cosine), 0.5).unwrap();
//! let out = diffuse_user_user(&g, &profiles, &BTreeSet::from([UserId(1)]), &gate).unwrap();
//! assert_eq!(out.size(), 2);
//! ```

pub mod cli;
pub mod error;
pub mod eval;
pub mod gated;
pub mod graph;
mod io_util;
pub mod models;
pub mod profile;
pub mod sim;
pub mod similarity;

pub use error::{Error, Result};
pub use eval::{diffusion_curve, evaluate, metric_sweep, EvalReport, SweepRow};
pub use gated::{
    diffuse, diffuse_user_content, diffuse_user_user, filtered_edge_set, run_gated, Algorithm,
    DiffuserSet, EdgeAdmission, GatedOutcome, SimilarityGate, VisitOrder,
};
pub use graph::{load_edges, SocialGraph, UserId};
pub use profile::{
    load_rumor, load_users, validate, Profiles, RumorContent, UserProfile, ValidationReport,
};
pub use sim::{run_simulation, run_trials, DiffusionTrace, SimulationConfig};
pub use similarity::{GateMetric, MetricKind, TopicSet};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/similarity.md")]
    mod similarity {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/gated.md")]
    mod gated {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
