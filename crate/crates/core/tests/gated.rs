mod common;

use std::collections::BTreeSet;

use rand::Rng;
use rumorsim::gated::{diffuse, UserUserGate};
use rumorsim::{
    diffuse_user_content, diffuse_user_user, filtered_edge_set, GateMetric, RumorContent,
    SimilarityGate, VisitOrder,
};

const TAUS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[test]
fn fixpoint_equals_filtered_reachability() {
    let vocab = common::vocabulary(10);
    let mut rng = common::rng(11);
    for case in 0..40 {
        let n = rng.random_range(2..=80);
        let g = common::random_graph(&mut rng, n, [0.02, 0.05, 0.15][case % 3]);
        let profiles = common::random_profiles(&mut rng, &g, &vocab, 5, 0);
        let rumor = RumorContent::new(common::random_topics(&mut rng, &vocab, 5));
        let initials = common::random_initials(&mut rng, n, 2);
        for metric in GateMetric::STANDARD {
            let gate = SimilarityGate::new(metric, 0.5).unwrap();
            let uu = diffuse_user_user(&g, &profiles, &initials, &gate).unwrap();
            let edges = filtered_edge_set(&g, &profiles, None, &gate).unwrap();
            assert_eq!(
                uu.diffusers.members(),
                &common::bfs_reach(&initials, &edges)
            );

            let uc = diffuse_user_content(&g, &profiles, &rumor, &initials, &gate).unwrap();
            let edges = filtered_edge_set(&g, &profiles, Some(&rumor), &gate).unwrap();
            assert_eq!(
                uc.diffusers.members(),
                &common::bfs_reach(&initials, &edges)
            );
        }
    }
}

#[test]
fn threshold_monotone() {
    let vocab = common::vocabulary(8);
    let mut rng = common::rng(12);
    for _ in 0..30 {
        let g = common::random_graph(&mut rng, 50, 0.08);
        let profiles = common::random_profiles(&mut rng, &g, &vocab, 4, 0);
        let initials = common::random_initials(&mut rng, 50, 3);
        let sets: Vec<BTreeSet<_>> = TAUS
            .iter()
            .map(|&t| {
                let gate = SimilarityGate::new(GateMetric::STANDARD[0], t).unwrap();
                diffuse_user_user(&g, &profiles, &initials, &gate)
                    .unwrap()
                    .diffusers
                    .members()
                    .clone()
            })
            .collect();
        for w in sets.windows(2) {
            assert!(w[1].is_subset(&w[0]));
        }
        assert_eq!(
            sets[0].len(),
            common::bfs_reach(&initials, &g.edges().collect()).len()
        );
    }
}

#[test]
fn visit_order_changes_log_not_members() {
    let vocab = common::vocabulary(6);
    let mut rng = common::rng(13);
    for seed in 0..20 {
        let g = common::random_graph(&mut rng, 40, 0.1);
        let profiles = common::random_profiles(&mut rng, &g, &vocab, 4, 0);
        let initials = common::random_initials(&mut rng, 40, 3);
        let gate = SimilarityGate::new(GateMetric::Average, 0.3).unwrap();
        let admission = UserUserGate::new(&profiles, gate);
        let canon = diffuse(&g, &initials, &admission, VisitOrder::Canonical).unwrap();
        let shuffled = diffuse(&g, &initials, &admission, VisitOrder::Shuffled(seed)).unwrap();
        assert_eq!(canon.diffusers.members(), shuffled.diffusers.members());
        assert_eq!(canon.diffusers.log().len(), canon.size());
    }
}
