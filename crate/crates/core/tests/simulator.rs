mod common;

use rand::Rng;
use rumorsim::sim::{run_trials, write_trace_csv, EvaluationPolicy, ModelKind, SimulationConfig};
use rumorsim::{diffuse_user_user, diffusion_curve, run_simulation, GateMetric, SimilarityGate};

fn trace_bytes(
    cfg: &SimulationConfig,
    g: &rumorsim::SocialGraph,
    p: &rumorsim::Profiles,
) -> Vec<u8> {
    let set = run_trials(cfg, g, p, None, None).unwrap();
    let mut buf = Vec::new();
    write_trace_csv(&set.traces, &mut buf).unwrap();
    buf
}

#[test]
fn same_seed_same_bytes() {
    let vocab = common::vocabulary(6);
    let mut rng = common::rng(31);
    let g = common::random_graph(&mut rng, 60, 0.05);
    let p = common::random_profiles(&mut rng, &g, &vocab, 3, 10);
    for model in [
        ModelKind::GatedUserUser,
        ModelKind::Sir,
        ModelKind::Ic,
        ModelKind::Tipping,
    ] {
        let mut cfg = SimulationConfig::new(common::random_initials(&mut rng, 60, 3));
        cfg.model = model;
        cfg.max_time = 30;
        cfg.trials = 3;
        cfg.master_seed = 99;
        let a = trace_bytes(&cfg, &g, &p);
        assert_eq!(a, trace_bytes(&cfg, &g, &p), "{}", model.name());
        cfg.master_seed = 100;
        if matches!(model, ModelKind::Sir | ModelKind::Ic) {
            assert_ne!(a, trace_bytes(&cfg, &g, &p), "{}", model.name());
        }
    }
}

#[test]
fn every_step_reaches_the_gated_fixpoint() {
    let vocab = common::vocabulary(8);
    let mut rng = common::rng(32);
    for _ in 0..40 {
        let n = rng.random_range(2..=80);
        let g = common::random_graph(&mut rng, n, 0.06);
        let p = common::random_profiles(&mut rng, &g, &vocab, 4, 12);
        let mut cfg = SimulationConfig::new(common::random_initials(&mut rng, n, 2));
        cfg.policy = EvaluationPolicy::EveryStep;
        cfg.gate = SimilarityGate::new(GateMetric::STANDARD[0], 0.4).unwrap();
        cfg.max_time = n + 12;
        let tr = run_simulation(&cfg, &g, &p, None).unwrap();
        let fix = diffuse_user_user(&g, &p, &cfg.initials, &cfg.gate).unwrap();
        assert_eq!(&tr.final_diffusers(), fix.diffusers.members());

        cfg.policy = EvaluationPolicy::Once;
        let once = run_simulation(&cfg, &g, &p, None).unwrap();
        assert!(once.final_diffusers().is_subset(fix.diffusers.members()));
    }
}

#[test]
fn curves_are_monotone_and_full_length() {
    let vocab = common::vocabulary(6);
    let mut rng = common::rng(33);
    let g = common::random_graph(&mut rng, 50, 0.08);
    let p = common::random_profiles(&mut rng, &g, &vocab, 3, 5);
    for model in [
        ModelKind::GatedUserUser,
        ModelKind::Sir,
        ModelKind::Ic,
        ModelKind::Tipping,
    ] {
        let mut cfg = SimulationConfig::new(common::random_initials(&mut rng, 50, 2));
        cfg.model = model;
        cfg.max_time = 25;
        let tr = run_simulation(&cfg, &g, &p, None).unwrap();
        let curve = diffusion_curve(&tr);
        assert_eq!(curve.len(), 26);
        assert_eq!(curve[0].1, cfg.initials.len());
        assert!(curve.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(curve[25].1, tr.final_diffusers().len());
    }
}
