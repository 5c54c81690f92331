use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gated::{DecisionTable, EdgeAdmission, UserContentGate, UserUserGate};
use crate::graph::{SocialGraph, UserId};
use crate::models::{
    ic_step, seeded_states, sir_step, tipping_step, Adoption, EdgeProbability, NodeState,
    RngStream, States,
};
use crate::profile::{Profiles, RumorContent};

use super::config::{EvaluationPolicy, ModelKind, SimulationConfig};

/// Agent state across all simulated models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentState {
    NonDiffuser,
    Diffuser,
    Susceptible,
    Infected,
    Recovered,
    NotAdopted,
    Adopted,
}

impl AgentState {
    /// Whether the agent has ever taken up the rumor. Monotone over a run.
    pub fn is_diffuser(self) -> bool {
        matches!(
            self,
            AgentState::Diffuser
                | AgentState::Infected
                | AgentState::Recovered
                | AgentState::Adopted
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            AgentState::NonDiffuser => "non_diffuser",
            AgentState::Diffuser => "diffuser",
            AgentState::Susceptible => "susceptible",
            AgentState::Infected => "infected",
            AgentState::Recovered => "recovered",
            AgentState::NotAdopted => "not_adopted",
            AgentState::Adopted => "adopted",
        }
    }

    /// State every agent starts in under `model`, before seeding.
    pub fn baseline(model: ModelKind) -> Self {
        match model {
            ModelKind::GatedUserUser | ModelKind::GatedUserContent => AgentState::NonDiffuser,
            ModelKind::Sir | ModelKind::Ic => AgentState::Susceptible,
            ModelKind::Tipping => AgentState::NotAdopted,
        }
    }

    /// State given to the initial diffusers under `model`.
    pub fn seeded(model: ModelKind) -> Self {
        match model {
            ModelKind::GatedUserUser | ModelKind::GatedUserContent => AgentState::Diffuser,
            ModelKind::Sir | ModelKind::Ic => AgentState::Infected,
            ModelKind::Tipping => AgentState::Adopted,
        }
    }
}

impl fmt::Display for AgentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "non_diffuser" => AgentState::NonDiffuser,
            "diffuser" => AgentState::Diffuser,
            "susceptible" => AgentState::Susceptible,
            "infected" => AgentState::Infected,
            "recovered" => AgentState::Recovered,
            "not_adopted" => AgentState::NotAdopted,
            "adopted" => AgentState::Adopted,
            other => return Err(Error::config(format!("unknown agent state {other:?}"))),
        })
    }
}

impl From<NodeState> for AgentState {
    fn from(s: NodeState) -> Self {
        match s {
            NodeState::Susceptible => AgentState::Susceptible,
            NodeState::Infected => AgentState::Infected,
            NodeState::Recovered => AgentState::Recovered,
        }
    }
}

impl From<Adoption> for AgentState {
    fn from(s: Adoption) -> Self {
        match s {
            Adoption::NotAdopted => AgentState::NotAdopted,
            Adoption::Adopted => AgentState::Adopted,
        }
    }
}

pub type StepChanges = Vec<(UserId, AgentState)>;

/// State changes of one run, step by step.
///
/// Every agent starts in `baseline`; step 0 records only the seeding of the
/// initial diffusers. Full state maps are rebuilt on demand from these deltas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffusionTrace {
    pub trial: u32,
    pub max_time: u64,
    pub baseline: AgentState,
    pub nodes: Vec<UserId>,
    /// `steps[t]` holds the changes of step `t`, in the order they happened.
    pub steps: Vec<StepChanges>,
    /// Diffuser count after each step.
    pub diffusers: Vec<usize>,
    /// Agents whose `created_at` exceeds `max_time`; they never evaluate.
    pub late_agents: Vec<UserId>,
}

impl DiffusionTrace {
    /// Rebuilds a trace from its change rows. `rows` must be grouped by step, ascending.
    pub fn from_changes(
        trial: u32,
        max_time: u64,
        baseline: AgentState,
        nodes: Vec<UserId>,
        rows: impl IntoIterator<Item = (u64, UserId, AgentState)>,
    ) -> Result<Self> {
        let mut steps = vec![StepChanges::new(); max_time as usize + 1];
        let known: BTreeSet<UserId> = nodes.iter().copied().collect();
        for (t, u, s) in rows {
            if t > max_time {
                return Err(Error::config(format!(
                    "trace step {t} beyond max_time {max_time}"
                )));
            }
            if !known.contains(&u) {
                return Err(Error::UnknownUser(u));
            }
            steps[t as usize].push((u, s));
        }
        let mut trace = Self {
            trial,
            max_time,
            baseline,
            nodes,
            steps,
            diffusers: Vec::new(),
            late_agents: Vec::new(),
        };
        trace.diffusers = trace.recount();
        Ok(trace)
    }

    fn recount(&self) -> Vec<usize> {
        let mut states = self.initial_states();
        let mut count = states.values().filter(|s| s.is_diffuser()).count();
        let mut out = Vec::with_capacity(self.steps.len());
        for changes in &self.steps {
            for &(u, s) in changes {
                let old = states.insert(u, s).unwrap_or(self.baseline);
                count = count + usize::from(s.is_diffuser()) - usize::from(old.is_diffuser());
            }
            out.push(count);
        }
        out
    }

    fn initial_states(&self) -> BTreeMap<UserId, AgentState> {
        self.nodes.iter().map(|&u| (u, self.baseline)).collect()
    }

    /// Full state map after step `t`.
    pub fn states_at(&self, t: u64) -> BTreeMap<UserId, AgentState> {
        let mut states = self.initial_states();
        for changes in self.steps.iter().take(t as usize + 1) {
            states.extend(changes.iter().copied());
        }
        states
    }

    pub fn final_states(&self) -> BTreeMap<UserId, AgentState> {
        self.states_at(self.max_time)
    }

    pub fn final_diffusers(&self) -> BTreeSet<UserId> {
        self.final_states()
            .into_iter()
            .filter(|(_, s)| s.is_diffuser())
            .map(|(u, _)| u)
            .collect()
    }

    pub fn change_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }
}

struct Recorder {
    steps: Vec<StepChanges>,
    diffusers: Vec<usize>,
    max_time: u64,
}

impl Recorder {
    fn new(max_time: u64) -> Self {
        Self {
            steps: Vec::with_capacity(max_time as usize + 1),
            diffusers: Vec::with_capacity(max_time as usize + 1),
            max_time,
        }
    }

    fn push(&mut self, changes: StepChanges, diffusers: usize) {
        self.steps.push(changes);
        self.diffusers.push(diffusers);
    }

    /// Pads the remaining steps with no changes.
    fn settle(&mut self) {
        let last = self.diffusers.last().copied().unwrap_or(0);
        while (self.steps.len() as u64) <= self.max_time {
            self.push(StepChanges::new(), last);
        }
    }
}

/// Runs one trial of the configured model.
pub fn run_simulation(
    cfg: &SimulationConfig,
    g: &SocialGraph,
    profiles: &Profiles,
    rumor: Option<&RumorContent>,
) -> Result<DiffusionTrace> {
    run_trial(cfg, g, profiles, rumor, None, 0)
}

/// Like [`run_simulation`], with optional precomputed gate decisions and an explicit trial index.
pub fn run_trial(
    cfg: &SimulationConfig,
    g: &SocialGraph,
    profiles: &Profiles,
    rumor: Option<&RumorContent>,
    decisions: Option<&DecisionTable>,
    trial: u32,
) -> Result<DiffusionTrace> {
    cfg.validate()?;
    if let Some(u) = cfg.initials.iter().find(|u| !g.contains(**u)) {
        return Err(Error::config(format!(
            "initial diffuser {u} is not in the graph"
        )));
    }
    let mut rng = RngStream::for_trial(cfg.master_seed, u64::from(trial));
    let mut late_agents = Vec::new();
    let rec = match cfg.model {
        ModelKind::GatedUserUser | ModelKind::GatedUserContent => {
            let user_user;
            let user_content;
            let admission: &dyn EdgeAdmission = match (decisions, cfg.model) {
                (Some(d), _) => d,
                (None, ModelKind::GatedUserUser) => {
                    user_user = UserUserGate::new(profiles, cfg.gate);
                    &user_user
                }
                (None, _) => {
                    let rumor = rumor
                        .ok_or_else(|| Error::config("user-content model needs rumor content"))?;
                    user_content = UserContentGate::new(profiles, rumor, cfg.gate);
                    &user_content
                }
            };
            let wake = wake_times(g, profiles, cfg.max_time, &mut late_agents);
            gated(cfg, g, &wake, admission)?
        }
        ModelKind::Sir => {
            let init = seeded_states(
                g,
                cfg.initials.iter().copied(),
                NodeState::Susceptible,
                NodeState::Infected,
            )?;
            classical(
                cfg.max_time,
                init,
                false,
                |s| sir_step(g, s, &cfg.sir, &mut rng),
                |s| !s.values().any(|x| *x == NodeState::Infected),
            )?
        }
        ModelKind::Tipping => {
            let init = seeded_states(
                g,
                cfg.initials.iter().copied(),
                Adoption::NotAdopted,
                Adoption::Adopted,
            )?;
            classical(
                cfg.max_time,
                init,
                true,
                |s| tipping_step(g, s, &cfg.tipping),
                |_| false,
            )?
        }
        ModelKind::Ic => {
            let probs = EdgeProbability::uniform(cfg.ic_default_p)?;
            let init = seeded_states(
                g,
                cfg.initials.iter().copied(),
                NodeState::Susceptible,
                NodeState::Infected,
            )?;
            let mut attempted = BTreeSet::new();
            classical(
                cfg.max_time,
                init,
                false,
                |s| {
                    let (next, tried) = ic_step(g, s, &probs, &attempted, &mut rng)?;
                    attempted = tried;
                    Ok(next)
                },
                |s| !s.values().any(|x| *x == NodeState::Infected),
            )?
        }
    };
    Ok(DiffusionTrace {
        trial,
        max_time: cfg.max_time,
        baseline: AgentState::baseline(cfg.model),
        nodes: g.nodes().collect(),
        steps: rec.steps,
        diffusers: rec.diffusers,
        late_agents,
    })
}

/// Wake-up step per node. Users without a profile wake at step 0; users
/// waking after `max_time` are collected into `late` and never scheduled.
fn wake_times(
    g: &SocialGraph,
    profiles: &Profiles,
    max_time: u64,
    late: &mut Vec<UserId>,
) -> BTreeMap<UserId, u64> {
    let mut wake = BTreeMap::new();
    for u in g.nodes() {
        let t = profiles.get(u).map_or(0, |p| p.created_at);
        if t > max_time {
            late.push(u);
        } else {
            wake.insert(u, t);
        }
    }
    wake
}

fn gated(
    cfg: &SimulationConfig,
    g: &SocialGraph,
    wake: &BTreeMap<UserId, u64>,
    admission: &dyn EdgeAdmission,
) -> Result<Recorder> {
    let mut rec = Recorder::new(cfg.max_time);
    let mut diffuser: BTreeSet<UserId> = cfg.initials.clone();
    let mut seeding: StepChanges = cfg
        .initials
        .iter()
        .map(|&u| (u, AgentState::Diffuser))
        .collect();

    // step 0 is seeding only
    let mut by_time: BTreeMap<u64, Vec<UserId>> = BTreeMap::new();
    for (&u, &t) in wake {
        if !diffuser.contains(&u) {
            by_time.entry(t.max(1)).or_default().push(u);
        }
    }
    let last_wake = by_time.keys().next_back().copied().unwrap_or(0);
    // dormant agents awake and still undecided, ascending (every-step only)
    let mut awake: Vec<UserId> = Vec::new();

    for t in 0..=cfg.max_time {
        let mut changes = std::mem::take(&mut seeding);
        let mut woken = by_time.remove(&t).unwrap_or_default();
        let candidates: &mut Vec<UserId> = match cfg.policy {
            EvaluationPolicy::Once => &mut woken,
            EvaluationPolicy::EveryStep => {
                awake.append(&mut woken);
                awake.sort_unstable();
                &mut awake
            }
        };
        let before = changes.len();
        for &u in candidates.iter() {
            for &src in g.in_neighbors(u)? {
                if diffuser.contains(&src) && admission.admits(src, u)? {
                    diffuser.insert(u);
                    changes.push((u, AgentState::Diffuser));
                    break;
                }
            }
        }
        candidates.retain(|u| !diffuser.contains(u));
        let quiet = changes.len() == before;
        rec.push(changes, diffuser.len());
        let nothing_left = match cfg.policy {
            EvaluationPolicy::Once => by_time.is_empty(),
            EvaluationPolicy::EveryStep => quiet && t >= last_wake,
        };
        if nothing_left {
            break;
        }
    }
    rec.settle();
    Ok(rec)
}

/// Seeds at step 0, then one model step per tick. `settled` lets a run stop
/// early once no further change is possible; for a deterministic step a
/// quiet tick is already a fixpoint.
fn classical<S, F, D>(
    max_time: u64,
    init: States<S>,
    deterministic: bool,
    mut step: F,
    settled: D,
) -> Result<Recorder>
where
    S: Copy + PartialEq + Into<AgentState>,
    F: FnMut(&States<S>) -> Result<States<S>>,
    D: Fn(&States<S>) -> bool,
{
    let mut rec = Recorder::new(max_time);
    let count = |s: &States<S>| s.values().filter(|x| (**x).into().is_diffuser()).count();
    let seeding = init
        .iter()
        .filter(|(_, s)| (**s).into().is_diffuser())
        .map(|(&u, &s)| (u, s.into()))
        .collect();
    rec.push(seeding, count(&init));
    let mut cur = init;
    for _ in 1..=max_time {
        if settled(&cur) {
            break;
        }
        let next = step(&cur)?;
        let changes: StepChanges = next
            .iter()
            .filter(|(u, s)| cur.get(u) != Some(s))
            .map(|(&u, &s)| (u, s.into()))
            .collect();
        let quiet = changes.is_empty();
        rec.push(changes, count(&next));
        cur = next;
        if quiet && deterministic {
            break;
        }
    }
    rec.settle();
    Ok(rec)
}

/// Per-trial traces plus the mean diffuser curve across trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSet {
    pub traces: Vec<DiffusionTrace>,
    pub aggregate: Vec<f64>,
}

/// Runs `cfg.trials` independent trials; trial `k` draws from stream `(seed, k)`.
pub fn run_trials(
    cfg: &SimulationConfig,
    g: &SocialGraph,
    profiles: &Profiles,
    rumor: Option<&RumorContent>,
    decisions: Option<&DecisionTable>,
) -> Result<TrialSet> {
    let traces = (0..cfg.trials)
        .map(|k| run_trial(cfg, g, profiles, rumor, decisions, k))
        .collect::<Result<Vec<_>>>()?;
    let len = cfg.max_time as usize + 1;
    let aggregate = (0..len)
        .map(|t| traces.iter().map(|tr| tr.diffusers[t] as f64).sum::<f64>() / traces.len() as f64)
        .collect();
    Ok(TrialSet { traces, aggregate })
}
