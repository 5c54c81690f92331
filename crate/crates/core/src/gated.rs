//! Similarity-gated rumor spreading.
//!
//! Starting from a set of initial diffusers, the rumor crosses an edge
//! `i -> j` only when a gate admits `j`. Two gates are provided:
//!
//! * user–user: the topic profiles of `i` and `j` are similar enough;
//! * user–content: the profile of `j` is similar enough to the rumor itself.
//!
//! The diffuser set is the fixpoint of a work-list traversal, which equals
//! plain reachability from the initial set over the admitted edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, SocialGraph, UserId};
use crate::io_util;
use crate::models::RngStream;
use crate::profile::{Profiles, RumorContent};
use crate::similarity::{GateMetric, SimilarityTable, TopicSet};

/// Hard similarity threshold: admit when `metric(a, b) >= threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityGate {
    metric: GateMetric,
    threshold: f64,
}

impl SimilarityGate {
    pub const DEFAULT_THRESHOLD: f64 = 0.5;

    pub fn new(metric: impl Into<GateMetric>, threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::config(format!(
                "gate threshold must lie in [0, 1], got {threshold}"
            )));
        }
        Ok(Self {
            metric: metric.into(),
            threshold,
        })
    }

    pub fn metric(&self) -> GateMetric {
        self.metric
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn passes(&self, a: &TopicSet, b: &TopicSet) -> Result<bool> {
        Ok(self.metric.score(a, b)? >= self.threshold)
    }

    pub(crate) fn passes_score(&self, s: f64) -> bool {
        s >= self.threshold
    }
}

/// Decides whether the rumor may travel along `from -> to`.
pub trait EdgeAdmission {
    fn admits(&self, from: UserId, to: UserId) -> Result<bool>;

    /// Users looked up during evaluation that had no profile.
    fn unprofiled(&self) -> BTreeSet<UserId> {
        BTreeSet::new()
    }
}

/// Which gate a diffusion run uses.
#[derive(Debug, Clone, Copy)]
pub enum Algorithm<'a> {
    UserUser,
    UserContent(&'a RumorContent),
}

// Tracks users without profiles; they score 0 against anything.
#[derive(Default)]
struct Unprofiled(std::cell::RefCell<BTreeSet<UserId>>);

impl Unprofiled {
    fn topics<'p>(&self, profiles: &'p Profiles, u: UserId) -> Option<&'p TopicSet> {
        let t = profiles.topics(u);
        if t.is_none() {
            self.0.borrow_mut().insert(u);
        }
        t
    }
}

/// Admits `i -> j` when the profiles of `i` and `j` pass the gate.
pub struct UserUserGate<'a> {
    profiles: &'a Profiles,
    gate: SimilarityGate,
    missing: Unprofiled,
}

impl<'a> UserUserGate<'a> {
    pub fn new(profiles: &'a Profiles, gate: SimilarityGate) -> Self {
        Self {
            profiles,
            gate,
            missing: Unprofiled::default(),
        }
    }
}

impl EdgeAdmission for UserUserGate<'_> {
    fn admits(&self, from: UserId, to: UserId) -> Result<bool> {
        let a = self.missing.topics(self.profiles, from);
        let b = self.missing.topics(self.profiles, to);
        match (a, b) {
            (Some(a), Some(b)) => self.gate.passes(a, b),
            _ => Ok(self.gate.passes_score(0.0)),
        }
    }

    fn unprofiled(&self) -> BTreeSet<UserId> {
        self.missing.0.borrow().clone()
    }
}

/// Admits `i -> j` when the profile of `j` passes the gate against the rumor.
pub struct UserContentGate<'a> {
    profiles: &'a Profiles,
    rumor: &'a RumorContent,
    gate: SimilarityGate,
    missing: Unprofiled,
    // admission depends on the target only
    memo: std::cell::RefCell<BTreeMap<UserId, bool>>,
}

impl<'a> UserContentGate<'a> {
    pub fn new(profiles: &'a Profiles, rumor: &'a RumorContent, gate: SimilarityGate) -> Self {
        Self {
            profiles,
            rumor,
            gate,
            missing: Unprofiled::default(),
            memo: Default::default(),
        }
    }
}

impl EdgeAdmission for UserContentGate<'_> {
    fn admits(&self, _from: UserId, to: UserId) -> Result<bool> {
        if let Some(&v) = self.memo.borrow().get(&to) {
            return Ok(v);
        }
        let v = match self.missing.topics(self.profiles, to) {
            Some(t) => self.gate.passes(t, &self.rumor.topics)?,
            None => self.gate.passes_score(0.0),
        };
        self.memo.borrow_mut().insert(to, v);
        Ok(v)
    }

    fn unprofiled(&self) -> BTreeSet<UserId> {
        self.missing.0.borrow().clone()
    }
}

/// Gate over a precomputed `sims.csv` table. Edges absent from the table fail.
pub struct CachedGate<'a> {
    table: &'a SimilarityTable,
    gate: SimilarityGate,
}

impl<'a> CachedGate<'a> {
    pub fn new(table: &'a SimilarityTable, gate: SimilarityGate) -> Result<Self> {
        if table
            .rows()
            .next()
            .is_some_and(|r| r.get(gate.metric()).is_none())
        {
            return Err(Error::config(format!(
                "similarity cache has no {} column",
                gate.metric()
            )));
        }
        Ok(Self { table, gate })
    }
}

impl EdgeAdmission for CachedGate<'_> {
    fn admits(&self, from: UserId, to: UserId) -> Result<bool> {
        Ok(self
            .table
            .get((from, to))
            .and_then(|r| r.get(self.gate.metric()))
            .is_some_and(|s| self.gate.passes_score(s)))
    }
}

/// Precomputed pass/fail decisions per edge (`decisions.csv`).
/// Edges not listed are treated as failing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecisionTable {
    pass: BTreeMap<Edge, bool>,
}

impl DecisionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: Edge, pass: bool) {
        self.pass.insert(edge, pass);
    }

    pub fn len(&self) -> usize {
        self.pass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pass.is_empty()
    }
}

impl FromIterator<(Edge, bool)> for DecisionTable {
    fn from_iter<I: IntoIterator<Item = (Edge, bool)>>(iter: I) -> Self {
        Self {
            pass: iter.into_iter().collect(),
        }
    }
}

impl EdgeAdmission for DecisionTable {
    fn admits(&self, from: UserId, to: UserId) -> Result<bool> {
        Ok(self.pass.get(&(from, to)).copied().unwrap_or(false))
    }
}

/// Reads `decisions.csv` with header `from_user_id,to_user_id,pass`.
pub fn load_decisions(path: impl AsRef<Path>) -> Result<DecisionTable> {
    let path = path.as_ref();
    let mut reader = io_util::csv_reader(path, &["from_user_id", "to_user_id", "pass"])?;
    let mut table = DecisionTable::new();
    for record in reader.records() {
        let record = record.map_err(|e| io_util::csv_error(path, e))?;
        let line = io_util::line_of(&record);
        let from = crate::graph::parse_id(path, line, &record[0])?;
        let to = crate::graph::parse_id(path, line, &record[1])?;
        let pass = match record[2].trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("pass must be 0 or 1, got {other:?}"),
                })
            }
        };
        table.insert((from, to), pass);
    }
    Ok(table)
}

/// Diffuser set with the order in which members joined.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffuserSet {
    members: BTreeSet<UserId>,
    log: Vec<UserId>,
}

impl DiffuserSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if `u` was already a member.
    pub fn insert(&mut self, u: UserId) -> bool {
        let fresh = self.members.insert(u);
        if fresh {
            self.log.push(u);
        }
        fresh
    }

    pub fn contains(&self, u: UserId) -> bool {
        self.members.contains(&u)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &BTreeSet<UserId> {
        &self.members
    }

    /// Members in insertion order.
    pub fn log(&self) -> &[UserId] {
        &self.log
    }
}

impl FromIterator<UserId> for DiffuserSet {
    fn from_iter<I: IntoIterator<Item = UserId>>(iter: I) -> Self {
        let mut s = Self::new();
        for u in iter {
            s.insert(u);
        }
        s
    }
}

/// Work-list processing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisitOrder {
    /// Initials ascending, neighbors ascending, first-in first-out.
    #[default]
    Canonical,
    /// Initials and each neighbor list shuffled by the given seed. The member
    /// set is unaffected; only the insertion log changes.
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatedOutcome {
    pub diffusers: DiffuserSet,
    /// Users reached during traversal that had no profile (scored as 0).
    pub unprofiled: BTreeSet<UserId>,
}

impl GatedOutcome {
    pub fn size(&self) -> usize {
        self.diffusers.len()
    }
}

/// Work-list fixpoint under an arbitrary admission rule.
pub fn diffuse(
    g: &SocialGraph,
    initials: &BTreeSet<UserId>,
    admission: &dyn EdgeAdmission,
    order: VisitOrder,
) -> Result<GatedOutcome> {
    if let Some(u) = initials.iter().find(|u| !g.contains(**u)) {
        return Err(Error::config(format!(
            "initial diffuser {u} is not in the graph"
        )));
    }
    let mut rng = match order {
        VisitOrder::Canonical => None,
        VisitOrder::Shuffled(seed) => Some(RngStream::new(seed)),
    };
    let mut seeds: Vec<UserId> = initials.iter().copied().collect();
    if let Some(r) = rng.as_mut() {
        r.shuffle(&mut seeds);
    }
    let mut diffusers = DiffuserSet::new();
    let mut queue = VecDeque::new();
    for u in seeds {
        diffusers.insert(u);
        queue.push_back(u);
    }
    let mut nbrs = Vec::new();
    while let Some(i) = queue.pop_front() {
        nbrs.clear();
        nbrs.extend_from_slice(g.out_neighbors(i)?);
        if let Some(r) = rng.as_mut() {
            r.shuffle(&mut nbrs);
        }
        for &j in &nbrs {
            if !diffusers.contains(j) && admission.admits(i, j)? {
                diffusers.insert(j);
                queue.push_back(j);
            }
        }
    }
    Ok(GatedOutcome {
        diffusers,
        unprofiled: admission.unprofiled(),
    })
}

fn check_initials(profiles: &Profiles, initials: &BTreeSet<UserId>) -> Result<()> {
    match initials.iter().find(|u| !profiles.contains(**u)) {
        Some(u) => Err(Error::config(format!(
            "initial diffuser {u} has no profile"
        ))),
        None => Ok(()),
    }
}

/// Spreads from `initials` to followers whose profile is similar to the sender's.
pub fn diffuse_user_user(
    g: &SocialGraph,
    profiles: &Profiles,
    initials: &BTreeSet<UserId>,
    gate: &SimilarityGate,
) -> Result<GatedOutcome> {
    check_initials(profiles, initials)?;
    diffuse(
        g,
        initials,
        &UserUserGate::new(profiles, *gate),
        VisitOrder::Canonical,
    )
}

/// Spreads from `initials` to followers whose profile is similar to the rumor.
pub fn diffuse_user_content(
    g: &SocialGraph,
    profiles: &Profiles,
    rumor: &RumorContent,
    initials: &BTreeSet<UserId>,
    gate: &SimilarityGate,
) -> Result<GatedOutcome> {
    check_initials(profiles, initials)?;
    diffuse(
        g,
        initials,
        &UserContentGate::new(profiles, rumor, *gate),
        VisitOrder::Canonical,
    )
}

/// Dispatches on `algorithm`.
pub fn run_gated(
    g: &SocialGraph,
    profiles: &Profiles,
    algorithm: Algorithm<'_>,
    initials: &BTreeSet<UserId>,
    gate: &SimilarityGate,
) -> Result<GatedOutcome> {
    match algorithm {
        Algorithm::UserUser => diffuse_user_user(g, profiles, initials, gate),
        Algorithm::UserContent(r) => diffuse_user_content(g, profiles, r, initials, gate),
    }
}

/// Every edge the gate admits: user–user when `rumor` is `None`, user–content otherwise.
pub fn filtered_edge_set(
    g: &SocialGraph,
    profiles: &Profiles,
    rumor: Option<&RumorContent>,
    gate: &SimilarityGate,
) -> Result<BTreeSet<Edge>> {
    let admission: Box<dyn EdgeAdmission + '_> = match rumor {
        None => Box::new(UserUserGate::new(profiles, *gate)),
        Some(r) => Box::new(UserContentGate::new(profiles, r, *gate)),
    };
    let mut out = BTreeSet::new();
    for (a, b) in g.edges() {
        if admission.admits(a, b)? {
            out.insert((a, b));
        }
    }
    Ok(out)
}
