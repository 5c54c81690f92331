//! User profiles, rumor content and dataset consistency checks.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_id, SocialGraph, UserId};
use crate::io_util;
use crate::similarity::{tokenize_topics, TopicSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UserProfile {
    pub id: UserId,
    pub topics: TopicSet,
    /// Time step at which the user wakes up in the agent simulation.
    pub created_at: u64,
    /// Ground truth: did this user actually spread the rumor.
    pub observed_diffuser: bool,
}

impl UserProfile {
    pub fn new(id: UserId, topics: TopicSet, created_at: u64, observed_diffuser: bool) -> Self {
        Self {
            id,
            topics,
            created_at,
            observed_diffuser,
        }
    }
}

/// Profiles keyed by user id, iterated in ascending id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Profiles(BTreeMap<UserId, UserProfile>);

impl Profiles {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, profile: UserProfile) -> Result<()> {
        let id = profile.id;
        if self.0.contains_key(&id) {
            return Err(Error::DuplicateUser(id));
        }
        self.0.insert(id, profile);
        Ok(())
    }

    pub fn get(&self, id: UserId) -> Option<&UserProfile> {
        self.0.get(&id)
    }

    pub fn get_mut(&mut self, id: UserId) -> Option<&mut UserProfile> {
        self.0.get_mut(&id)
    }

    pub fn topics(&self, id: UserId) -> Option<&TopicSet> {
        self.0.get(&id).map(|p| &p.topics)
    }

    pub fn contains(&self, id: UserId) -> bool {
        self.0.contains_key(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &UserProfile> {
        self.0.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = UserId> + '_ {
        self.0.keys().copied()
    }
}

impl FromIterator<UserProfile> for Profiles {
    /// Later duplicates replace earlier ones; use [`Profiles::insert`] to reject them.
    fn from_iter<I: IntoIterator<Item = UserProfile>>(iter: I) -> Self {
        Profiles(iter.into_iter().map(|p| (p.id, p)).collect())
    }
}

/// Reads `users.csv` with header `user_id,topics,created_at,is_diffuser`.
pub fn load_users(path: impl AsRef<Path>) -> Result<Profiles> {
    let path = path.as_ref();
    let mut reader =
        io_util::csv_reader(path, &["user_id", "topics", "created_at", "is_diffuser"])?;
    let mut profiles = Profiles::new();
    for record in reader.records() {
        let record = record.map_err(|e| io_util::csv_error(path, e))?;
        let line = io_util::line_of(&record);
        let bad = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let id = parse_id(path, line, &record[0])?;
        let created_at = record[2]
            .trim()
            .parse::<u64>()
            .map_err(|_| bad(format!("invalid created_at {:?}", &record[2])))?;
        let observed = match record[3].trim().to_ascii_lowercase().as_str() {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(bad(format!("invalid is_diffuser {other:?}"))),
        };
        profiles.insert(UserProfile::new(
            id,
            tokenize_topics(&record[1]),
            created_at,
            observed,
        ))?;
    }
    Ok(profiles)
}

/// Topic content of the rumor being spread. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RumorContent {
    pub topics: TopicSet,
}

impl RumorContent {
    pub fn new(topics: TopicSet) -> Self {
        Self { topics }
    }
}

/// Reads `rumor.txt`, one topic label per line.
pub fn load_rumor(path: impl AsRef<Path>) -> Result<RumorContent> {
    let path = path.as_ref();
    let text = io_util::read_to_string(path)?;
    let mut topics = TopicSet::new();
    for line in text.lines() {
        for label in line.split(',') {
            topics.insert(label);
        }
    }
    Ok(RumorContent::new(topics))
}

/// Gaps between a graph and its profile table. Purely informational.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Graph nodes with no profile row.
    pub missing_profiles: Vec<UserId>,
    pub empty_topics: Vec<UserId>,
    /// Nodes with neither in- nor out-edges.
    pub isolated: Vec<UserId>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.missing_profiles.is_empty() && self.empty_topics.is_empty() && self.isolated.is_empty()
    }
}

pub fn validate(graph: &SocialGraph, profiles: &Profiles) -> ValidationReport {
    let missing_profiles = graph.nodes().filter(|u| !profiles.contains(*u)).collect();
    let empty_topics = profiles
        .iter()
        .filter(|p| p.topics.is_empty())
        .map(|p| p.id)
        .collect();
    let mut isolated: Vec<UserId> = graph.nodes().filter(|u| graph.is_isolated(*u)).collect();
    isolated.extend(profiles.ids().filter(|u| !graph.contains(*u)));
    isolated.sort();
    ValidationReport {
        missing_profiles,
        empty_topics,
        isolated,
    }
}
