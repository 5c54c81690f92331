use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Normalized set of topic labels: trimmed, lowercased, non-empty, unique.
///
/// Iteration is in lexicographic order, which also fixes the canonical
/// string used for edit-distance comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TopicSet(BTreeSet<String>);

impl TopicSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Normalizes each label; empty labels are dropped.
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = Self::new();
        for l in labels {
            set.insert(l.as_ref());
        }
        set
    }

    /// Inserts a label after normalization. Returns false if it was empty or already present.
    pub fn insert(&mut self, raw: &str) -> bool {
        let label = raw.trim().to_lowercase();
        if label.is_empty() {
            return false;
        }
        self.0.insert(label)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn intersection_len(&self, other: &TopicSet) -> usize {
        // walk the smaller set
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.0.iter().filter(|l| large.0.contains(*l)).count()
    }

    pub fn union_len(&self, other: &TopicSet) -> usize {
        self.len() + other.len() - self.intersection_len(other)
    }

    /// Sorted labels joined by `", "`.
    pub fn canonical_string(&self) -> String {
        self.iter().collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for TopicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl<S: AsRef<str>> FromIterator<S> for TopicSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self::from_labels(iter)
    }
}

/// Splits a comma-separated topic string into a [`TopicSet`].
pub fn tokenize_topics(raw: &str) -> TopicSet {
    TopicSet::from_labels(raw.split(','))
}
