//! Topic-set similarity measures.
//!
//! Every measure compares two [`TopicSet`]s. Set measures (cosine, Jaccard,
//! Dice) count shared labels directly; they agree with the vector forms over
//! binary term vectors on the union vocabulary. Empty inputs score 0 for the
//! set measures instead of dividing by zero.

mod cache;
mod edit;
mod topics;
mod vector;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cache::{load_sims, write_sims, SimilarityRow, SimilarityTable};
pub use edit::{levenshtein, Levenshtein};
pub use topics::{tokenize_topics, TopicSet};
pub use vector::{correlation, cosine_weights, pearson, tanimoto_weights, TermVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Cosine,
    Pearson,
    JaccardSet,
    JaccardVector,
    Dice,
    Levenshtein,
}

impl MetricKind {
    pub const ALL: [MetricKind; 6] = [
        MetricKind::Cosine,
        MetricKind::Pearson,
        MetricKind::JaccardSet,
        MetricKind::JaccardVector,
        MetricKind::Dice,
        MetricKind::Levenshtein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Cosine => "cosine",
            MetricKind::Pearson => "pearson",
            MetricKind::JaccardSet => "jaccard",
            MetricKind::JaccardVector => "jaccard-vector",
            MetricKind::Dice => "dice",
            MetricKind::Levenshtein => "levenshtein",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which [`jaccard`] formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JaccardVariant {
    Set,
    Vector,
}

/// A metric usable by a similarity gate: one measure, or the mean of
/// cosine, set-Jaccard and Dice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateMetric {
    Kind(MetricKind),
    Average,
}

impl GateMetric {
    /// The four measures compared in the reference evaluation.
    pub const STANDARD: [GateMetric; 4] = [
        GateMetric::Kind(MetricKind::Cosine),
        GateMetric::Kind(MetricKind::JaccardSet),
        GateMetric::Kind(MetricKind::Dice),
        GateMetric::Average,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateMetric::Kind(k) => k.name(),
            GateMetric::Average => "average",
        }
    }

    pub fn score(self, a: &TopicSet, b: &TopicSet) -> Result<f64> {
        match self {
            GateMetric::Kind(k) => score(k, a, b),
            GateMetric::Average => Ok(average(a, b)),
        }
    }
}

impl From<MetricKind> for GateMetric {
    fn from(k: MetricKind) -> Self {
        GateMetric::Kind(k)
    }
}

impl fmt::Display for GateMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "average" || s == "avg" {
            return Ok(GateMetric::Average);
        }
        let kind = match s.as_str() {
            "cosine" | "cos" => MetricKind::Cosine,
            "pearson" => MetricKind::Pearson,
            "jaccard" | "jaccard-set" | "jaccard_set" => MetricKind::JaccardSet,
            "jaccard-vector" | "jaccard_vector" => MetricKind::JaccardVector,
            "dice" => MetricKind::Dice,
            "levenshtein" => MetricKind::Levenshtein,
            other => return Err(Error::config(format!("unknown metric {other:?}"))),
        };
        Ok(GateMetric::Kind(kind))
    }
}

impl Serialize for GateMetric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Cosine of the binary term vectors: `|a∩b| / sqrt(|a|·|b|)`.
pub fn cosine(a: &TopicSet, b: &TopicSet) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let common = a.intersection_len(b) as f64;
    (common / ((a.len() * b.len()) as f64).sqrt()).min(1.0)
}

pub fn jaccard(a: &TopicSet, b: &TopicSet, variant: JaccardVariant) -> f64 {
    match variant {
        JaccardVariant::Set => {
            let union = a.union_len(b);
            if union == 0 {
                0.0
            } else {
                a.intersection_len(b) as f64 / union as f64
            }
        }
        JaccardVariant::Vector => {
            let (va, vb) = TermVector::binary_pair(a, b);
            tanimoto_weights(va.weights(), vb.weights())
        }
    }
}

/// `2·|a∩b| / (|a| + |b|)`.
pub fn dice(a: &TopicSet, b: &TopicSet) -> f64 {
    let total = a.len() + b.len();
    if total == 0 {
        return 0.0;
    }
    (2 * a.intersection_len(b)) as f64 / total as f64
}

/// Arithmetic mean of cosine, set-Jaccard and Dice.
pub fn average(a: &TopicSet, b: &TopicSet) -> f64 {
    (cosine(a, b) + jaccard(a, b, JaccardVariant::Set) + dice(a, b)) / 3.0
}

/// Uniform dispatch over the measures.
///
/// Pearson embeds both sets as binary vectors on their union vocabulary and
/// fails when either vector is constant. Levenshtein compares the canonical
/// (sorted, `", "`-joined) strings and yields the normalized similarity.
pub fn score(metric: MetricKind, a: &TopicSet, b: &TopicSet) -> Result<f64> {
    Ok(match metric {
        MetricKind::Cosine => cosine(a, b),
        MetricKind::JaccardSet => jaccard(a, b, JaccardVariant::Set),
        MetricKind::JaccardVector => jaccard(a, b, JaccardVariant::Vector),
        MetricKind::Dice => dice(a, b),
        MetricKind::Pearson => {
            let (va, vb) = TermVector::binary_pair(a, b);
            pearson(&va, &vb)?
        }
        MetricKind::Levenshtein => {
            levenshtein(&a.canonical_string(), &b.canonical_string()).similarity
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> TopicSet {
        tokenize_topics(s)
    }

    #[test]
    fn identical_sets_score_one() {
        let a = set("x, y, z");
        for m in [
            MetricKind::Cosine,
            MetricKind::JaccardSet,
            MetricKind::JaccardVector,
            MetricKind::Dice,
            MetricKind::Levenshtein,
        ] {
            assert_eq!(score(m, &a, &a).unwrap(), 1.0, "{m}");
        }
    }

    #[test]
    fn disjoint_sets_score_zero() {
        let (a, b) = (set("a,b"), set("c,d"));
        assert_eq!(cosine(&a, &b), 0.0);
        assert_eq!(jaccard(&a, &b, JaccardVariant::Set), 0.0);
        assert_eq!(dice(&a, &b), 0.0);
    }

    #[test]
    fn overlapping_triples() {
        // |∩| = 2, |a| = |b| = 3, |∪| = 4
        let (a, b) = (set("a,b,c"), set("b,c,d"));
        assert!((cosine(&a, &b) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(jaccard(&a, &b, JaccardVariant::Set), 0.5);
        assert_eq!(jaccard(&a, &b, JaccardVariant::Vector), 0.5);
        assert!((dice(&a, &b) - 2.0 / 3.0).abs() < 1e-15);
        let j = 0.5;
        assert!((dice(&a, &b) - 2.0 * j / (1.0 + j)).abs() < 1e-15);
    }

    #[test]
    fn average_of_three() {
        let (a, b) = (set("a,b,c"), set("b,c,d"));
        let want = (2.0 / 3.0 + 0.5 + 2.0 / 3.0) / 3.0;
        assert!((average(&a, &b) - want).abs() < 1e-15);
        assert!((GateMetric::Average.score(&a, &b).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn empty_set_conventions() {
        let (e, q) = (TopicSet::new(), set("a"));
        for m in [
            MetricKind::Cosine,
            MetricKind::JaccardSet,
            MetricKind::JaccardVector,
            MetricKind::Dice,
        ] {
            assert_eq!(score(m, &e, &q).unwrap(), 0.0, "{m}");
            assert_eq!(score(m, &e, &e).unwrap(), 0.0, "{m}");
        }
        assert_eq!(score(MetricKind::Levenshtein, &e, &e).unwrap(), 1.0);
    }

    #[test]
    fn pearson_on_sets() {
        // union {a,b,c,d}: (1,1,1,0) vs (0,1,1,1)
        let r = score(MetricKind::Pearson, &set("a,b,c"), &set("b,c,d")).unwrap();
        assert!((r - (-1.0 / 3.0)).abs() < 1e-12);
        // subset: the superset's vector is all ones
        let e = score(MetricKind::Pearson, &set("a,b"), &set("a")).unwrap_err();
        assert!(matches!(e, Error::UndefinedCorrelation(_)));
    }

    #[test]
    fn levenshtein_uses_canonical_order() {
        let a = set("b, a");
        let b = set("a,b");
        assert_eq!(score(MetricKind::Levenshtein, &a, &b).unwrap(), 1.0);
    }

    #[test]
    fn metric_names_round_trip() {
        for m in MetricKind::ALL {
            assert_eq!(m.name().parse::<GateMetric>().unwrap(), GateMetric::Kind(m));
        }
        assert_eq!(
            "average".parse::<GateMetric>().unwrap(),
            GateMetric::Average
        );
        assert!("bm25".parse::<GateMetric>().is_err());
    }
}
