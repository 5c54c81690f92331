//! Pairwise similarity cache (`sims.csv`) over the edges of a graph.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, SocialGraph, UserId};
use crate::io_util;
use crate::profile::Profiles;

use super::{cosine, dice, jaccard, GateMetric, JaccardVariant, MetricKind, TopicSet};

pub const SIMS_HEADER: [&str; 6] = [
    "from_user_id",
    "to_user_id",
    "cosine",
    "jaccard",
    "dice",
    "average",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityRow {
    pub from_user_id: UserId,
    pub to_user_id: UserId,
    pub cosine: f64,
    pub jaccard: f64,
    pub dice: f64,
    pub average: f64,
}

impl SimilarityRow {
    pub fn compute(from: UserId, to: UserId, a: &TopicSet, b: &TopicSet) -> Self {
        let cosine = cosine(a, b);
        let jaccard = jaccard(a, b, JaccardVariant::Set);
        let dice = dice(a, b);
        Self {
            from_user_id: from,
            to_user_id: to,
            cosine,
            jaccard,
            dice,
            average: (cosine + jaccard + dice) / 3.0,
        }
    }

    /// The stored value for `metric`, if the cache carries that column.
    pub fn get(&self, metric: GateMetric) -> Option<f64> {
        match metric {
            GateMetric::Kind(MetricKind::Cosine) => Some(self.cosine),
            GateMetric::Kind(MetricKind::JaccardSet) => Some(self.jaccard),
            GateMetric::Kind(MetricKind::Dice) => Some(self.dice),
            GateMetric::Average => Some(self.average),
            GateMetric::Kind(_) => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimilarityTable {
    rows: BTreeMap<Edge, SimilarityRow>,
}

impl SimilarityTable {
    /// Scores every edge of `graph`. Users without a profile compare as empty topic sets.
    pub fn compute(graph: &SocialGraph, profiles: &Profiles) -> Self {
        let empty = TopicSet::new();
        let rows = graph
            .edges()
            .map(|(a, b)| {
                let ta = profiles.topics(a).unwrap_or(&empty);
                let tb = profiles.topics(b).unwrap_or(&empty);
                ((a, b), SimilarityRow::compute(a, b, ta, tb))
            })
            .collect();
        Self { rows }
    }

    pub fn get(&self, edge: Edge) -> Option<&SimilarityRow> {
        self.rows.get(&edge)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SimilarityRow> {
        self.rows.values()
    }
}

pub fn write_sims<W: Write>(table: &SimilarityTable, w: W) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::new(w);
    writeln!(w, "{}", SIMS_HEADER.join(","))?;
    for r in table.rows() {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.from_user_id, r.to_user_id, r.cosine, r.jaccard, r.dice, r.average
        )?;
    }
    w.flush()
}

pub fn load_sims(path: impl AsRef<Path>) -> Result<SimilarityTable> {
    let path = path.as_ref();
    let mut reader = io_util::csv_reader(path, &SIMS_HEADER)?;
    let mut rows = BTreeMap::new();
    for row in reader.deserialize::<SimilarityRow>() {
        let row = row.map_err(|e| io_util::csv_error(path, e))?;
        let key = (row.from_user_id, row.to_user_id);
        if rows.insert(key, row).is_some() {
            return Err(Error::config(format!(
                "{}: duplicate pair {} -> {}",
                path.display(),
                key.0,
                key.1
            )));
        }
    }
    Ok(SimilarityTable { rows })
}
