//! Directed follower graph and edge-list ingestion.
//!
//! An edge `a -> b` means information flows from `a` to `b`: `b` follows `a`.
//! Adjacency lists are kept sorted so every traversal visits neighbors in
//! ascending id order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io_util;

/// Opaque user identifier. Ids need not be contiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub u64);

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for UserId {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse().map(UserId)
    }
}

impl From<u64> for UserId {
    fn from(v: u64) -> Self {
        UserId(v)
    }
}

pub type Edge = (UserId, UserId);

/// Outcome of a single [`SocialGraph::add_edge`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeInsert {
    Added,
    Duplicate,
    SelfLoop,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SocialGraph {
    out: BTreeMap<UserId, Vec<UserId>>,
    inc: BTreeMap<UserId, Vec<UserId>>,
    edge_count: usize,
}

impl SocialGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from edge pairs, silently dropping self-loops and duplicates.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::new();
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Adds an isolated node; no-op if it already exists.
    pub fn add_node(&mut self, id: UserId) {
        self.out.entry(id).or_default();
        self.inc.entry(id).or_default();
    }

    pub fn add_edge(&mut self, from: UserId, to: UserId) -> EdgeInsert {
        if from == to {
            return EdgeInsert::SelfLoop;
        }
        self.add_node(from);
        self.add_node(to);
        let outs = self.out.get_mut(&from).expect("node just inserted");
        match outs.binary_search(&to) {
            Ok(_) => EdgeInsert::Duplicate,
            Err(pos) => {
                outs.insert(pos, to);
                let ins = self.inc.get_mut(&to).expect("node just inserted");
                let pos = ins.binary_search(&from).unwrap_err();
                ins.insert(pos, from);
                self.edge_count += 1;
                EdgeInsert::Added
            }
        }
    }

    pub fn contains(&self, id: UserId) -> bool {
        self.out.contains_key(&id)
    }

    pub fn has_edge(&self, from: UserId, to: UserId) -> bool {
        self.out
            .get(&from)
            .is_some_and(|v| v.binary_search(&to).is_ok())
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = UserId> + '_ {
        self.out.keys().copied()
    }

    /// Edges in lexicographic `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out
            .iter()
            .flat_map(|(&a, outs)| outs.iter().map(move |&b| (a, b)))
    }

    /// Users that follow `u`, sorted ascending.
    pub fn out_neighbors(&self, u: UserId) -> Result<&[UserId]> {
        self.out
            .get(&u)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownUser(u))
    }

    /// Users that `u` follows (its sources of information), sorted ascending.
    pub fn in_neighbors(&self, u: UserId) -> Result<&[UserId]> {
        self.inc
            .get(&u)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownUser(u))
    }

    pub fn is_isolated(&self, u: UserId) -> bool {
        self.out.get(&u).is_some_and(Vec::is_empty) && self.inc.get(&u).is_some_and(Vec::is_empty)
    }

    pub fn node_set(&self) -> BTreeSet<UserId> {
        self.nodes().collect()
    }

    /// Writes the edge list in the same CSV layout [`load_edges`] reads.
    /// Isolated nodes are not representable in this format.
    pub fn write_edges_csv<W: Write>(&self, w: W) -> Result<(), std::io::Error> {
        let mut w = std::io::BufWriter::new(w);
        writeln!(w, "from_user_id,to_user_id")?;
        for (a, b) in self.edges() {
            writeln!(w, "{a},{b}")?;
        }
        w.flush()
    }
}

/// A loaded edge file together with the bookkeeping counts from ingestion.
#[derive(Debug, Clone)]
pub struct EdgeLoad {
    pub graph: SocialGraph,
    pub rows_read: usize,
    pub duplicates: usize,
    pub self_loops: usize,
}

/// Reads an `edges.csv` file with header `from_user_id,to_user_id`.
pub fn load_edges(path: impl AsRef<Path>) -> Result<EdgeLoad> {
    let path = path.as_ref();
    let mut reader = io_util::csv_reader(path, &["from_user_id", "to_user_id"])?;
    let mut load = EdgeLoad {
        graph: SocialGraph::new(),
        rows_read: 0,
        duplicates: 0,
        self_loops: 0,
    };
    for record in reader.records() {
        let record = record.map_err(|e| io_util::csv_error(path, e))?;
        let line = io_util::line_of(&record);
        let from = parse_id(path, line, &record[0])?;
        let to = parse_id(path, line, &record[1])?;
        load.rows_read += 1;
        match load.graph.add_edge(from, to) {
            EdgeInsert::Added => {}
            EdgeInsert::Duplicate => load.duplicates += 1,
            EdgeInsert::SelfLoop => load.self_loops += 1,
        }
    }
    Ok(load)
}

pub(crate) fn parse_id(path: &Path, line: u64, raw: &str) -> Result<UserId> {
    raw.parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("invalid user id {raw:?}"),
    })
}
