#![allow(dead_code)]

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rumorsim::graph::Edge;
use rumorsim::{Profiles, SocialGraph, TopicSet, UserId, UserProfile};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn vocabulary(size: usize) -> Vec<String> {
    (0..size).map(|i| format!("t{i:02}")).collect()
}

/// Up to `max_labels` distinct labels drawn from `vocab`.
pub fn random_topics(rng: &mut StdRng, vocab: &[String], max_labels: usize) -> TopicSet {
    let k = rng.random_range(0..=max_labels.min(vocab.len()));
    let mut pool: Vec<&String> = vocab.iter().collect();
    pool.shuffle(rng);
    TopicSet::from_labels(pool.into_iter().take(k))
}

/// Directed graph on `1..=n` where each ordered pair is an edge with probability `density`.
pub fn random_graph(rng: &mut StdRng, n: u64, density: f64) -> SocialGraph {
    let mut g = SocialGraph::new();
    for u in 1..=n {
        g.add_node(UserId(u));
    }
    for a in 1..=n {
        for b in 1..=n {
            if a != b && rng.random_bool(density) {
                g.add_edge(UserId(a), UserId(b));
            }
        }
    }
    g
}

pub fn random_profiles(
    rng: &mut StdRng,
    g: &SocialGraph,
    vocab: &[String],
    max_labels: usize,
    max_created: u64,
) -> Profiles {
    g.nodes()
        .map(|u| {
            let topics = random_topics(rng, vocab, max_labels);
            let created = rng.random_range(0..=max_created);
            UserProfile::new(u, topics, created, false)
        })
        .collect()
}

pub fn random_initials(rng: &mut StdRng, n: u64, k: usize) -> BTreeSet<UserId> {
    let mut ids: Vec<u64> = (1..=n).collect();
    ids.shuffle(rng);
    ids.into_iter().take(k.max(1)).map(UserId).collect()
}

/// Plain breadth-first reachability over `edges`.
pub fn bfs_reach(initials: &BTreeSet<UserId>, edges: &BTreeSet<Edge>) -> BTreeSet<UserId> {
    bfs_levels(initials, edges).into_keys().collect()
}

/// Breadth-first distance from the nearest initial node.
pub fn bfs_levels(initials: &BTreeSet<UserId>, edges: &BTreeSet<Edge>) -> BTreeMap<UserId, usize> {
    let mut adj: BTreeMap<UserId, Vec<UserId>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
    }
    let mut level: BTreeMap<UserId, usize> = initials.iter().map(|&u| (u, 0)).collect();
    let mut queue: VecDeque<UserId> = initials.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        let d = level[&u];
        for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if let Entry::Vacant(e) = level.entry(v) {
                e.insert(d + 1);
                queue.push_back(v);
            }
        }
    }
    level
}

fn indicator(set: &TopicSet, vocab: &[String]) -> Vec<f64> {
    vocab
        .iter()
        .map(|t| if set.contains(t) { 1.0 } else { 0.0 })
        .collect()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cosine of the indicator vectors over the full vocabulary.
pub fn oracle_cosine(a: &TopicSet, b: &TopicSet, vocab: &[String]) -> f64 {
    let (x, y) = (indicator(a, vocab), indicator(b, vocab));
    let (nx, ny) = (dot(&x, &x), dot(&y, &y));
    if nx == 0.0 || ny == 0.0 {
        return 0.0;
    }
    dot(&x, &y) / (nx.sqrt() * ny.sqrt())
}

/// Jaccard by counting labels in a merged sorted list.
pub fn oracle_jaccard(a: &TopicSet, b: &TopicSet) -> f64 {
    let mut all: Vec<&str> = a.iter().chain(b.iter()).collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    let union = all.len();
    let inter = total - union;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

pub fn oracle_dice(a: &TopicSet, b: &TopicSet, vocab: &[String]) -> f64 {
    let (x, y) = (indicator(a, vocab), indicator(b, vocab));
    let denom = dot(&x, &x) + dot(&y, &y);
    if denom == 0.0 {
        0.0
    } else {
        2.0 * dot(&x, &y) / denom
    }
}

/// Full-matrix edit distance.
pub fn oracle_levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

pub fn random_string(rng: &mut StdRng, max_len: usize, alphabet: &[char]) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect()
}
