/// Edit distance and the normalized similarity derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Levenshtein {
    pub distance: usize,
    /// `1 - distance / max(len)`; 1 for two empty strings.
    pub similarity: f64,
}

/// Unit-cost Levenshtein over Unicode scalar values.
///
/// Substituting a character for an identical one costs nothing. Runs in
/// `O(|s1|·|s2|)` time with two rows of working memory.
pub fn levenshtein(s1: &str, s2: &str) -> Levenshtein {
    let a: Vec<char> = s1.chars().collect();
    let b: Vec<char> = s2.chars().collect();
    let distance = edit_distance(&a, &b);
    let longest = a.len().max(b.len());
    let similarity = if longest == 0 {
        1.0
    } else {
        1.0 - distance as f64 / longest as f64
    };
    Levenshtein {
        distance,
        similarity,
    }
}

fn edit_distance(a: &[char], b: &[char]) -> usize {
    // keep the row along the shorter string
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
