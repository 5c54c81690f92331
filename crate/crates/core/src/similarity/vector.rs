//! Term-vector representations and the vector-form measures.

use crate::error::{Error, Result};

use super::TopicSet;

/// Weights aligned to an ordered vocabulary.
///
/// Topic sets are embedded with binary weights: 1 if the label is present.
#[derive(Debug, Clone, PartialEq)]
pub struct TermVector {
    vocabulary: Vec<String>,
    weights: Vec<f64>,
}

impl TermVector {
    pub fn new(vocabulary: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if vocabulary.len() != weights.len() {
            return Err(Error::config(format!(
                "term vector has {} labels but {} weights",
                vocabulary.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::config(format!("invalid term weight {w}")));
        }
        Ok(Self {
            vocabulary,
            weights,
        })
    }

    /// Binary embedding of `set` over `vocabulary`.
    pub fn binary(set: &TopicSet, vocabulary: &[String]) -> Self {
        let weights = vocabulary
            .iter()
            .map(|l| if set.contains(l) { 1.0 } else { 0.0 })
            .collect();
        Self {
            vocabulary: vocabulary.to_vec(),
            weights,
        }
    }

    /// Embeds both sets over their sorted union vocabulary.
    pub fn binary_pair(a: &TopicSet, b: &TopicSet) -> (Self, Self) {
        let mut vocab: Vec<String> = a.iter().chain(b.iter()).map(str::to_owned).collect();
        vocab.sort();
        vocab.dedup();
        (Self::binary(a, &vocab), Self::binary(b, &vocab))
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `x·y / (‖x‖‖y‖)`, or 0 when either vector is zero.
pub fn cosine_weights(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "vectors must share a vocabulary");
    let xx = dot(x, x);
    let yy = dot(y, y);
    if xx == 0.0 || yy == 0.0 {
        return 0.0;
    }
    dot(x, y) / (xx * yy).sqrt()
}

/// Tanimoto form `x·y / (‖x‖² + ‖y‖² − x·y)`; equals set Jaccard on binary vectors.
pub fn tanimoto_weights(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "vectors must share a vocabulary");
    let xy = dot(x, y);
    let denom = dot(x, x) + dot(y, y) - xy;
    if denom == 0.0 {
        0.0
    } else {
        xy / denom
    }
}

/// Cosine of the mean-centered vectors, in `[-1, 1]`.
///
/// Constant vectors (including any of length below 2) have no defined
/// correlation and are rejected rather than scored.
pub fn correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::config(format!(
            "correlation of vectors with lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two components"));
    }
    if is_constant(x) || is_constant(y) {
        return Err(Error::UndefinedCorrelation("zero variance"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|w| *w == v[0])
}

/// Pearson correlation of two term vectors over the same vocabulary.
pub fn pearson(a: &TermVector, b: &TermVector) -> Result<f64> {
    if a.vocabulary != b.vocabulary {
        return Err(Error::config(
            "pearson: term vectors use different vocabularies",
        ));
    }
    correlation(&a.weights, &b.weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(w: &[f64]) -> TermVector {
        let vocab = (0..w.len()).map(|i| format!("t{i}")).collect();
        TermVector::new(vocab, w.to_vec()).unwrap()
    }

    #[test]
    fn pearson_self_is_one() {
        let v = tv(&[1.0, 4.0, 2.0, 0.5]);
        assert!((pearson(&v, &v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_reversed_is_minus_one() {
        // centered: (-1, 0, 1) and (1, 0, -1); dot -2, norms² 2 and 2 -> -2/2
        let r = pearson(&tv(&[1.0, 2.0, 3.0]), &tv(&[3.0, 2.0, 1.0])).unwrap();
        assert!((r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_constant_is_error() {
        let e = pearson(&tv(&[1.0, 1.0, 1.0]), &tv(&[1.0, 2.0, 3.0])).unwrap_err();
        assert!(matches!(e, Error::UndefinedCorrelation(_)));
        let e = pearson(&tv(&[1.0, 2.0, 3.0]), &tv(&[1.0, 1.0, 1.0])).unwrap_err();
        assert!(matches!(e, Error::UndefinedCorrelation(_)));
    }

    #[test]
    fn pearson_rejects_mismatched_vocabulary() {
        let a = TermVector::new(vec!["a".into(), "b".into()], vec![0.0, 1.0]).unwrap();
        let b = TermVector::new(vec!["a".into(), "c".into()], vec![0.0, 1.0]).unwrap();
        assert!(matches!(pearson(&a, &b), Err(Error::Config(_))));
    }

    #[test]
    fn term_vector_rejects_bad_weights() {
        assert!(TermVector::new(vec!["a".into()], vec![-1.0]).is_err());
        assert!(TermVector::new(vec!["a".into()], vec![]).is_err());
    }

    #[test]
    fn binary_pair_uses_union_vocabulary() {
        let a = TopicSet::from_labels(["b", "a"]);
        let b = TopicSet::from_labels(["c", "b"]);
        let (va, vb) = TermVector::binary_pair(&a, &b);
        assert_eq!(va.vocabulary(), ["a", "b", "c"]);
        assert_eq!(va.weights(), [1.0, 1.0, 0.0]);
        assert_eq!(vb.weights(), [0.0, 1.0, 1.0]);
    }
}
