//! Scoring predicted diffuser sets against observed labels.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gated::{run_gated, Algorithm, DiffuserSet, SimilarityGate};
use crate::graph::{SocialGraph, UserId};
use crate::profile::Profiles;
use crate::sim::DiffusionTrace;
use crate::similarity::GateMetric;

/// Confusion counts over every labeled user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalReport {
    pub true_pos: usize,
    pub true_neg: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub accuracy: f64,
    pub error: f64,
}

impl EvalReport {
    fn from_counts(tp: usize, tn: usize, fp: usize, fn_: usize) -> Result<Self> {
        let total = tp + tn + fp + fn_;
        if total == 0 {
            return Err(Error::EmptyEvaluation);
        }
        let accuracy = (tp + tn) as f64 / total as f64;
        Ok(Self {
            true_pos: tp,
            true_neg: tn,
            false_pos: fp,
            false_neg: fn_,
            accuracy,
            error: 1.0 - accuracy,
        })
    }

    pub fn total(&self) -> usize {
        self.true_pos + self.true_neg + self.false_pos + self.false_neg
    }
}

/// Compares `predicted` with each profile's observed label.
///
/// Predicted users without a profile are not counted.
pub fn evaluate(predicted: &BTreeSet<UserId>, profiles: &Profiles) -> Result<EvalReport> {
    let (mut tp, mut tn, mut fp, mut fn_) = (0, 0, 0, 0);
    for p in profiles.iter() {
        match (predicted.contains(&p.id), p.observed_diffuser) {
            (true, true) => tp += 1,
            (false, false) => tn += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
        }
    }
    EvalReport::from_counts(tp, tn, fp, fn_)
}

/// One row of a metric sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub metric: GateMetric,
    pub threshold: f64,
    pub report: EvalReport,
    pub predicted: DiffuserSet,
}

/// Runs `algorithm` once per metric and evaluates each result.
///
/// Rows come back by accuracy, best first; ties go to the metric name.
pub fn metric_sweep(
    g: &SocialGraph,
    profiles: &Profiles,
    algorithm: Algorithm<'_>,
    initials: &BTreeSet<UserId>,
    metrics: &[GateMetric],
    threshold: f64,
) -> Result<Vec<SweepRow>> {
    if metrics.is_empty() {
        return Err(Error::config("metric sweep needs at least one metric"));
    }
    let mut rows = metrics
        .iter()
        .map(|&metric| {
            let gate = SimilarityGate::new(metric, threshold)?;
            let out = run_gated(g, profiles, algorithm, initials, &gate)?;
            let report = evaluate(out.diffusers.members(), profiles)?;
            Ok(SweepRow {
                metric,
                threshold,
                report,
                predicted: out.diffusers,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        b.report
            .accuracy
            .total_cmp(&a.report.accuracy)
            .then_with(|| a.metric.name().cmp(b.metric.name()))
    });
    Ok(rows)
}

/// `(step, diffusers)` pairs of a trace.
pub fn diffusion_curve(trace: &DiffusionTrace) -> Vec<(u64, usize)> {
    trace
        .diffusers
        .iter()
        .enumerate()
        .map(|(t, &n)| (t as u64, n))
        .collect()
}

#[derive(Serialize)]
struct EvalJsonRow<'a> {
    metric: &'a str,
    threshold: f64,
    tp: usize,
    tn: usize,
    fp: usize,
    #[serde(rename = "fn")]
    fn_: usize,
    accuracy: f64,
    predicted_count: usize,
}

/// Writes sweep rows as the `eval.json` array, sorted by metric name.
pub fn write_eval_json<W: Write>(rows: &[SweepRow], w: W) -> std::io::Result<()> {
    let mut out: Vec<EvalJsonRow<'_>> = rows
        .iter()
        .map(|r| EvalJsonRow {
            metric: r.metric.name(),
            threshold: r.threshold,
            tp: r.report.true_pos,
            tn: r.report.true_neg,
            fp: r.report.false_pos,
            fn_: r.report.false_neg,
            accuracy: r.report.accuracy,
            predicted_count: r.predicted.len(),
        })
        .collect();
    out.sort_by(|a, b| a.metric.cmp(b.metric));
    let mut w = std::io::BufWriter::new(w);
    serde_json::to_writer_pretty(&mut w, &out)?;
    writeln!(w)?;
    w.flush()
}
