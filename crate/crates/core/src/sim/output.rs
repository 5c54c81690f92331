//! Trace, curve and DOT frame files.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{SocialGraph, UserId};
use crate::io_util;

use super::engine::{AgentState, DiffusionTrace};

pub const TRACE_HEADER: [&str; 4] = ["trial", "step", "user_id", "new_state"];

/// Writes `trace.csv`: one row per state change, trials in order.
pub fn write_trace_csv<'a, W: Write>(
    traces: impl IntoIterator<Item = &'a DiffusionTrace>,
    w: W,
) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::new(w);
    writeln!(w, "{}", TRACE_HEADER.join(","))?;
    for tr in traces {
        for (t, changes) in tr.steps.iter().enumerate() {
            for (u, s) in changes {
                writeln!(w, "{},{t},{u},{s}", tr.trial)?;
            }
        }
    }
    w.flush()
}

/// One `trace.csv` row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub trial: u32,
    pub step: u64,
    pub user_id: UserId,
    pub new_state: AgentState,
}

pub fn read_trace_csv(path: impl AsRef<Path>) -> Result<Vec<TraceRow>> {
    let path = path.as_ref();
    let mut reader = io_util::csv_reader(path, &TRACE_HEADER)?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| io_util::csv_error(path, e))?;
        let line = io_util::line_of(&record);
        let bad = |what: &str| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("invalid {what}"),
        };
        rows.push(TraceRow {
            trial: record[0].trim().parse().map_err(|_| bad("trial"))?,
            step: record[1].trim().parse().map_err(|_| bad("step"))?,
            user_id: record[2].parse().map_err(|_| bad("user_id"))?,
            new_state: record[3].trim().parse().map_err(|_| bad("new_state"))?,
        });
    }
    Ok(rows)
}

/// Writes `curve.csv` (`step,diffusers`) from any per-step series.
pub fn write_curve_csv<T: std::fmt::Display, W: Write>(series: &[T], w: W) -> std::io::Result<()> {
    let mut w = std::io::BufWriter::new(w);
    writeln!(w, "step,diffusers")?;
    for (t, v) in series.iter().enumerate() {
        writeln!(w, "{t},{v}")?;
    }
    w.flush()
}

fn color(s: AgentState) -> &'static str {
    if s.is_diffuser() {
        "red"
    } else {
        "blue"
    }
}

/// Writes `frame_NNNN.dot` for every step plus `curve.csv` into `out_dir`.
///
/// Diffusers are drawn red and everyone else blue. Returns the frame paths.
pub fn export_frames(
    trace: &DiffusionTrace,
    g: &SocialGraph,
    out_dir: impl AsRef<Path>,
) -> Result<Vec<PathBuf>> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut states = trace.states_at(0);
    let mut frames = Vec::with_capacity(trace.steps.len());
    for (t, changes) in trace.steps.iter().enumerate() {
        if t > 0 {
            states.extend(changes.iter().copied());
        }
        let path = out_dir.join(format!("frame_{t:04}.dot"));
        let file = io_util::create_file(&path)?;
        write_dot(&mut std::io::BufWriter::new(file), t, &states, g)
            .map_err(|e| Error::io(&path, e))?;
        frames.push(path);
    }
    let curve = out_dir.join("curve.csv");
    write_curve_csv(&trace.diffusers, io_util::create_file(&curve)?)
        .map_err(|e| Error::io(&curve, e))?;
    Ok(frames)
}

fn write_dot<W: Write>(
    w: &mut W,
    step: usize,
    states: &std::collections::BTreeMap<UserId, AgentState>,
    g: &SocialGraph,
) -> std::io::Result<()> {
    writeln!(w, "digraph frame_{step:04} {{")?;
    writeln!(w, "  node [style=filled, fontcolor=white];")?;
    for (u, s) in states {
        writeln!(
            w,
            "  \"{u}\" [color={}, fillcolor={}, state={s}];",
            color(*s),
            color(*s)
        )?;
    }
    for (a, b) in g.edges() {
        writeln!(w, "  \"{a}\" -> \"{b}\";")?;
    }
    writeln!(w, "}}")?;
    w.flush()
}
