//! Command-line entry point.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{metric_sweep, write_eval_json};
use crate::gated::{load_decisions, Algorithm};
use crate::graph::{load_edges, SocialGraph, UserId};
use crate::io_util;
use crate::profile::{load_rumor, load_users, validate, Profiles, RumorContent};
use crate::sim::{
    export_frames, read_trace_csv, run_trials, write_curve_csv, write_trace_csv, AgentState,
    ConfigFile, DiffusionTrace, ModelKind,
};
use crate::similarity::{write_sims, SimilarityTable};

pub const USAGE: &str = "\
usage: rumorsim <command> [args] [--key value ...]

commands:
  simulate <config>                 run all trials; writes trace.csv, curve.csv, summary.json
  evaluate <config>                 sweep gate metrics against observed labels; writes eval.json
  similarity <config>               precompute edge similarities; writes sims.csv
  export <trace> <out_dir> [config] write one DOT frame per step plus curve.csv
  validate <config>                 report dataset gaps as JSON

Any config key may be overridden with `--key value`.";

/// Runs the CLI on `argv` (without the program name) and returns the exit code.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let mut stdout = std::io::stdout().lock();
    match dispatch(&args, &mut stdout) {
        Ok(()) => 0,
        Err(Usage(msg)) => {
            if let Some(msg) = msg {
                eprintln!("error: {msg}");
            }
            eprintln!("{USAGE}");
            1
        }
        Err(Failed(e)) => {
            eprintln!("error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

enum CliError {
    Usage(Option<String>),
    Failed(Error),
}

use CliError::{Failed, Usage};

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Failed(e)
    }
}

struct Args {
    positional: Vec<String>,
    overrides: Vec<(String, String)>,
}

fn split_args(args: &[String]) -> std::result::Result<Args, CliError> {
    let mut positional = Vec::new();
    let mut overrides = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if let Some(key) = a.strip_prefix("--") {
            if key == "help" {
                return Err(Usage(None));
            }
            let (key, value) = match key.split_once('=') {
                Some((k, v)) => (k.to_owned(), v.to_owned()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| Usage(Some(format!("missing value for --{key}"))))?;
                    (key.to_owned(), v.clone())
                }
            };
            overrides.push((key.replace('-', "_"), value));
        } else {
            positional.push(a.clone());
        }
    }
    Ok(Args {
        positional,
        overrides,
    })
}

fn dispatch(args: &[String], out: &mut impl Write) -> std::result::Result<(), CliError> {
    let Some((cmd, rest)) = args.split_first() else {
        return Err(Usage(None));
    };
    let args = split_args(rest)?;
    let arity = |min: usize, max: usize| {
        let n = args.positional.len();
        if n < min || n > max {
            Err(Usage(Some(format!("wrong number of arguments for {cmd}"))))
        } else {
            Ok(())
        }
    };
    match cmd.as_str() {
        "simulate" => {
            arity(1, 1)?;
            simulate(&config(&args)?, out)?;
        }
        "evaluate" => {
            arity(1, 1)?;
            evaluate(&config(&args)?, out)?;
        }
        "similarity" => {
            arity(1, 1)?;
            similarity(&config(&args)?, out)?;
        }
        "export" => {
            arity(2, 3)?;
            let cfg = match args.positional.get(2) {
                Some(p) => Some(with_overrides(ConfigFile::load(p)?, &args.overrides)?),
                None => None,
            };
            export(
                Path::new(&args.positional[0]),
                Path::new(&args.positional[1]),
                cfg,
                out,
            )?;
        }
        "validate" => {
            arity(1, 1)?;
            validate_cmd(&config(&args)?, out)?;
        }
        "help" | "-h" => return Err(Usage(None)),
        other => return Err(Usage(Some(format!("unknown command {other:?}")))),
    }
    Ok(())
}

fn config(args: &Args) -> Result<ConfigFile> {
    with_overrides(ConfigFile::load(&args.positional[0])?, &args.overrides)
}

fn with_overrides(mut cfg: ConfigFile, overrides: &[(String, String)]) -> Result<ConfigFile> {
    for (k, v) in overrides {
        cfg.set(k, v)?;
    }
    Ok(cfg)
}

struct Dataset {
    graph: SocialGraph,
    profiles: Profiles,
    rumor: Option<RumorContent>,
}

/// Loads graph, profiles and optional rumor. Profiled users missing from
/// the edge list join the graph as isolated nodes.
fn load_dataset(cfg: &ConfigFile) -> Result<Dataset> {
    let mut graph = load_edges(cfg.require_path("edges_path")?)?.graph;
    let profiles = match cfg.path("users_path") {
        Some(p) => load_users(p)?,
        None => Profiles::new(),
    };
    for u in profiles.ids() {
        graph.add_node(u);
    }
    let rumor = cfg.path("rumor_path").map(load_rumor).transpose()?;
    Ok(Dataset {
        graph,
        profiles,
        rumor,
    })
}

fn output_dir(cfg: &ConfigFile) -> Result<PathBuf> {
    let dir = cfg
        .path("output_dir")
        .unwrap_or_else(|| cfg.base_dir().to_path_buf());
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    Ok(dir)
}

fn write_with<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(std::fs::File) -> std::io::Result<()>,
{
    f(io_util::create_file(path)?).map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct TrialSummary {
    trial: u32,
    final_diffusers: usize,
    final_states: BTreeMap<AgentState, usize>,
    changes: usize,
}

#[derive(Serialize)]
struct Summary {
    model: ModelKind,
    trials: u32,
    max_time: u64,
    seed: u64,
    nodes: usize,
    edges: usize,
    initials: Vec<UserId>,
    mean_final_diffusers: f64,
    per_trial: Vec<TrialSummary>,
    late_agents: Vec<UserId>,
    config: BTreeMap<String, String>,
    runtime_ms: u128,
}

fn simulate(cfg: &ConfigFile, out: &mut impl Write) -> Result<()> {
    let started = Instant::now();
    let sim = cfg.simulation()?;
    let data = load_dataset(cfg)?;
    let decisions = cfg.path("decisions_path").map(load_decisions).transpose()?;
    let set = run_trials(
        &sim,
        &data.graph,
        &data.profiles,
        data.rumor.as_ref(),
        decisions.as_ref(),
    )?;
    let dir = output_dir(cfg)?;

    let trace_path = dir.join("trace.csv");
    write_with(&trace_path, |f| write_trace_csv(&set.traces, f))?;
    let curve_path = dir.join("curve.csv");
    write_with(&curve_path, |f| write_curve_csv(&set.aggregate, f))?;

    let per_trial: Vec<TrialSummary> = set
        .traces
        .iter()
        .map(|tr| {
            let mut final_states = BTreeMap::new();
            for s in tr.final_states().into_values() {
                *final_states.entry(s).or_insert(0) += 1;
            }
            TrialSummary {
                trial: tr.trial,
                final_diffusers: tr.diffusers.last().copied().unwrap_or(0),
                final_states,
                changes: tr.change_count(),
            }
        })
        .collect();
    let summary = Summary {
        model: sim.model,
        trials: sim.trials,
        max_time: sim.max_time,
        seed: sim.master_seed,
        nodes: data.graph.node_count(),
        edges: data.graph.edge_count(),
        initials: sim.initials.iter().copied().collect(),
        mean_final_diffusers: set.aggregate.last().copied().unwrap_or(0.0),
        late_agents: set
            .traces
            .first()
            .map(|t| t.late_agents.clone())
            .unwrap_or_default(),
        per_trial,
        config: cfg.resolved(),
        runtime_ms: started.elapsed().as_millis(),
    };
    let summary_path = dir.join("summary.json");
    write_with(&summary_path, |f| {
        let mut w = std::io::BufWriter::new(f);
        serde_json::to_writer_pretty(&mut w, &summary)?;
        writeln!(w)?;
        w.flush()
    })?;
    for p in [trace_path, curve_path, summary_path] {
        report(out, &p)?;
    }
    Ok(())
}

fn evaluate(cfg: &ConfigFile, out: &mut impl Write) -> Result<()> {
    let sim = cfg.simulation()?;
    let data = load_dataset(cfg)?;
    let algorithm = match sim.model {
        ModelKind::GatedUserUser => Algorithm::UserUser,
        ModelKind::GatedUserContent => Algorithm::UserContent(
            data.rumor
                .as_ref()
                .ok_or_else(|| Error::config("gated-user-content needs rumor_path"))?,
        ),
        other => {
            return Err(Error::config(format!(
                "evaluate needs a gated model, got {}",
                other.name()
            )))
        }
    };
    let rows = metric_sweep(
        &data.graph,
        &data.profiles,
        algorithm,
        &sim.initials,
        &cfg.metrics()?,
        sim.gate.threshold(),
    )?;
    let path = output_dir(cfg)?.join("eval.json");
    write_with(&path, |f| write_eval_json(&rows, f))?;
    report(out, &path)
}

fn similarity(cfg: &ConfigFile, out: &mut impl Write) -> Result<()> {
    let data = load_dataset(cfg)?;
    let table = SimilarityTable::compute(&data.graph, &data.profiles);
    let path = output_dir(cfg)?.join("sims.csv");
    write_with(&path, |f| write_sims(&table, f))?;
    report(out, &path)
}

/// Exports trial 0 of `trace`. Without an explicit config the run's
/// `summary.json` next to the trace supplies it.
fn export(
    trace: &Path,
    out_dir: &Path,
    cfg: Option<ConfigFile>,
    out: &mut impl Write,
) -> Result<()> {
    let cfg = match cfg {
        Some(c) => c,
        None => {
            let summary = trace.with_file_name("summary.json");
            let text = io_util::read_to_string(&summary)?;
            #[derive(serde::Deserialize)]
            struct Echo {
                config: BTreeMap<String, String>,
            }
            let echo: Echo = serde_json::from_str(&text)
                .map_err(|e| Error::config(format!("{}: {e}", summary.display())))?;
            ConfigFile::from_resolved(echo.config)?
        }
    };
    let sim = cfg.simulation()?;
    let data = load_dataset(&cfg)?;
    let rows = read_trace_csv(trace)?;
    let trace = DiffusionTrace::from_changes(
        0,
        sim.max_time,
        AgentState::baseline(sim.model),
        data.graph.nodes().collect(),
        rows.iter()
            .filter(|r| r.trial == 0)
            .map(|r| (r.step, r.user_id, r.new_state)),
    )?;
    let frames = export_frames(&trace, &data.graph, out_dir)?;
    writeln!(
        out,
        "wrote {} frames to {}",
        frames.len(),
        out_dir.display()
    )
    .map_err(|e| Error::io("<stdout>", e))
}

fn validate_cmd(cfg: &ConfigFile, out: &mut impl Write) -> Result<()> {
    let data = load_dataset(cfg)?;
    let report = validate(&data.graph, &data.profiles);
    let text = serde_json::to_string_pretty(&report).map_err(|e| Error::config(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::io("<stdout>", e))
}

fn report(out: &mut impl Write, path: &Path) -> Result<()> {
    writeln!(out, "wrote {}", path.display()).map_err(|e| Error::io("<stdout>", e))
}
