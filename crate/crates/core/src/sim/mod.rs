//! Time-stepped agent simulation over the social graph.

mod config;
mod engine;
mod output;

pub use config::{
    ConfigFile, EvaluationPolicy, ModelKind, SimulationConfig, DEFAULT_MAX_TIME, DEFAULT_TRIALS,
};
pub use engine::{
    run_simulation, run_trial, run_trials, AgentState, DiffusionTrace, StepChanges, TrialSet,
};
pub use output::{
    export_frames, read_trace_csv, write_curve_csv, write_trace_csv, TraceRow, TRACE_HEADER,
};
