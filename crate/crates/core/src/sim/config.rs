//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Paths are resolved
//! against the directory holding the config file. Unknown keys are rejected
//! so a typo cannot silently fall back to a default.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gated::SimilarityGate;
use crate::graph::UserId;
use crate::io_util;
use crate::models::{SirParams, TippingParams};
use crate::similarity::{GateMetric, MetricKind};

pub const DEFAULT_MAX_TIME: u64 = 1296;
pub const DEFAULT_TRIALS: u32 = 2;

const KEYS: &[&str] = &[
    "max_time",
    "trials",
    "seed",
    "model",
    "metric",
    "metrics",
    "threshold",
    "evaluation_policy",
    "beta",
    "gamma",
    "theta",
    "ic_default_p",
    "initials",
    "edges_path",
    "users_path",
    "rumor_path",
    "decisions_path",
    "output_dir",
];

const PATH_KEYS: &[&str] = &[
    "edges_path",
    "users_path",
    "rumor_path",
    "decisions_path",
    "output_dir",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    GatedUserUser,
    GatedUserContent,
    Sir,
    Tipping,
    Ic,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::GatedUserUser => "gated-user-user",
            ModelKind::GatedUserContent => "gated-user-content",
            ModelKind::Sir => "sir",
            ModelKind::Tipping => "tipping",
            ModelKind::Ic => "ic",
        }
    }

    pub fn is_gated(self) -> bool {
        matches!(self, ModelKind::GatedUserUser | ModelKind::GatedUserContent)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(
            match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
                "gated-user-user" | "user-user" => ModelKind::GatedUserUser,
                "gated-user-content" | "user-content" => ModelKind::GatedUserContent,
                "sir" => ModelKind::Sir,
                "tipping" => ModelKind::Tipping,
                "ic" | "independent-cascade" => ModelKind::Ic,
                other => return Err(Error::config(format!("unknown model {other:?}"))),
            },
        )
    }
}

/// When a dormant agent checks its neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvaluationPolicy {
    /// Only at the step equal to its `created_at` (step 1 for agents created at 0).
    #[default]
    Once,
    /// At every step from its `created_at` (at least 1) on, until it becomes a diffuser.
    EveryStep,
}

impl FromStr for EvaluationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "once" => Ok(EvaluationPolicy::Once),
            "every-step" => Ok(EvaluationPolicy::EveryStep),
            other => Err(Error::config(format!(
                "unknown evaluation_policy {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub max_time: u64,
    pub trials: u32,
    pub master_seed: u64,
    pub model: ModelKind,
    pub gate: SimilarityGate,
    pub policy: EvaluationPolicy,
    pub sir: SirParams,
    pub tipping: TippingParams,
    pub ic_default_p: f64,
    pub initials: BTreeSet<UserId>,
}

impl SimulationConfig {
    /// Defaults for everything but the initial diffusers.
    pub fn new(initials: impl IntoIterator<Item = UserId>) -> Self {
        Self {
            max_time: DEFAULT_MAX_TIME,
            trials: DEFAULT_TRIALS,
            master_seed: 0,
            model: ModelKind::GatedUserUser,
            gate: SimilarityGate::new(MetricKind::Cosine, SimilarityGate::DEFAULT_THRESHOLD)
                .expect("default threshold is in range"),
            policy: EvaluationPolicy::Once,
            sir: SirParams::new(0.3, 0.1).expect("default SIR parameters are in range"),
            tipping: TippingParams::new(0.5).expect("default theta is in range"),
            ic_default_p: 0.1,
            initials: initials.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_time < 1 {
            return Err(Error::config("max_time must be at least 1"));
        }
        if self.trials < 1 {
            return Err(Error::config("trials must be at least 1"));
        }
        crate::models::check_probability("ic_default_p", self.ic_default_p)?;
        Ok(())
    }
}

/// Parsed config file: raw key/value pairs plus the directory paths resolve against.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
    base_dir: PathBuf,
}

impl ConfigFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = io_util::read_to_string(path)?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, base_dir)
    }

    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut cfg = ConfigFile {
            values: BTreeMap::new(),
            base_dir: base_dir.into(),
        };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::config(format!(
                    "line {}: expected `key = value`",
                    n + 1
                )));
            };
            let key = k.trim();
            if cfg.values.contains_key(key) {
                return Err(Error::config(format!(
                    "line {}: duplicate key {key:?}",
                    n + 1
                )));
            }
            cfg.set(key, v.trim())?;
        }
        Ok(cfg)
    }

    /// Sets or overrides a key. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::config(format!("unknown config key {key:?}")));
        }
        self.values.insert(key.to_owned(), value.to_owned());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::config(format!("invalid value for {key}: {v:?}")))
            })
            .transpose()
    }

    /// Directory relative paths resolve against.
    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|v| self.base_dir.join(v))
    }

    pub fn require_path(&self, key: &str) -> Result<PathBuf> {
        self.path(key)
            .ok_or_else(|| Error::config(format!("missing required key {key}")))
    }

    pub fn metric(&self) -> Result<GateMetric> {
        self.get("metric")
            .map_or(Ok(GateMetric::Kind(MetricKind::Cosine)), str::parse)
    }

    /// The `metrics` list, defaulting to cosine, Jaccard, Dice and their average.
    pub fn metrics(&self) -> Result<Vec<GateMetric>> {
        let Some(raw) = self.get("metrics") else {
            return Ok(GateMetric::STANDARD.to_vec());
        };
        let list = raw
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            return Err(Error::config("metrics must name at least one metric"));
        }
        Ok(list)
    }

    pub fn initials(&self) -> Result<BTreeSet<UserId>> {
        let raw = self
            .get("initials")
            .ok_or_else(|| Error::config("missing required key initials"))?;
        let ids = raw
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.parse::<UserId>()
                    .map_err(|_| Error::config(format!("invalid initial id {:?}", s.trim())))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        if ids.is_empty() {
            return Err(Error::config("initials must list at least one user id"));
        }
        Ok(ids)
    }

    pub fn simulation(&self) -> Result<SimulationConfig> {
        let mut cfg = SimulationConfig::new(self.initials()?);
        if let Some(v) = self.parsed("max_time")? {
            cfg.max_time = v;
        }
        if let Some(v) = self.parsed("trials")? {
            cfg.trials = v;
        }
        if let Some(v) = self.parsed("seed")? {
            cfg.master_seed = v;
        }
        if let Some(v) = self.get("model") {
            cfg.model = v.parse()?;
        }
        if let Some(v) = self.get("evaluation_policy") {
            cfg.policy = v.parse()?;
        }
        let threshold = self
            .parsed("threshold")?
            .unwrap_or(SimilarityGate::DEFAULT_THRESHOLD);
        cfg.gate = SimilarityGate::new(self.metric()?, threshold)?;
        let beta = self.parsed("beta")?.unwrap_or(cfg.sir.beta());
        let gamma = self.parsed("gamma")?.unwrap_or(cfg.sir.gamma());
        cfg.sir = SirParams::new(beta, gamma)?;
        if let Some(theta) = self.parsed("theta")? {
            cfg.tipping = TippingParams::new(theta)?;
        }
        if let Some(p) = self.parsed("ic_default_p")? {
            cfg.ic_default_p = p;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// All keys with path values resolved, for echoing into run summaries.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(k, v)| {
                let v = if PATH_KEYS.contains(&k.as_str()) {
                    let p = self.base_dir.join(v);
                    std::path::absolute(&p).unwrap_or(p).display().to_string()
                } else {
                    v.clone()
                };
                (k.clone(), v)
            })
            .collect()
    }

    /// Rebuilds a config from a [`resolved`](Self::resolved) echo.
    pub fn from_resolved(values: BTreeMap<String, String>) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (k, v) in values {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# comment
max_time = 10
trials = 3
seed = 42
model = sir
metric = dice
threshold = 0.25
evaluation_policy = every-step
beta = 0.2
gamma = 0.05
initials = 3, 1
edges_path = data/edges.csv
";

    #[test]
    fn parses_all_fields() {
        let f = ConfigFile::parse(SAMPLE, "/base").unwrap();
        let c = f.simulation().unwrap();
        assert_eq!(c.max_time, 10);
        assert_eq!(c.trials, 3);
        assert_eq!(c.master_seed, 42);
        assert_eq!(c.model, ModelKind::Sir);
        assert_eq!(c.gate.metric(), GateMetric::Kind(MetricKind::Dice));
        assert_eq!(c.gate.threshold(), 0.25);
        assert_eq!(c.policy, EvaluationPolicy::EveryStep);
        assert_eq!(c.sir.beta(), 0.2);
        assert_eq!(c.initials, [UserId(1), UserId(3)].into());
        assert_eq!(
            f.path("edges_path").unwrap(),
            Path::new("/base/data/edges.csv")
        );
    }

    #[test]
    fn defaults_follow_reference_setup() {
        let c = ConfigFile::parse("initials = 1", "")
            .unwrap()
            .simulation()
            .unwrap();
        assert_eq!(c.max_time, 1296);
        assert_eq!(c.trials, 2);
        assert_eq!(c.policy, EvaluationPolicy::Once);
        assert_eq!(c.gate.threshold(), 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ConfigFile::parse("colour = red", "").is_err());
        assert!(ConfigFile::parse("just text", "").is_err());
        assert!(ConfigFile::parse("seed = 1\nseed = 2", "").is_err());
        let f = ConfigFile::parse("initials = 1\nmax_time = 0", "").unwrap();
        assert!(f.simulation().is_err());
        let f = ConfigFile::parse("initials = 1\nthreshold = 2", "").unwrap();
        assert!(f.simulation().is_err());
        let f = ConfigFile::parse("max_time = 3", "").unwrap();
        assert!(f.simulation().is_err());
        let f = ConfigFile::parse("initials = 1\nbeta = lots", "").unwrap();
        assert!(f.simulation().is_err());
    }

    #[test]
    fn metrics_list() {
        let f = ConfigFile::parse("metrics = cosine, average", "").unwrap();
        assert_eq!(
            f.metrics().unwrap(),
            vec![GateMetric::Kind(MetricKind::Cosine), GateMetric::Average]
        );
        assert_eq!(ConfigFile::default().metrics().unwrap().len(), 4);
    }

    #[test]
    fn overrides_replace_values() {
        let mut f = ConfigFile::parse("initials = 1\nseed = 1", "").unwrap();
        f.set("seed", "9").unwrap();
        assert_eq!(f.simulation().unwrap().master_seed, 9);
        assert!(f.set("nope", "1").is_err());
    }
}
