//! Declarative experiments: build a codebook from a JSON config, estimate
//! every miss and false-identification rate, and attach the matching bound
//! curves.
//!
//! Reports are deterministic given the config (seed included): CSV output is
//! byte-identical across reruns and worker counts. Only the JSON metadata
//! block carries wall-clock time.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bounds::{self, BoundCurve, BoundLabel};
use crate::channel::{ChannelParams, RngSeed};
use crate::codebook::{
    build_multi_layer, build_rate_reliability, build_single_layer, build_universal, paper_threshold, Codebook,
    PowerAudit,
};
use crate::error::Error;
use crate::montecarlo::{self, PairKind, SimulationMode, TrialReport};

mod report;
mod tables;

pub use report::{write_csv, CSV_COLUMNS};
pub use tables::{bounds_table, sweep_table, BoundsGrid, SweepGrid, BOUNDS_COLUMNS, SWEEP_COLUMNS};

/// Environment variable consulted when neither the config nor the command
/// line provides a seed.
pub const SEED_ENV: &str = "DI_GAUSS_SEED";

/// Paper-mode rows whose exact error is below this are reported without
/// simulation.
pub const ANALYTIC_ONLY_BELOW: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("runtime failure: {0}")]
    Runtime(String),
}

impl ExperimentError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::Runtime(_) => 1,
        }
    }
}

impl From<Error> for ExperimentError {
    fn from(e: Error) -> Self {
        // builder and estimator errors are violated preconditions of the config
        ExperimentError::Config(e.to_string())
    }
}

impl From<std::io::Error> for ExperimentError {
    fn from(e: std::io::Error) -> Self {
        ExperimentError::Runtime(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Single,
    Multi,
    Universal,
    Rr,
}

impl KindName {
    pub fn as_str(&self) -> &'static str {
        match self {
            KindName::Single => "single",
            KindName::Multi => "multi",
            KindName::Universal => "universal",
            KindName::Rr => "rr",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ThresholdMode {
    /// `t = log2 n`.
    PaperLog2,
    Fixed { value: f64 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    /// File stem for report outputs; defaults to the experiment name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub kind: KindName,
    pub n: usize,
    #[serde(rename = "L", default = "one")]
    pub layers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    pub sigma: f64,
    #[serde(rename = "P")]
    pub power: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<ThresholdMode>,
    pub k_per_layer: Vec<usize>,
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub mode: SimulationMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepGrid>,
    #[serde(default)]
    pub output: OutputPaths,
}

fn default_name() -> String {
    "experiment".to_string()
}

fn one() -> usize {
    1
}

fn config_err(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_value(value: Value) -> Result<Self, ExperimentError> {
        let cfg: Self = serde_json::from_value(value).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(s: &str) -> Result<Self, ExperimentError> {
        let value: Value = serde_json::from_str(s).map_err(|e| config_err(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n == 0 {
            return Err(config_err("n must be at least 1"));
        }
        if self.trials == 0 {
            return Err(config_err("trials must be at least 1"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(config_err(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.power > 0.0 && self.power.is_finite()) {
            return Err(config_err(format!("P must be positive, got {}", self.power)));
        }
        if self.layers == 0 {
            return Err(config_err("L must be at least 1"));
        }
        if self.k_per_layer.len() != self.layers {
            return Err(config_err(format!(
                "k_per_layer has {} entries but L = {}",
                self.k_per_layer.len(),
                self.layers
            )));
        }
        match self.kind {
            KindName::Single if self.layers != 1 => return Err(config_err("kind single needs L = 1")),
            KindName::Multi if self.c.is_none() => return Err(config_err("kind multi needs c")),
            KindName::Universal if self.b.is_none() => return Err(config_err("kind universal needs b")),
            KindName::Rr if self.exponent.is_none() => return Err(config_err("kind rr needs E")),
            _ => {}
        }
        if self.kind != KindName::Rr && self.threshold.is_none() {
            return Err(config_err(format!("kind {} needs a threshold", self.kind.as_str())));
        }
        if let Some(ThresholdMode::Fixed { value }) = self.threshold {
            if !(value > 0.0 && value.is_finite()) {
                return Err(config_err(format!("threshold value must be positive, got {value}")));
            }
        }
        Ok(())
    }

    /// Threshold parameter handed to the builder: `t` for single and multi,
    /// `t_abs` for universal, `x = √(2nE)` for rate–reliability.
    pub fn threshold_parameter(&self) -> f64 {
        match (self.kind, self.threshold) {
            (KindName::Rr, _) => (2.0 * self.n as f64 * self.exponent.unwrap_or(0.0)).sqrt(),
            (_, Some(ThresholdMode::Fixed { value })) => value,
            (_, Some(ThresholdMode::PaperLog2)) | (_, None) => paper_threshold(self.n),
        }
    }

    /// Decoder threshold in units of σ, the argument of the error law
    /// `2Φ(-t)`.
    pub fn normalized_threshold(&self) -> f64 {
        match self.kind {
            KindName::Universal => self.threshold_parameter() / self.sigma,
            _ => self.threshold_parameter(),
        }
    }

    pub fn paper_mode(&self) -> bool {
        matches!(self.threshold, Some(ThresholdMode::PaperLog2))
    }

    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn stem(&self) -> String {
        self.output.stem.clone().unwrap_or_else(|| self.name.clone())
    }

    /// SHA-256 of the canonical JSON form of the config.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn channel(&self) -> Result<ChannelParams, ExperimentError> {
        Ok(ChannelParams::new(self.n, self.sigma, self.power)?)
    }
}

/// Applies a `key=value` override to a JSON config document. Dotted keys
/// address nested objects; values are parsed as JSON and fall back to
/// strings.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<(), ExperimentError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| config_err(format!("override `{assignment}` is not of the form key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut target = doc;
    let parts: Vec<&str> = key.split('.').collect();
    for part in &parts[..parts.len() - 1] {
        if !target.is_object() {
            *target = Value::Object(Default::default());
        }
        target = target
            .as_object_mut()
            .expect("object")
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    if !target.is_object() {
        *target = Value::Object(Default::default());
    }
    target
        .as_object_mut()
        .expect("object")
        .insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

/// Loads a config file (or an empty document), applies overrides and
/// resolves the seed: command line, then config, then [`SEED_ENV`], then 0.
pub fn load_config(
    path: Option<&Path>,
    overrides: &[String],
    seed: Option<u64>,
) -> Result<ExperimentConfig, ExperimentError> {
    let mut doc = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| config_err(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", p.display())))?
        }
        None => Value::Object(Default::default()),
    };
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    let mut cfg = ExperimentConfig::from_value(doc)?;
    if let Some(s) = seed {
        cfg.seed = Some(s);
    }
    if cfg.seed.is_none() {
        if let Ok(s) = std::env::var(SEED_ENV) {
            let s = s
                .trim()
                .parse()
                .map_err(|_| config_err(format!("{SEED_ENV} must be an unsigned integer, got `{s}`")))?;
            cfg.seed = Some(s);
        }
    }
    cfg.seed = Some(cfg.seed_or_default());
    Ok(cfg)
}

/// Builds the codebook the config describes from stream 0 of its seed.
pub fn build_codebook(cfg: &ExperimentConfig) -> Result<Codebook, ExperimentError> {
    cfg.validate()?;
    let seed = RngSeed::new(cfg.seed_or_default(), 0);
    let mut rng = seed.rng();
    let t = cfg.threshold_parameter();
    let mut code = match cfg.kind {
        KindName::Single => build_single_layer(cfg.channel()?, t, cfg.k_per_layer[0], &mut rng)?,
        KindName::Multi => build_multi_layer(
            cfg.channel()?,
            cfg.layers,
            cfg.c.expect("validated"),
            t,
            &cfg.k_per_layer,
            &mut rng,
        )?,
        KindName::Universal => build_universal(
            cfg.n,
            cfg.layers,
            cfg.b.expect("validated"),
            t,
            &cfg.k_per_layer,
            &mut rng,
        )?,
        KindName::Rr => build_rate_reliability(
            cfg.channel()?,
            cfg.layers,
            cfg.exponent.expect("validated"),
            &cfg.k_per_layer,
            &mut rng,
        )?,
    };
    code.seed = Some(seed);
    Ok(code)
}

/// Reference curves matching the config's construction.
pub fn bound_curves(cfg: &ExperimentConfig) -> Vec<BoundCurve> {
    let n = cfg.n as f64;
    let l = cfg.layers as f64;
    let t = cfg.threshold_parameter();
    let mut out = Vec::new();
    match cfg.kind {
        KindName::Single => {
            if let Ok(v) = bounds::rate_lower_single(n) {
                out.push(BoundCurve::new("rate_lower_single", &[("n", n)], v, BoundLabel::AsymptoticReference));
            }
        }
        KindName::Multi => {
            let c = cfg.c.unwrap_or(0.0);
            if let Ok(v) = bounds::rate_lower_finite(n, cfg.layers, c, cfg.sigma, t) {
                out.push(BoundCurve::new(
                    "rate_lower_finite",
                    &[("n", n), ("L", l), ("c", c), ("sigma", cfg.sigma), ("t", t)],
                    v,
                    BoundLabel::Exact,
                ));
            }
        }
        KindName::Universal => {
            let b = cfg.b.unwrap_or(0.0);
            if let Ok(v) = bounds::rate_lower_universal(n, cfg.layers, b, t) {
                out.push(BoundCurve::new(
                    "rate_lower_universal",
                    &[("n", n), ("L", l), ("b", b), ("t_abs", t)],
                    v,
                    BoundLabel::Exact,
                ));
            }
        }
        KindName::Rr => {
            let e = cfg.exponent.unwrap_or(0.0);
            let inputs = [("E", e), ("P", cfg.power), ("sigma", cfg.sigma), ("L", l)];
            if let Ok(v) = bounds::rr_lower(e, cfg.power, cfg.sigma, cfg.layers) {
                out.push(BoundCurve::new("rr_lower", &inputs, v, BoundLabel::AsymptoticReference));
            }
            if let Ok(v) = bounds::rr_upper(e, cfg.power, cfg.sigma) {
                out.push(BoundCurve::new("rr_upper", &inputs[..3], v, BoundLabel::AsymptoticReference));
            }
        }
    }
    out.push(bounds::capacity_curve());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Simulated,
    /// Exact value below [`ANALYTIC_ONLY_BELOW`] in paper mode; not simulated.
    AnalyticOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub config_hash: String,
    pub kind: PairKind,
    pub tested: usize,
    pub sent: usize,
    pub status: RowStatus,
    pub analytic: f64,
    pub bound: Option<f64>,
    pub trial: Option<TrialReport>,
}

/// Summary of the built codebook.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodebookDigest {
    pub kind: String,
    pub n: usize,
    pub radii: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub min_projected_distance: f64,
    pub layer_counts: Vec<usize>,
    pub words: usize,
    pub sampled: bool,
    pub saturated_groups: usize,
    pub degenerate: bool,
    pub power: PowerAudit,
    pub empirical_rate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub version: String,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub codebook: CodebookDigest,
    pub rows: Vec<ReportRow>,
    pub lambda1_hat: f64,
    pub lambda2_hat: f64,
    pub bounds: Vec<BoundCurve>,
    pub meta: RunMetadata,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        write_csv(self, &mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn rows_of(&self, kind: PairKind) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }
}

fn digest(code: &Codebook, cfg: &ExperimentConfig) -> CodebookDigest {
    let counts = code.layer_counts();
    CodebookDigest {
        kind: code.kind.name().to_string(),
        n: code.n,
        radii: code.radii(),
        thresholds: code.layers.iter().map(|l| l.threshold).collect(),
        min_projected_distance: code.layers[0].min_projected_distance,
        empirical_rate: montecarlo::empirical_rate(&counts, code.n).ok(),
        layer_counts: counts,
        words: code.len(),
        sampled: code.sampled,
        saturated_groups: code.saturated_groups,
        degenerate: code.degenerate,
        power: code.power_audit(cfg.power),
    }
}

/// Runs the experiment on the current rayon pool.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let code = build_codebook(cfg)?;
    let config_hash = cfg.hash();
    let base = RngSeed::new(cfg.seed_or_default(), 1);
    let words = code.len();
    let sigma = cfg.sigma;
    let paper = cfg.paper_mode();

    let mut jobs: Vec<(PairKind, usize, usize)> = (0..words).map(|w| (PairKind::SameWord, w, w)).collect();
    let mut pairs = Vec::new();
    for tested in 0..words {
        for sent in 0..words {
            if tested != sent {
                let layer = code.first_difference(tested, sent)?.expect("distinct words differ");
                pairs.push((layer, tested, sent));
            }
        }
    }
    pairs.sort();
    jobs.extend(pairs.into_iter().map(|(l, t, s)| (PairKind::DifferAtLayer(l), t, s)));

    let mut rows = Vec::with_capacity(jobs.len());
    for (kind, tested, sent) in jobs {
        let (analytic, bound) = if kind == PairKind::SameWord {
            (
                montecarlo::miss_oracle(&code, tested, sigma)?,
                montecarlo::miss_union_bound(&code, sigma),
            )
        } else {
            (
                montecarlo::false_oracle(&code, tested, sent, sigma)?,
                montecarlo::false_bound(&code, tested, sent, sigma)?,
            )
        };
        let seed = montecarlo::pair_seed(base, words, tested, sent);
        let (status, trial) = if paper && analytic < ANALYTIC_ONLY_BELOW {
            (RowStatus::AnalyticOnly, None)
        } else {
            let t = if kind == PairKind::SameWord {
                montecarlo::estimate_miss(&code, tested, sigma, cfg.trials, seed, cfg.mode)?
            } else {
                montecarlo::estimate_false(&code, tested, sent, sigma, cfg.trials, seed, cfg.mode)?
            };
            (RowStatus::Simulated, Some(t))
        };
        rows.push(ReportRow {
            config_hash: config_hash.clone(),
            kind,
            tested,
            sent,
            status,
            analytic,
            bound: Some(bound),
            trial,
        });
    }

    let worst = |same: bool| {
        rows.iter()
            .filter(|r| (r.kind == PairKind::SameWord) == same)
            .map(|r| r.trial.as_ref().map_or(r.analytic, |t| t.estimate))
            .fold(0.0, f64::max)
    };
    let lambda1_hat = worst(true);
    let lambda2_hat = worst(false);

    Ok(ExperimentReport {
        config: cfg.clone(),
        config_hash,
        codebook: digest(&code, cfg),
        rows,
        lambda1_hat,
        lambda2_hat,
        bounds: bound_curves(cfg),
        meta: RunMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// Runs `f` on a dedicated pool of `workers` threads (`None`: rayon default).
pub fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, ExperimentError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(config_err("--workers must be at least 1")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| ExperimentError::Runtime(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
