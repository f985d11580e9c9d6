use std::io::Write;

use serde::{Deserialize, Serialize};

use super::report::real;
use super::{config_err, ExperimentConfig, ExperimentError, KindName};
use crate::bounds;
use crate::channel::phi;
use crate::error::Error;

/// Grid for `bounds` tables. Empty lists fall back to the config's own
/// value.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsGrid {
    #[serde(default)]
    pub n: Vec<f64>,
    #[serde(rename = "L", default)]
    pub layers: Vec<usize>,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(rename = "E", default)]
    pub exponent: Vec<f64>,
}

/// Exponent grid for the rate–reliability sweep: explicit `values`, or
/// `points` geometrically spaced values in `[min, max]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    #[serde(default)]
    pub values: Vec<f64>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default)]
    pub points: Option<usize>,
}

impl SweepGrid {
    pub fn geometric(min: f64, max: f64, points: usize) -> Self {
        Self {
            values: Vec::new(),
            min: Some(min),
            max: Some(max),
            points: Some(points),
        }
    }

    pub fn exponents(&self) -> Result<Vec<f64>, ExperimentError> {
        if !self.values.is_empty() {
            return Ok(self.values.clone());
        }
        match (self.min, self.max, self.points) {
            (Some(lo), Some(hi), Some(k)) if lo > 0.0 && hi >= lo && k >= 1 => {
                if k == 1 {
                    return Ok(vec![lo]);
                }
                let step = (hi / lo).ln() / (k - 1) as f64;
                Ok((0..k).map(|i| lo * (step * i as f64).exp()).collect())
            }
            _ => Err(config_err("sweep needs `values` or positive `min`, `max`, `points`")),
        }
    }
}

pub const BOUNDS_COLUMNS: [&str; 11] = ["curve", "n", "L", "c", "b", "E", "sigma", "P", "t", "value", "label"];

pub const SWEEP_COLUMNS: [&str; 10] = [
    "E",
    "L",
    "P",
    "sigma",
    "n",
    "rr_lower",
    "rr_upper",
    "gap",
    "analytic_miss",
    "analytic_exponent",
];

fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn or_config<T: Clone>(grid: &[T], fallback: T) -> Vec<T> {
    if grid.is_empty() {
        vec![fallback]
    } else {
        grid.to_vec()
    }
}

/// Curves of the config's construction over its bounds grid. Parameter
/// points where a bound is void are written with an empty value and label
/// `void`.
pub fn bounds_table<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<(), ExperimentError> {
    let grid = cfg.bounds.clone().unwrap_or_default();
    let runtime = |e: csv::Error| ExperimentError::Runtime(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BOUNDS_COLUMNS).map_err(runtime)?;

    let ns = or_config(&grid.n, cfg.n as f64);
    let ls = or_config(&grid.layers, cfg.layers);
    let bs = or_config(&grid.b, cfg.b.unwrap_or(0.0));
    let es = or_config(&grid.exponent, cfg.exponent.unwrap_or(0.0));
    let t_of = |n: f64| match cfg.threshold {
        Some(super::ThresholdMode::Fixed { value }) => value,
        _ => n.log2(),
    };

    let mut row = |name: &str,
                   n: Option<f64>,
                   l: Option<usize>,
                   c: Option<f64>,
                   b: Option<f64>,
                   e: Option<f64>,
                   t: Option<f64>,
                   value: Result<f64, Error>,
                   label: &str|
     -> Result<(), ExperimentError> {
        let (v, label) = match value {
            Ok(v) => (real(v), label.to_string()),
            Err(_) => (String::new(), "void".to_string()),
        };
        w.write_record([
            name.to_string(),
            opt(n),
            l.map(|l| l.to_string()).unwrap_or_default(),
            opt(c),
            opt(b),
            opt(e),
            real(cfg.sigma),
            real(cfg.power),
            opt(t),
            v,
            label,
        ])
        .map_err(runtime)
    };

    match cfg.kind {
        KindName::Single => {
            for &n in &ns {
                row("rate_lower_single", Some(n), Some(1), None, None, None, None, bounds::rate_lower_single(n), "asymptotic-reference")?;
            }
        }
        KindName::Multi => {
            let c = cfg.c.unwrap_or(0.0);
            for &n in &ns {
                for &l in &ls {
                    let t = t_of(n);
                    let v = bounds::rate_lower_finite(n, l, c, cfg.sigma, t);
                    row("rate_lower_finite", Some(n), Some(l), Some(c), None, None, Some(t), v, "exact")?;
                }
            }
        }
        KindName::Universal => {
            for &n in &ns {
                for &l in &ls {
                    for &b in &bs {
                        let t = t_of(n);
                        let v = bounds::rate_lower_universal(n, l, b, t);
                        row("rate_lower_universal", Some(n), Some(l), None, Some(b), None, Some(t), v, "exact")?;
                    }
                }
            }
        }
        KindName::Rr => {
            for &e in &es {
                for &l in &ls {
                    let v = bounds::rr_lower(e, cfg.power, cfg.sigma, l);
                    row("rr_lower", None, Some(l), None, None, Some(e), None, v, "asymptotic-reference")?;
                }
                let v = bounds::rr_upper(e, cfg.power, cfg.sigma);
                row("rr_upper", None, None, None, None, Some(e), None, v, "asymptotic-reference")?;
            }
        }
    }
    row("capacity", None, None, None, None, None, None, Ok(bounds::capacity()), "exact")?;
    w.flush()?;
    Ok(())
}

/// Rate–reliability tradeoff over the config's exponent grid. Alongside the
/// two reference curves, each row carries the exact miss probability of the
/// `L`-layer code at the config's `n`, `1 - (1 - 2Φ(-√(2nE)))^L`, and its
/// exponent `-log2(p)/n`.
pub fn sweep_table<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<(), ExperimentError> {
    if cfg.kind != KindName::Rr {
        return Err(config_err(format!("sweep needs kind rr, got {}", cfg.kind.as_str())));
    }
    let grid = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| config_err("sweep needs a `sweep` grid"))?;
    let runtime = |e: csv::Error| ExperimentError::Runtime(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS).map_err(runtime)?;
    let n = cfg.n as f64;
    let l = cfg.layers;
    for e in grid.exponents()? {
        let lower = bounds::rr_lower(e, cfg.power, cfg.sigma, l)?;
        let upper = bounds::rr_upper(e, cfg.power, cfg.sigma)?;
        let x = (2.0 * n * e).sqrt();
        let miss = 1.0 - (1.0 - 2.0 * phi(-x)).powi(l as i32);
        let exponent = if miss > 0.0 { -miss.log2() / n } else { f64::INFINITY };
        w.write_record([
            real(e),
            l.to_string(),
            real(cfg.power),
            real(cfg.sigma),
            cfg.n.to_string(),
            real(lower),
            real(upper),
            real(upper - lower),
            real(miss),
            real(exponent),
        ])
        .map_err(runtime)?;
    }
    w.flush()?;
    Ok(())
}
