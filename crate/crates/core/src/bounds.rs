//! Closed-form reference curves, in bits.
//!
//! The finite-n rate bounds are evaluated exactly from the per-layer packing
//! counts `((n+1-ℓ)/2)·log2(2r_ℓ/d)` without absorbing anything into big-O
//! terms. Block lengths are taken as `f64` so the curves can be evaluated far
//! beyond what any vector simulation reaches.

use serde::{Deserialize, Serialize};

use crate::codebook::max_exponent;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundLabel {
    Exact,
    AsymptoticReference,
}

/// A named bound value with its inputs echoed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    pub name: String,
    pub inputs: Vec<(String, f64)>,
    pub value: f64,
    pub label: BoundLabel,
    pub log_base: u32,
}

impl BoundCurve {
    pub fn new(name: &str, inputs: &[(&str, f64)], value: f64, label: BoundLabel) -> Self {
        Self {
            name: name.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value,
            label,
            log_base: 2,
        }
    }
}

fn domain(msg: String) -> Error {
    Error::DomainError(msg)
}

/// `¼ - ½·log2 log2 n / log2 n`, the single-layer linearithmic rate bound.
pub fn rate_lower_single(n: f64) -> Result<f64> {
    if !(n >= 4.0) {
        return Err(domain(format!("single-layer rate needs n >= 4, got {n}")));
    }
    let ln = n.log2();
    Ok(0.25 - 0.5 * ln.log2() / ln)
}

/// Sum of per-layer packing bits `Σ_ℓ (dim_ℓ/2)·log2(2r_ℓ/d)`, normalized by
/// `n log2 n`.
fn layered_rate(n: f64, radii: &[f64], dims: &[f64], d: f64) -> Result<f64> {
    let mut bits = 0.0;
    for (l, (&r, &dim)) in radii.iter().zip(dims).enumerate() {
        let arg = 2.0 * r / d;
        if !(arg > 1.0) {
            return Err(domain(format!(
                "layer {}: 2r/d = {arg} <= 1, the packing bound is void",
                l + 1
            )));
        }
        bits += dim / 2.0 * arg.log2();
    }
    Ok(bits / (n * n.log2()))
}

/// Exact finite-n rate bound of the `L`-layer construction with radii
/// `(cn)^{1/2^ℓ}` and `d = 3σt`.
pub fn rate_lower_finite(n: f64, layers: usize, c: f64, sigma: f64, t: f64) -> Result<f64> {
    if !(n >= 2.0) || layers == 0 || !(c > 0.0) || !(sigma > 0.0) || !(t > 0.0) {
        return Err(domain(format!(
            "invalid multi-layer parameters n = {n}, L = {layers}, c = {c}, sigma = {sigma}, t = {t}"
        )));
    }
    let radii: Vec<f64> = (1..=layers).map(|l| (c * n).powf(0.5f64.powi(l as i32))).collect();
    let dims: Vec<f64> = (1..=layers).map(|l| n + 1.0 - l as f64).collect();
    layered_rate(n, &radii, &dims, 3.0 * sigma * t)
}

/// Exact finite-n rate bound of the universal construction: radii
/// `n^{(1-b)/2^ℓ}`, `d = 3·t_abs`, layer dimensions `n - ℓ`.
pub fn rate_lower_universal(n: f64, layers: usize, b: f64, t_abs: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(domain(format!("need 0 < b < 1, got {b}")));
    }
    if !(n >= 2.0) || layers == 0 || !(t_abs > 0.0) {
        return Err(domain(format!("invalid universal parameters n = {n}, L = {layers}, t = {t_abs}")));
    }
    let radii: Vec<f64> = (1..=layers).map(|l| n.powf((1.0 - b) * 0.5f64.powi(l as i32))).collect();
    let dims: Vec<f64> = (1..=layers).map(|l| n - l as f64).collect();
    layered_rate(n, &radii, &dims, 3.0 * t_abs)
}

/// Achievable linear rate `½log2(1/E) + ½log2(P/(9Lσ²))` for `E ≤ 9P/σ²`.
pub fn rr_lower(exponent: f64, power: f64, sigma: f64, layers: usize) -> Result<f64> {
    if !(exponent > 0.0) || !(power > 0.0) || !(sigma > 0.0) || layers == 0 {
        return Err(domain(format!(
            "invalid rate-reliability parameters E = {exponent}, P = {power}, sigma = {sigma}, L = {layers}"
        )));
    }
    let e0 = max_exponent(power, sigma);
    if exponent > e0 {
        return Err(Error::ExponentTooLarge { exponent, e0 });
    }
    Ok(0.5 * (1.0 / exponent).log2() + 0.5 * (power / (9.0 * layers as f64 * sigma * sigma)).log2())
}

/// Converse reference `½log2(1/E) + ½log2(8P/σ²)`.
pub fn rr_upper(exponent: f64, power: f64, sigma: f64) -> Result<f64> {
    if !(exponent > 0.0) || !(power > 0.0) || !(sigma > 0.0) {
        return Err(domain(format!(
            "invalid converse parameters E = {exponent}, P = {power}, sigma = {sigma}"
        )));
    }
    Ok(0.5 * (1.0 / exponent).log2() + 0.5 * (8.0 * power / (sigma * sigma)).log2())
}

/// Linearithmic DI capacity of the Gaussian channel.
pub fn capacity() -> f64 {
    0.5
}

pub fn capacity_curve() -> BoundCurve {
    BoundCurve::new("capacity", &[], capacity(), BoundLabel::Exact)
}
