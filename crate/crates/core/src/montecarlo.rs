//! Monte Carlo estimation of missed and false identification probabilities.
//!
//! Trials are split into fixed chunks of [`CHUNK_TRIALS`]; chunk `k` draws
//! from its own substream derived from the report seed and `k`, and chunk
//! results are reduced by an integer sum. Hit counts therefore do not depend
//! on how many rayon workers run the chunks.
//!
//! Each estimate carries an exact analytic value. Projections of an isotropic
//! Gaussian onto orthonormal directions are independent standard normals, so
//! the acceptance probability of a word is a product of Gaussian interval
//! probabilities, one per layer.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{normal_interval, phi, RngSeed};
use crate::codebook::Codebook;
use crate::decoder::DecoderSpec;
use crate::error::{Error, Result};

pub const CHUNK_TRIALS: u64 = 4096;

/// Two-sided 95% standard normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationMode {
    /// Draw the whole `n`-dimensional noise vector and decode `y`.
    FullVector,
    /// Draw only the `L` noise projections the decoder looks at.
    #[default]
    ScalarFast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    SameWord,
    /// Words whose paths first differ at this (1-based) layer.
    DifferAtLayer(usize),
}

impl PairKind {
    pub fn label(&self) -> String {
        match self {
            PairKind::SameWord => "same_word".to_string(),
            PairKind::DifferAtLayer(l) => format!("differ_at_layer_{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    /// 95% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Exact probability of a hit.
    pub analytic: Option<f64>,
    /// Closed-form upper bound on the same probability.
    pub bound: Option<f64>,
    pub seed: RngSeed,
}

impl TrialReport {
    pub fn new(trials: u64, hits: u64, seed: RngSeed) -> Self {
        assert!(trials >= 1 && hits <= trials);
        let (ci_low, ci_high) = wilson_interval(hits, trials);
        Self {
            trials,
            hits,
            estimate: hits as f64 / trials as f64,
            ci_low,
            ci_high,
            analytic: None,
            bound: None,
            seed,
        }
    }

    /// Binomial standard deviation of the estimate if the true rate were `p`.
    pub fn binomial_sigma(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// `|estimate - analytic| ≤ k·σ(analytic)`; false when there is no
    /// analytic value.
    pub fn within_sigmas(&self, k: f64) -> bool {
        self.analytic
            .is_some_and(|p| (self.estimate - p).abs() <= k * self.binomial_sigma(p))
    }

    pub fn covers_analytic(&self) -> bool {
        self.analytic.is_some_and(|p| self.ci_low <= p && p <= self.ci_high)
    }
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Probability that `spec` accepts when a word with statistics means `mu`
/// is sent with noise level `sigma`.
fn acceptance_probability(spec: &DecoderSpec, mu: &[f64], sigma: f64) -> f64 {
    spec.layers
        .iter()
        .zip(mu)
        .map(|(l, &m)| {
            let lo = l.expected - l.threshold - m;
            let hi = l.expected + l.threshold - m;
            if sigma == 0.0 {
                if lo <= 0.0 && 0.0 <= hi {
                    1.0
                } else {
                    0.0
                }
            } else {
                normal_interval(lo / sigma, hi / sigma)
            }
        })
        .product()
}

/// Exact missed-identification probability `1 - Π_ℓ (1 - 2Φ(-τ_ℓ/σ))`.
pub fn miss_oracle(code: &Codebook, word: usize, sigma: f64) -> Result<f64> {
    let spec = code.decoder_spec(word)?;
    if sigma == 0.0 {
        return Ok(0.0);
    }
    let keep: f64 = spec
        .layers
        .iter()
        .map(|l| 1.0 - 2.0 * phi(-l.threshold / sigma))
        .product();
    Ok(1.0 - keep)
}

/// Exact probability that `tested` is identified while `sent` is
/// transmitted: `Π_ℓ [Φ((r_ℓ+τ_ℓ-μ_ℓ)/σ) - Φ((r_ℓ-τ_ℓ-μ_ℓ)/σ)]`, with
/// `μ_ℓ = ⟨o_sent, v̂_ℓ(tested)⟩`.
pub fn false_oracle(code: &Codebook, tested: usize, sent: usize, sigma: f64) -> Result<f64> {
    let spec = code.decoder_spec(tested)?;
    let mu = spec.statistics(&code.codeword(sent)?)?;
    Ok(acceptance_probability(&spec, &mu, sigma))
}

/// Paper-style bound `2Φ(-(s - τ)/σ)` at the first differing layer, with `s`
/// the measured scalar separation.
pub fn false_bound(code: &Codebook, tested: usize, sent: usize, sigma: f64) -> Result<f64> {
    let sep = code.pair_separation(tested, sent)?;
    let tau = code.layers[sep.layer - 1].threshold;
    if sigma == 0.0 {
        return Ok(if sep.separation > tau { 0.0 } else { 2.0 });
    }
    Ok(2.0 * phi(-(sep.separation - tau) / sigma))
}

/// Union bound `Σ_ℓ 2Φ(-τ_ℓ/σ)` on the missed-identification probability.
pub fn miss_union_bound(code: &Codebook, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    code.layers.iter().map(|l| 2.0 * phi(-l.threshold / sigma)).sum()
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma must be non-negative, got {sigma}")));
    }
    Ok(())
}

/// Number of trials in which `spec` accepts the noisy version of `sent_leaf`.
fn count_accepts(
    spec: &DecoderSpec,
    sent_leaf: &[f64],
    sigma: f64,
    trials: u64,
    seed: RngSeed,
    mode: SimulationMode,
) -> u64 {
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let mu: Vec<f64> = spec
        .layers
        .iter()
        .map(|l| crate::geometry::dot(l.direction.as_slice(), sent_leaf))
        .collect();
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let size = CHUNK_TRIALS.min(trials - k * CHUNK_TRIALS);
            let mut rng = seed.child(k).rng();
            match mode {
                SimulationMode::ScalarFast => {
                    let mut stats = vec![0.0; mu.len()];
                    (0..size)
                        .filter(|_| {
                            for (s, m) in stats.iter_mut().zip(&mu) {
                                let z: f64 = rng.sample(StandardNormal);
                                *s = m + sigma * z;
                            }
                            spec.accepts_statistics(&stats)
                        })
                        .count() as u64
                }
                SimulationMode::FullVector => {
                    let mut y = vec![0.0; sent_leaf.len()];
                    let mut stats = vec![0.0; mu.len()];
                    (0..size)
                        .filter(|_| {
                            for (yi, xi) in y.iter_mut().zip(sent_leaf) {
                                let z: f64 = rng.sample(StandardNormal);
                                *yi = xi + sigma * z;
                            }
                            for (s, l) in stats.iter_mut().zip(&spec.layers) {
                                *s = crate::geometry::dot(&y, l.direction.as_slice());
                            }
                            spec.accepts_statistics(&stats)
                        })
                        .count() as u64
                }
            }
        })
        .sum()
}

/// Estimates `P(miss)` for `word`: the probability that some layer test
/// rejects the word's own noisy codeword.
pub fn estimate_miss(
    code: &Codebook,
    word: usize,
    sigma: f64,
    trials: u64,
    seed: RngSeed,
    mode: SimulationMode,
) -> Result<TrialReport> {
    check_sigma(sigma)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let spec = code.decoder_spec(word)?;
    let leaf = code.codeword(word)?;
    let accepts = count_accepts(&spec, leaf.as_slice(), sigma, trials, seed, mode);
    let mut report = TrialReport::new(trials, trials - accepts, seed);
    report.analytic = Some(miss_oracle(code, word, sigma)?);
    report.bound = Some(miss_union_bound(code, sigma));
    Ok(report)
}

/// Estimates the probability that `word_tested` is identified when
/// `word_sent` is transmitted.
pub fn estimate_false(
    code: &Codebook,
    word_tested: usize,
    word_sent: usize,
    sigma: f64,
    trials: u64,
    seed: RngSeed,
    mode: SimulationMode,
) -> Result<TrialReport> {
    check_sigma(sigma)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if word_tested == word_sent {
        code.word_path(word_tested)?;
        return Err(Error::SameWord(word_tested));
    }
    let spec = code.decoder_spec(word_tested)?;
    let leaf = code.codeword(word_sent)?;
    let accepts = count_accepts(&spec, leaf.as_slice(), sigma, trials, seed, mode);
    let mut report = TrialReport::new(trials, accepts, seed);
    report.analytic = Some(false_oracle(code, word_tested, word_sent, sigma)?);
    report.bound = Some(false_bound(code, word_tested, word_sent, sigma)?);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub kind: PairKind,
    pub tested: usize,
    pub sent: usize,
    pub report: TrialReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllPairsReport {
    /// Miss reports (kind `SameWord`) first, then false reports ordered by
    /// first differing layer and then by `(tested, sent)`.
    pub reports: Vec<PairReport>,
    /// Worst measured missed-identification rate.
    pub lambda1_hat: f64,
    /// Worst measured false-identification rate.
    pub lambda2_hat: f64,
}

/// Substream of the `(tested, sent)` report within an all-pairs run.
pub fn pair_seed(seed: RngSeed, words: usize, tested: usize, sent: usize) -> RngSeed {
    seed.child((tested * words + sent) as u64)
}

/// Miss report for every sampled word and false report for every ordered
/// pair of distinct sampled words.
pub fn estimate_all_pairs(
    code: &Codebook,
    sigma: f64,
    trials_per_pair: u64,
    seed: RngSeed,
    mode: SimulationMode,
) -> Result<AllPairsReport> {
    let n_words = code.len();
    let mut reports = Vec::with_capacity(n_words * n_words);
    for w in 0..n_words {
        reports.push(PairReport {
            kind: PairKind::SameWord,
            tested: w,
            sent: w,
            report: estimate_miss(code, w, sigma, trials_per_pair, pair_seed(seed, n_words, w, w), mode)?,
        });
    }
    let mut pairs = Vec::new();
    for tested in 0..n_words {
        for sent in 0..n_words {
            if tested != sent {
                let layer = code.first_difference(tested, sent)?.expect("distinct words differ");
                pairs.push((layer, tested, sent));
            }
        }
    }
    pairs.sort();
    for (layer, tested, sent) in pairs {
        reports.push(PairReport {
            kind: PairKind::DifferAtLayer(layer),
            tested,
            sent,
            report: estimate_false(
                code,
                tested,
                sent,
                sigma,
                trials_per_pair,
                pair_seed(seed, n_words, tested, sent),
                mode,
            )?,
        });
    }
    let worst = |same: bool| {
        reports
            .iter()
            .filter(|r| (r.kind == PairKind::SameWord) == same)
            .map(|r| r.report.estimate)
            .fold(0.0, f64::max)
    };
    let lambda1_hat = worst(true);
    let lambda2_hat = worst(false);
    Ok(AllPairsReport {
        reports,
        lambda1_hat,
        lambda2_hat,
    })
}

/// Measured linearithmic rate `Σ_ℓ log2(N_ℓ) / (n log2 n)` of a code with
/// `N_ℓ` points per layer.
pub fn empirical_rate(layer_counts: &[usize], n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::DomainError(format!("rate needs n >= 2, got {n}")));
    }
    if layer_counts.is_empty() || layer_counts.contains(&0) {
        return Err(Error::DomainError("layer counts must be at least 1".into()));
    }
    let bits: f64 = layer_counts.iter().map(|&c| (c as f64).log2()).sum();
    let n = n as f64;
    Ok(bits / (n * n.log2()))
}
