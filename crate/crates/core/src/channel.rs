//! The AWGN channel `y = x + σ·z`, the standard normal CDF and the tail law
//! of the noise projected onto a fixed direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RealVector;

/// Block length, noise standard deviation and power constraint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub n: usize,
    pub sigma: f64,
    #[serde(rename = "P")]
    pub power: f64,
}

impl ChannelParams {
    pub fn new(n: usize, sigma: f64, power: f64) -> Result<Self> {
        let p = Self { n, sigma, power };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("block length n must be at least 1".into()));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.power > 0.0 && self.power.is_finite()) {
            return Err(Error::InvalidParameter(format!("P must be positive, got {}", self.power)));
        }
        Ok(())
    }

    /// Energy budget `nP` of one codeword.
    pub fn budget(&self) -> f64 {
        self.n as f64 * self.power
    }
}

/// A seed plus a substream id. Together they fully determine a random stream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// A child stream id derived from this stream and `index`.
    pub fn child(&self, index: u64) -> Self {
        Self {
            seed: self.seed,
            stream: mix_stream(self.stream, index),
        }
    }
}

/// SplitMix64-style mixing of a parent stream id with a child index.
pub(crate) fn mix_stream(parent: u64, index: u64) -> u64 {
    let mut z = parent
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index)
        .wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Passes `x` through the channel: `y = x + σ·z` with i.i.d. standard normal
/// `z`. `σ = 0` is the identity channel.
pub fn transmit<R: Rng + ?Sized>(x: &RealVector, sigma: f64, rng: &mut R) -> Result<RealVector> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma must be non-negative, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(x.clone());
    }
    let y = x
        .as_slice()
        .iter()
        .map(|xi| {
            let z: f64 = rng.sample(StandardNormal);
            xi + sigma * z
        })
        .collect();
    Ok(RealVector::from_raw(y))
}

/// Standard normal CDF, `Φ(x) = erfc(-x/√2)/2`.
pub fn phi(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Probability that a standard normal lands in `[lo, hi]`, computed on the
/// tail side that avoids cancellation.
pub fn normal_interval(lo: f64, hi: f64) -> f64 {
    if !(hi > lo) {
        return 0.0;
    }
    if lo >= 0.0 {
        phi(-lo) - phi(-hi)
    } else if hi <= 0.0 {
        phi(hi) - phi(lo)
    } else {
        1.0 - phi(lo) - phi(-hi)
    }
}

/// `P(|⟨Z, û⟩| ≥ x)` for a unit `û`, together with the Mill's-ratio bound
/// `√(2/π)·e^{-x²/2}/x` which dominates it for every `x > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionTail {
    pub exact: f64,
    pub mills_bound: f64,
}

pub fn projection_tail(x: f64) -> Result<ProjectionTail> {
    if !(x > 0.0) {
        return Err(Error::DomainError(format!("projection tail needs x > 0, got {x}")));
    }
    let exact = 2.0 * phi(-x);
    let mills_bound = (2.0 / std::f64::consts::PI).sqrt() / x * (-x * x / 2.0).exp();
    Ok(ProjectionTail { exact, mills_bound })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // 40-digit reference values, frozen from an arbitrary-precision evaluation.
    const PHI_TABLE: &[(f64, f64)] = &[
        (-20.0, 2.7536241186062336951e-89),
        (-10.0, 7.619853024160526066e-24),
        (-8.5, 9.4795348222033183542e-18),
        (-5.0, 2.8665157187919391167e-7),
        (-3.0, 0.0013498980316300945267),
        (-2.0, 0.0227501319481792072),
        (-1.0, 0.15865525393145705141),
        (-0.5, 0.30853753872598689636),
        (0.0, 0.5),
        (0.5, 0.69146246127401310364),
        (1.0, 0.84134474606854294859),
        (2.0, 0.9772498680518207928),
        (3.0, 0.99865010196836990547),
        (5.0, 0.99999971334842812081),
    ];

    #[test]
    fn phi_matches_reference_table() {
        for &(x, want) in PHI_TABLE {
            let got = phi(x);
            assert!((got - want).abs() <= 1e-12, "phi({x}) = {got}, want {want}");
            if x < 0.0 {
                assert!(((got - want) / want).abs() <= 1e-13, "relative error at {x}");
            }
        }
        assert_eq!(phi(f64::INFINITY), 1.0);
        assert_eq!(phi(f64::NEG_INFINITY), 0.0);
        assert_eq!(phi(0.0), 0.5);
    }

    #[test]
    fn phi_symmetry() {
        for i in 0..1000 {
            let x = -20.0 + 40.0 * i as f64 / 999.0;
            assert!((phi(x) + phi(-x) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn tail_examples() {
        let t = projection_tail(1.0).unwrap();
        assert!((t.exact - 0.31731050786291410283).abs() < 1e-14);
        let t = projection_tail(2.0).unwrap();
        assert!((t.exact - 0.045500263896358414401).abs() < 1e-14);
        assert!((t.mills_bound - 0.053990966513188051951).abs() < 1e-14);
        assert!(t.exact <= t.mills_bound);
        let far = projection_tail(30.0).unwrap();
        assert!((far.exact / far.mills_bound - 1.0).abs() < 2e-3);
        assert!(projection_tail(0.0).is_err());
        assert!(projection_tail(-1.0).is_err());
    }

    #[test]
    fn mills_bound_dominates_on_grid() {
        for i in 1..=100 {
            let x = i as f64 / 10.0;
            let t = projection_tail(x).unwrap();
            assert!(t.exact <= t.mills_bound, "x = {x}");
        }
    }

    #[test]
    fn interval_probability() {
        assert!((normal_interval(-1.0, 1.0) - (1.0 - 0.31731050786291410283)).abs() < 1e-15);
        assert_eq!(normal_interval(1.0, 1.0), 0.0);
        assert!((normal_interval(8.0, f64::INFINITY) - phi(-8.0)).abs() < 1e-30);
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let x = RealVector::new(vec![1.0, -2.0, 3.5]).unwrap();
        let mut rng = RngSeed::new(1, 0).rng();
        assert_eq!(transmit(&x, 0.0, &mut rng).unwrap(), x);
        assert!(transmit(&x, -1.0, &mut rng).is_err());
    }

    #[test]
    fn noise_moments() {
        let trials = 100_000;
        let x = RealVector::zeros(1);
        let mut rng = RngSeed::new(7, 0).rng();
        let ys: Vec<f64> = (0..trials).map(|_| transmit(&x, 1.0, &mut rng).unwrap()[0]).collect();
        let mean = ys.iter().sum::<f64>() / trials as f64;
        assert!(mean.abs() <= 4.0 / (trials as f64).sqrt());

        let ys: Vec<f64> = (0..trials).map(|_| transmit(&x, 2.0, &mut rng).unwrap()[0]).collect();
        let mean = ys.iter().sum::<f64>() / trials as f64;
        let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        assert!((var - 4.0).abs() <= 0.05 * 4.0);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = RngSeed::new(5, 9).rng().random();
        let b: u64 = RngSeed::new(5, 9).rng().random();
        let c: u64 = RngSeed::new(5, 10).rng().random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(RngSeed::new(5, 9).child(0), RngSeed::new(5, 9).child(1));
    }

    #[test]
    fn params_validation() {
        assert!(ChannelParams::new(0, 1.0, 1.0).is_err());
        assert!(ChannelParams::new(4, 0.0, 1.0).is_err());
        assert!(ChannelParams::new(4, 1.0, -1.0).is_err());
        assert_eq!(ChannelParams::new(4, 1.0, 2.5).unwrap().budget(), 10.0);
    }
}
