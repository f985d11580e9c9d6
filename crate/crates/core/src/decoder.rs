//! Projective identification tests.
//!
//! A word is accepted at layer ℓ when the received vector's component along
//! the word's unit path direction `v̂_ℓ` is within `τ_ℓ` of `r_ℓ`. Because the
//! earlier path vectors and all later ones are orthogonal to `v̂_ℓ`, this is
//! exactly the per-layer test `‖Π_{v_ℓ} y - o_{s^ℓ}‖ ≤ τ_ℓ` reduced to the
//! noise component along `v̂_ℓ`. A word is identified when every layer
//! accepts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{RealVector, GEOMETRY_TOL};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerTest {
    /// Unit path direction `v̂_ℓ`.
    pub direction: RealVector,
    /// Expected statistic `r_ℓ`.
    pub expected: f64,
    /// Acceptance half-width `τ_ℓ`.
    pub threshold: f64,
}

/// The decoding set of one word: the intersection of its layer tests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderSpec {
    pub word: usize,
    pub layers: Vec<LayerTest>,
}

impl DecoderSpec {
    pub fn new(word: usize, layers: Vec<LayerTest>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidParameter("decoder needs at least one layer".into()));
        }
        let dim = layers[0].direction.dim();
        for (i, l) in layers.iter().enumerate() {
            if l.direction.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: l.direction.dim(),
                });
            }
            if (l.direction.norm() - 1.0).abs() > GEOMETRY_TOL {
                return Err(Error::InvalidParameter(format!("layer {} direction is not unit norm", i + 1)));
            }
            if !(l.threshold > 0.0) {
                return Err(Error::InvalidParameter(format!("layer {} threshold must be positive", i + 1)));
            }
            for m in &layers[..i] {
                if l.direction.dot(&m.direction).abs() > GEOMETRY_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "layer {} direction is not orthogonal to earlier layers",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { word, layers })
    }

    pub fn dim(&self) -> usize {
        self.layers[0].direction.dim()
    }

    /// The `L` scalars `⟨y, v̂_ℓ⟩` the decision depends on.
    pub fn statistics(&self, y: &RealVector) -> Result<Vec<f64>> {
        self.layers
            .iter()
            .map(|l| {
                l.direction.check_dim(y)?;
                Ok(y.dot(&l.direction))
            })
            .collect()
    }

    /// Decision from precomputed statistics.
    pub fn accepts_statistics(&self, stats: &[f64]) -> bool {
        self.layers
            .iter()
            .zip(stats)
            .all(|(l, s)| (s - l.expected).abs() <= l.threshold)
    }
}

/// `|⟨y, v̂⟩ - r| ≤ τ`; the boundary accepts.
pub fn layer_test(y: &RealVector, direction: &RealVector, r_expected: f64, threshold: f64) -> Result<bool> {
    direction.check_dim(y)?;
    Ok((y.dot(direction) - r_expected).abs() <= threshold)
}

/// Conjunction of all layer tests of `spec`.
pub fn identify(y: &RealVector, spec: &DecoderSpec) -> Result<bool> {
    for l in &spec.layers {
        if !layer_test(y, &l.direction, l.expected, l.threshold)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> RealVector {
        RealVector::unit(n, i)
    }

    #[test]
    fn layer_test_boundaries() {
        let v = e(3, 1);
        let (r, tau) = (5.0, 0.5);
        assert!(layer_test(&v.scale(r), &v, r, tau).unwrap());
        assert!(layer_test(&v.scale(r + tau), &v, r, tau).unwrap());
        assert!(layer_test(&v.scale(r - tau), &v, r, tau).unwrap());
        assert!(!layer_test(&v.scale(r + tau + 1e-9 + 1e-15), &v, r, tau).unwrap());
        assert!(layer_test(&RealVector::zeros(2), &v, r, tau).is_err());
    }

    #[test]
    fn identify_is_conjunction_and_ignores_orthogonal_noise() {
        let spec = DecoderSpec::new(
            0,
            vec![
                LayerTest { direction: e(4, 0), expected: 10.0, threshold: 1.0 },
                LayerTest { direction: e(4, 1), expected: 3.0, threshold: 1.0 },
            ],
        )
        .unwrap();
        let leaf = RealVector::new(vec![10.0, 3.0, 0.0, 0.0]).unwrap();
        assert!(identify(&leaf, &spec).unwrap());
        let far = RealVector::new(vec![10.0, 3.0, 1e6, -1e6]).unwrap();
        assert!(identify(&far, &spec).unwrap());
        let off = RealVector::new(vec![10.0, 4.5, 0.0, 0.0]).unwrap();
        assert!(!identify(&off, &spec).unwrap());
        assert_eq!(spec.statistics(&off).unwrap(), vec![10.0, 4.5]);
        assert!(!spec.accepts_statistics(&[10.0, 4.5]));
    }

    #[test]
    fn spec_validation() {
        let bad_norm = LayerTest { direction: e(2, 0).scale(2.0), expected: 1.0, threshold: 1.0 };
        assert!(DecoderSpec::new(0, vec![bad_norm]).is_err());
        let a = LayerTest { direction: e(2, 0), expected: 1.0, threshold: 1.0 };
        let b = LayerTest { direction: e(2, 0), expected: 1.0, threshold: 1.0 };
        assert!(DecoderSpec::new(0, vec![a.clone(), b]).is_err());
        let zero_tau = LayerTest { threshold: 0.0, ..a };
        assert!(DecoderSpec::new(0, vec![zero_tau]).is_err());
        assert!(DecoderSpec::new(0, vec![]).is_err());
    }
}
