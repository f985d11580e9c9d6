//! Vectors, orthogonal projections and angle-dense packings.
//!
//! An arrangement of points on a sphere of radius `r` around a center is
//! *d-angle-dense* when, for every ordered pair of distinct points `(p, q)`,
//! the orthogonal projection of `p - center` onto the direction of
//! `q - center` stays at least `d` away from `q - center`. On a sphere this
//! is the same as requiring every pairwise angle to be at least
//! `arccos(1 - d/r)`.

use std::f64::consts::PI;
use std::ops::{Add, Index, Sub};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for geometric identities in double precision.
pub const GEOMETRY_TOL: f64 = 1e-9;

const SAMPLE_RETRIES: usize = 16;

/// A point or direction in `R^n` with finite components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidVector);
        }
        Ok(Self(components))
    }

    /// The zero vector of dimension `dim` (which must be positive).
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "RealVector dimension must be positive");
        Self(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn from_raw(components: Vec<f64>) -> Self {
        debug_assert!(!components.is_empty() && components.iter().all(|x| x.is_finite()));
        Self(components)
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

impl Index<usize> for RealVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &RealVector {
    type Output = RealVector;

    fn add(self, rhs: &RealVector) -> RealVector {
        assert_eq!(self.dim(), rhs.dim());
        RealVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RealVector {
    type Output = RealVector;

    fn sub(self, rhs: &RealVector) -> RealVector {
        assert_eq!(self.dim(), rhs.dim());
        RealVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthogonal projection of `v` onto the line spanned by `a`.
pub fn project(v: &RealVector, a: &RealVector) -> Result<RealVector> {
    v.check_dim(a)?;
    let a_sq = a.norm_sq();
    if a_sq == 0.0 {
        return Err(Error::ZeroDirection);
    }
    Ok(a.scale(a.dot(v) / a_sq))
}

/// `‖Π_{q-c}(p - c) - (q - c)‖`, the quantity bounded below in an angle-dense
/// arrangement.
pub fn projected_distance(p: &RealVector, q: &RealVector, center: &RealVector) -> Result<f64> {
    p.check_dim(center)?;
    q.check_dim(center)?;
    let u = p - center;
    let w = q - center;
    let proj = project(&u, &w)?;
    Ok((&proj - &w).norm())
}

/// Projected distance between two displacements sharing a center; equal to
/// `|⟨u, ŵ⟩ - ‖w‖|` since the projection lies on the line through `w`.
fn displacement_projected_distance(u: &[f64], w: &[f64], w_norm: f64) -> f64 {
    (dot(u, w) / w_norm - w_norm).abs()
}

/// Draws `center + w` with `‖w‖ = r` and `w` orthogonal to every vector of
/// `forbidden_basis`, uniformly over that sphere.
pub fn sample_on_subspace_sphere<R: Rng + ?Sized>(
    center: &RealVector,
    r: f64,
    forbidden_basis: &[RealVector],
    rng: &mut R,
) -> Result<RealVector> {
    let n = center.dim();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("sphere radius must be positive, got {r}")));
    }
    for b in forbidden_basis {
        center.check_dim(b)?;
    }
    if forbidden_basis.len() >= n {
        return Err(Error::DegenerateSubspace {
            ambient: n,
            forbidden: forbidden_basis.len(),
        });
    }
    for _ in 0..SAMPLE_RETRIES {
        let mut g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let before = dot(&g, &g).sqrt();
        // two Gram-Schmidt passes keep the leak at machine precision
        for _ in 0..2 {
            for b in forbidden_basis {
                let c = dot(&g, b.as_slice());
                for (gi, bi) in g.iter_mut().zip(b.as_slice()) {
                    *gi -= c * bi;
                }
            }
        }
        let after = dot(&g, &g).sqrt();
        if before > 0.0 && after >= 1e-12 * before {
            let s = r / after;
            let point = center
                .as_slice()
                .iter()
                .zip(&g)
                .map(|(c, gi)| c + s * gi)
                .collect();
            return Ok(RealVector::from_raw(point));
        }
    }
    Err(Error::DegenerateSubspace {
        ambient: n,
        forbidden: forbidden_basis.len(),
    })
}

/// Parameters of one greedy packing run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingConfig {
    pub radius: f64,
    pub ambient_dim: usize,
    pub subspace_dim: usize,
    pub min_projected_distance: f64,
    pub max_points: usize,
    /// Consecutive rejected candidates after which the packing is declared
    /// saturated.
    pub saturation_rejections: usize,
    pub seed: u64,
}

impl PackingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {}", self.radius)));
        }
        if !(self.min_projected_distance > 0.0 && self.min_projected_distance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "min projected distance must be positive, got {}",
                self.min_projected_distance
            )));
        }
        if self.max_points == 0 || self.saturation_rejections == 0 {
            return Err(Error::InvalidParameter(
                "max_points and saturation_rejections must be at least 1".into(),
            ));
        }
        if self.ambient_dim == 0 || self.subspace_dim == 0 || self.subspace_dim > self.ambient_dim {
            return Err(Error::InvalidParameter(format!(
                "subspace dimension {} must lie in [1, {}]",
                self.subspace_dim, self.ambient_dim
            )));
        }
        Ok(())
    }
}

/// A d-angle-dense set of points on a sphere living in the orthogonal
/// complement of `forbidden_basis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arrangement {
    pub center: RealVector,
    pub radius: f64,
    pub forbidden_basis: Vec<RealVector>,
    pub points: Vec<RealVector>,
    pub min_projected_distance: f64,
    /// Set when generation stopped on consecutive rejections rather than on
    /// reaching the point budget.
    pub saturated: bool,
    /// Set when `d > 2r`: no second point can ever fit.
    pub degenerate: bool,
}

/// Result of checking every [`Arrangement`] invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrangementAudit {
    pub points: usize,
    pub max_radius_error: f64,
    pub max_basis_leak: f64,
    /// Smallest projected distance over all ordered pairs (infinite for a
    /// single point).
    pub min_projected_distance: f64,
    pub min_chord: f64,
    pub violations: Vec<String>,
}

impl ArrangementAudit {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Arrangement {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn displacements(&self) -> Vec<RealVector> {
        self.points.iter().map(|p| p - &self.center).collect()
    }

    /// Checks radius, subspace membership, angle-density in both orderings
    /// and the chord consequence, all at relative tolerance [`GEOMETRY_TOL`].
    pub fn audit(&self) -> ArrangementAudit {
        let r = self.radius;
        let d = self.min_projected_distance;
        let tol = GEOMETRY_TOL * r;
        let mut violations = Vec::new();
        let disp = self.displacements();

        let mut max_radius_error = 0.0f64;
        let mut max_basis_leak = 0.0f64;
        for (i, w) in disp.iter().enumerate() {
            let err = (w.norm() - r).abs();
            max_radius_error = max_radius_error.max(err);
            if err > tol {
                violations.push(format!("point {i}: radius error {err:e}"));
            }
            for (j, b) in self.forbidden_basis.iter().enumerate() {
                let leak = w.dot(b).abs();
                max_basis_leak = max_basis_leak.max(leak);
                if leak > tol {
                    violations.push(format!("point {i}: leak {leak:e} onto basis vector {j}"));
                }
            }
        }

        let mut min_pd = f64::INFINITY;
        let mut min_chord = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in 0..self.points.len() {
                if i == j {
                    continue;
                }
                let pd = match projected_distance(&self.points[i], &self.points[j], &self.center) {
                    Ok(v) => v,
                    Err(e) => {
                        violations.push(format!("pair ({i},{j}): {e}"));
                        continue;
                    }
                };
                min_pd = min_pd.min(pd);
                if pd < d - tol {
                    violations.push(format!("pair ({i},{j}): projected distance {pd} < {d}"));
                }
                if i < j {
                    min_chord = min_chord.min((&self.points[i] - &self.points[j]).norm());
                }
            }
        }
        if self.points.len() >= 2 {
            let chord = chord_bound(d, r).unwrap_or(0.0);
            if min_chord < chord * (1.0 - GEOMETRY_TOL) {
                violations.push(format!("min chord {min_chord} < sqrt(2rd) = {chord}"));
            }
        }

        ArrangementAudit {
            points: self.points.len(),
            max_radius_error,
            max_basis_leak,
            min_projected_distance: min_pd,
            min_chord,
            violations,
        }
    }
}

/// Random sequential addition of points on the sphere of radius `cfg.radius`
/// around `center`, restricted to the complement of `forbidden_basis`.
///
/// Candidates are accepted when their projected distance to every accepted
/// point is at least `d` in both orderings. Generation stops at
/// `cfg.max_points` or after `cfg.saturation_rejections` consecutive
/// rejections. When `d > 2r` a single point is returned with the
/// `degenerate` flag set.
pub fn greedy_angle_dense<R: Rng + ?Sized>(
    cfg: &PackingConfig,
    center: &RealVector,
    forbidden_basis: &[RealVector],
    rng: &mut R,
) -> Result<Arrangement> {
    cfg.validate()?;
    if center.dim() != cfg.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: cfg.ambient_dim,
            actual: center.dim(),
        });
    }
    if cfg.ambient_dim - forbidden_basis.len() != cfg.subspace_dim {
        return Err(Error::InvalidParameter(format!(
            "subspace dimension {} does not match ambient {} minus {} forbidden directions",
            cfg.subspace_dim,
            cfg.ambient_dim,
            forbidden_basis.len()
        )));
    }
    let r = cfg.radius;
    let d = cfg.min_projected_distance;

    let first = sample_on_subspace_sphere(center, r, forbidden_basis, rng)?;
    let mut disp: Vec<Vec<f64>> = vec![(&first - center).into_inner()];
    let mut points = vec![first];

    let degenerate = d > 2.0 * r;
    let mut saturated = false;
    if !degenerate {
        let mut rejections = 0usize;
        while points.len() < cfg.max_points {
            let cand = sample_on_subspace_sphere(center, r, forbidden_basis, rng)?;
            let w = (&cand - center).into_inner();
            let w_norm = dot(&w, &w).sqrt();
            let ok = disp.iter().all(|a| {
                let a_norm = dot(a, a).sqrt();
                displacement_projected_distance(&w, a, a_norm) >= d
                    && displacement_projected_distance(a, &w, w_norm) >= d
            });
            if ok {
                disp.push(w);
                points.push(cand);
                rejections = 0;
            } else {
                rejections += 1;
                if rejections >= cfg.saturation_rejections {
                    saturated = true;
                    break;
                }
            }
        }
    }

    Ok(Arrangement {
        center: center.clone(),
        radius: r,
        forbidden_basis: forbidden_basis.to_vec(),
        points,
        min_projected_distance: d,
        saturated,
        degenerate,
    })
}

/// Number of equally spaced points that fit on a circle when neighbouring
/// points must be at least `theta` apart.
pub(crate) fn circle_capacity(theta: f64) -> usize {
    ((2.0 * PI / theta) + 1e-9).floor() as usize
}

/// The exact maximal 2D arrangement: `⌊2π/θ⌋` equally spaced points on the
/// circle of radius `r` around the origin, `θ = arccos(1 - d/r)`.
pub fn equiangular_2d(r: f64, d: f64) -> Result<Arrangement> {
    if !(r > 0.0 && d > 0.0) {
        return Err(Error::InvalidParameter(format!("need r > 0 and d > 0, got r = {r}, d = {d}")));
    }
    if d > 2.0 * r {
        return Err(Error::DegenerateGeometry(format!("d = {d} exceeds the diameter 2r = {}", 2.0 * r)));
    }
    let theta = (1.0 - d / r).clamp(-1.0, 1.0).acos();
    let count = circle_capacity(theta);
    let step = 2.0 * PI / count as f64;
    let points = (0..count)
        .map(|k| {
            let a = step * k as f64;
            RealVector::from_raw(vec![r * a.cos(), r * a.sin()])
        })
        .collect();
    Ok(Arrangement {
        center: RealVector::zeros(2),
        radius: r,
        forbidden_basis: Vec::new(),
        points,
        min_projected_distance: d,
        saturated: true,
        degenerate: false,
    })
}

/// Smallest angle between two points of a d-angle-dense arrangement on a
/// sphere of radius `r`: `2·arcsin(√(d/2r))`.
pub fn min_angle_bound(d: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !(d > 0.0) || d > 2.0 * r {
        return Err(Error::DomainError(format!("min angle needs 0 < d <= 2r, got d = {d}, r = {r}")));
    }
    Ok(2.0 * (d / (2.0 * r)).sqrt().asin())
}

/// Lower bound `√(2rd)` on the Euclidean distance between arrangement points.
pub fn chord_bound(d: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !(d > 0.0) {
        return Err(Error::DomainError(format!("chord bound needs d, r > 0, got d = {d}, r = {r}")));
    }
    Ok((2.0 * r * d).sqrt())
}

/// Asymptotic reference value `(n/2)·log2(2r/d)` bits for the size of a
/// d-angle-dense arrangement in dimension `n`. Not a finite-n guarantee.
pub fn packing_size_lower_bound(n: usize, r: f64, d: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::DomainError("dimension must be at least 1".into()));
    }
    if !(r > 0.0) || !(d > 0.0) || d > 2.0 * r {
        return Err(Error::DomainError(format!("size bound needs 0 < d <= 2r, got d = {d}, r = {r}")));
    }
    Ok(n as f64 / 2.0 * (2.0 * r / d).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[f64]) -> RealVector {
        RealVector::new(xs.to_vec()).unwrap()
    }

    fn close(a: &RealVector, b: &RealVector, tol: f64) -> bool {
        a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert_eq!(RealVector::new(vec![]), Err(Error::InvalidVector));
        assert_eq!(RealVector::new(vec![1.0, f64::NAN]), Err(Error::InvalidVector));
        assert!(serde_json::from_str::<RealVector>("[]").is_err());
    }

    #[test]
    fn project_examples() {
        assert!(close(&project(&v(&[3.0, 4.0]), &v(&[1.0, 0.0])).unwrap(), &v(&[3.0, 0.0]), 0.0));
        let a = v(&[0.3, -2.0, 7.5]);
        assert!(close(&project(&a, &a).unwrap(), &a, 1e-15));
        // <a,v>/|a|^2 = 3/2
        assert!(close(&project(&v(&[2.0, 1.0]), &v(&[1.0, 1.0])).unwrap(), &v(&[1.5, 1.5]), 1e-15));
    }

    #[test]
    fn project_errors() {
        assert_eq!(project(&v(&[1.0, 2.0]), &v(&[0.0, 0.0])), Err(Error::ZeroDirection));
        assert_eq!(
            project(&v(&[1.0, 2.0]), &v(&[1.0])),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        );
    }

    #[test]
    fn projected_distance_examples() {
        let c = RealVector::zeros(2);
        let p = v(&[1.0, 2.0]);
        assert_eq!(projected_distance(&p, &p, &c).unwrap(), 0.0);
        // orthogonal: the projection vanishes
        let q = v(&[-6.0, 3.0]);
        let r = q.norm();
        assert!((projected_distance(&p, &q, &c).unwrap() - r).abs() < 1e-12);
        // r (1 - cos 60°) = 2
        let p = v(&[2.0, 2.0 * 3f64.sqrt()]);
        let q = v(&[4.0, 0.0]);
        assert!((projected_distance(&p, &q, &c).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(projected_distance(&p, &c, &c), Err(Error::ZeroDirection));
    }

    #[test]
    fn sampling_respects_subspace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = RealVector::zeros(3);
        let basis = [RealVector::unit(3, 2)];
        for _ in 0..50 {
            let w = sample_on_subspace_sphere(&c, 2.0, &basis, &mut rng).unwrap();
            assert!(w[2].abs() < 1e-15);
            assert!((w.norm() - 2.0).abs() < 1e-12);
        }
        let c1 = v(&[5.0]);
        for _ in 0..20 {
            let p = sample_on_subspace_sphere(&c1, 0.5, &[], &mut rng).unwrap();
            assert!((p[0] - 5.5).abs() < 1e-15 || (p[0] - 4.5).abs() < 1e-15);
        }
        assert!(matches!(
            sample_on_subspace_sphere(&c1, 0.5, &[RealVector::unit(1, 0)], &mut rng),
            Err(Error::DegenerateSubspace { .. })
        ));
    }

    #[test]
    fn sampling_is_centered() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 64;
        let c = RealVector::zeros(n);
        let basis: Vec<_> = (0..3).map(|i| RealVector::unit(n, i)).collect();
        let trials = 10_000;
        let mut sum = vec![0.0; n];
        for _ in 0..trials {
            let w = sample_on_subspace_sphere(&c, 3.0, &basis, &mut rng).unwrap();
            for (s, x) in sum.iter_mut().zip(w.as_slice()) {
                *s += x / 3.0;
            }
        }
        let bound = 4.0 / (trials as f64).sqrt();
        for m in sum {
            assert!((m / trials as f64).abs() <= bound);
        }
    }

    fn cfg(r: f64, d: f64, n: usize, sub: usize, max: usize, sat: usize) -> PackingConfig {
        PackingConfig {
            radius: r,
            ambient_dim: n,
            subspace_dim: sub,
            min_projected_distance: d,
            max_points: max,
            saturation_rejections: sat,
            seed: 0,
        }
    }

    #[test]
    fn greedy_degenerate_gives_one_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = greedy_angle_dense(&cfg(1.0, 3.0, 5, 5, 10, 10), &RealVector::zeros(5), &[], &mut rng).unwrap();
        assert_eq!(a.len(), 1);
        assert!(a.degenerate);
        assert!(a.audit().is_valid());
    }

    #[test]
    fn greedy_fills_budget_in_high_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = greedy_angle_dense(&cfg(5.0, 0.1, 8, 8, 100, 1000), &RealVector::zeros(8), &[], &mut rng).unwrap();
        assert_eq!(a.len(), 100);
        assert!(!a.saturated);
        let audit = a.audit();
        assert!(audit.is_valid(), "{:?}", audit.violations);
        assert!(audit.max_radius_error <= 5e-9);
        assert!(audit.min_projected_distance >= 0.1);
    }

    #[test]
    fn greedy_2d_saturation_is_bounded_by_circle_oracle() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = greedy_angle_dense(&cfg(4.0, 2.0, 2, 2, 100, 5000), &RealVector::zeros(2), &[], &mut rng)
                .unwrap();
            assert!(a.saturated);
            assert!((3..=6).contains(&a.len()), "got {}", a.len());
            assert!(a.audit().is_valid());
        }
    }

    #[test]
    fn greedy_validates_config() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = RealVector::zeros(4);
        assert!(greedy_angle_dense(&cfg(1.0, 0.1, 4, 4, 0, 10), &c, &[], &mut rng).is_err());
        assert!(greedy_angle_dense(&cfg(1.0, 0.1, 4, 3, 5, 10), &c, &[], &mut rng).is_err());
        assert!(greedy_angle_dense(&cfg(-1.0, 0.1, 4, 4, 5, 10), &c, &[], &mut rng).is_err());
    }

    #[test]
    fn equiangular_examples() {
        assert_eq!(equiangular_2d(4.0, 2.0).unwrap().len(), 6);
        assert_eq!(equiangular_2d(4.0, 4.0).unwrap().len(), 4);
        assert_eq!(equiangular_2d(1.0, 2.0).unwrap().len(), 2);
        assert!(matches!(equiangular_2d(1.0, 2.5), Err(Error::DegenerateGeometry(_))));
        for (r, d) in [(4.0, 2.0), (4.0, 4.0), (1.0, 2.0), (3.0, 0.7)] {
            assert!(equiangular_2d(r, d).unwrap().audit().is_valid());
        }
    }

    #[test]
    fn angle_and_chord_bounds() {
        let t = min_angle_bound(2.0, 4.0).unwrap();
        assert!((t - PI / 3.0).abs() < 1e-14);
        assert!((min_angle_bound(2.0, 1.0).unwrap() - PI).abs() < 1e-14);
        assert!(min_angle_bound(1e-12, 1.0).unwrap() < 1e-5);
        assert!(min_angle_bound(3.0, 1.0).is_err());
        assert!(min_angle_bound(1.0, 0.0).is_err());

        assert_eq!(chord_bound(2.0, 4.0).unwrap(), 4.0);
        assert!((chord_bound(2.0, 2.0).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(chord_bound(1e-14, 1.0).unwrap() < 1e-6);
        assert!(chord_bound(0.0, 1.0).is_err());
    }

    #[test]
    fn size_bound_examples() {
        assert!((packing_size_lower_bound(2, 4.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(packing_size_lower_bound(7, 1.5, 3.0).unwrap(), 0.0);
        assert!((packing_size_lower_bound(16, 8.0, 1.0).unwrap() - 32.0).abs() < 1e-12);
        assert!(packing_size_lower_bound(4, 1.0, 2.5).is_err());
    }
}
