//! Points, planes, segments, prolate spheroids, and the focal coordinate
//! chart `(r₁, r₂, φ)` used to integrate over spheroids with foci `x`, `y`.
//!
//! In the focal chart a point is addressed by its distances `r₁ = |z−x|`,
//! `r₂ = |z−y|` and a rotation angle `φ` about the focal axis. The volume
//! element is `r₁ r₂ / |y−x|`, which cancels the `1/(|z−x||z−y|)`
//! singularities of the wave kernel, so no singularity subtraction is ever
//! needed downstream.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

/// A point or direction in R³ (sound speed and background density are
/// normalized to 1, so coordinates are dimensionless).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        self / n
    }

    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn component(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}
impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}
impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}
impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}
impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}
impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

// ---------------------------------------------------------------------------
// Plane, segment, spheroid
// ---------------------------------------------------------------------------

/// The plane `E_{r,θ} = { p : p·θ = r }` with unit normal `θ`.
#[derive(Debug, Clone, Copy)]
pub struct Plane {
    pub r: f64,
    pub theta: Vec3,
}

impl Plane {
    /// Builds a plane; `theta` is normalized, a zero normal is rejected.
    pub fn new(r: f64, theta: Vec3) -> Result<Plane> {
        let n = theta.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain("plane normal must be nonzero".into()));
        }
        Ok(Plane { r, theta: theta / n })
    }

    /// Signed distance from `p` to the plane.
    pub fn signed_dist(&self, p: Vec3) -> f64 {
        p.dot(self.theta) - self.r
    }

    /// An orthonormal in-plane basis `(u, v)` with `u × v = θ`.
    pub fn in_plane_basis(&self) -> (Vec3, Vec3) {
        let u = orthonormal_complement(self.theta);
        let v = self.theta.cross(u);
        (u, v)
    }
}

/// The straight segment `L_{a,b}`.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub a: Vec3,
    pub b: Vec3,
}

impl Segment {
    pub fn new(a: Vec3, b: Vec3) -> Segment {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Point at arc-length parameter `s ∈ [0, length]`.
    pub fn at(&self, s: f64) -> Vec3 {
        self.a + (self.b - self.a).normalized() * s
    }
}

/// The prolate spheroid `𝓔_t(x, y) = { z : |z−x| + |z−y| ≤ t }`.
#[derive(Debug, Clone, Copy)]
pub struct Spheroid {
    pub focus_a: Vec3,
    pub focus_b: Vec3,
    pub t: f64,
}

impl Spheroid {
    pub fn new(focus_a: Vec3, focus_b: Vec3, t: f64) -> Spheroid {
        Spheroid { focus_a, focus_b, t }
    }

    pub fn focal_dist(&self) -> f64 {
        self.focus_a.dist(self.focus_b)
    }

    pub fn is_empty(&self) -> bool {
        self.t < self.focal_dist()
    }

    pub fn contains(&self, z: Vec3) -> bool {
        z.dist(self.focus_a) + z.dist(self.focus_b) <= self.t
    }

    /// Closed-form volume `(4π/3)(t/2)((t/2)² − (d/2)²)` of the nonempty
    /// spheroid (semi-major `t/2`, semi-minor `√(t²−d²)/2`).
    pub fn volume(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let a = self.t / 2.0;
        let d2 = self.focal_dist() / 2.0;
        4.0 * std::f64::consts::PI / 3.0 * a * (a * a - d2 * d2)
    }

    /// An axis-aligned box enclosing the spheroid.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        if self.is_empty() {
            let m = (self.focus_a + self.focus_b) * 0.5;
            return (m, m);
        }
        let d = self.focal_dist();
        let a = self.t / 2.0;
        let b = (self.t * self.t - d * d).sqrt() / 2.0;
        let mid = (self.focus_a + self.focus_b) * 0.5;
        // conservative: cube of half-extent max(a, b) per axis
        let e = a.max(b);
        (mid - Vec3::new(e, e, e), mid + Vec3::new(e, e, e))
    }
}

// ---------------------------------------------------------------------------
// Focal chart
// ---------------------------------------------------------------------------

/// Deterministic unit vector orthogonal to `e1`: the coordinate axis with the
/// smallest |component| along `e1`, projected and normalized. Avoids the
/// near-parallel degeneracy for any input direction.
pub fn orthonormal_complement(e1: Vec3) -> Vec3 {
    let a = [e1.x.abs(), e1.y.abs(), e1.z.abs()];
    let mut k = 0;
    if a[1] < a[k] {
        k = 1;
    }
    if a[2] < a[k] {
        k = 2;
    }
    let mut axis = Vec3::ZERO;
    match k {
        0 => axis.x = 1.0,
        1 => axis.y = 1.0,
        _ => axis.z = 1.0,
    }
    (axis - e1 * axis.dot(e1)).normalized()
}

/// Focal coordinates around the pair `(x, y)`, `x ≠ y`: an orthonormal frame
/// with `e1 = (y−x)/|y−x|`, in which the point with focal distances
/// `(r₁, r₂)` and rotation `φ` is
///
/// ```text
/// z = (x+y)/2 + ξ e1 + η (cos φ e2 + sin φ e3),
/// ξ = (r₁² − r₂²)/(2|y−x|),   η² = r₁² − (|y−x|/2 + ξ)².
/// ```
#[derive(Debug, Clone, Copy)]
pub struct FocalChart {
    pub x: Vec3,
    pub y: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
    /// |y − x|
    pub d: f64,
}

impl FocalChart {
    pub fn new(x: Vec3, y: Vec3) -> Result<FocalChart> {
        let diff = y - x;
        let d = diff.norm();
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::Domain(
                "focal chart requires distinct points x != y".into(),
            ));
        }
        let e1 = diff / d;
        let e2 = orthonormal_complement(e1);
        let e3 = e1.cross(e2);
        Ok(FocalChart { x, y, e1, e2, e3, d })
    }

    /// `ξ` and clamped `η²` for focal distances `(r₁, r₂)`. Round-off can push
    /// `η²` slightly negative on the chart boundary; tiny negatives are
    /// clamped to zero, violations beyond round-off are a domain error.
    pub fn xi_eta_sq(&self, r1: f64, r2: f64) -> Result<(f64, f64)> {
        if r1 < 0.0 || r2 < 0.0 {
            return Err(Error::Domain("focal distances must be nonnegative".into()));
        }
        if r2 > self.d + r1 || r2 < (self.d - r1).abs() - 1e-9 * (1.0 + r1 + self.d) {
            return Err(Error::Domain(format!(
                "triangle inequality violated: d={} r1={} r2={}",
                self.d, r1, r2
            )));
        }
        let xi = (r1 * r1 - r2 * r2) / (2.0 * self.d);
        let h = 0.5 * self.d + xi;
        let eta_sq = r1 * r1 - h * h;
        let scale = (r1 * r1).max(1e-300);
        if eta_sq < -1e-9 * scale {
            return Err(Error::Domain(format!(
                "focal radicand negative beyond round-off: {eta_sq}"
            )));
        }
        Ok((xi, eta_sq.max(0.0)))
    }

    /// The chart point for `(r₁, r₂, φ)`. Postcondition: `|z−x| = r₁` and
    /// `|z−y| = r₂` up to round-off.
    pub fn point(&self, r1: f64, r2: f64, phi: f64) -> Result<Vec3> {
        let (xi, eta_sq) = self.xi_eta_sq(r1, r2)?;
        let eta = eta_sq.sqrt();
        Ok((self.x + self.y) * 0.5
            + self.e1 * xi
            + (self.e2 * phi.cos() + self.e3 * phi.sin()) * eta)
    }

    /// Volume element `|det dφ| = r₁ r₂ / |y−x|` of the chart.
    pub fn jacobian(&self, r1: f64, r2: f64) -> f64 {
        r1 * r2 / self.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rand_vec(rng: &mut impl Rng, s: f64) -> Vec3 {
        Vec3::new(
            rng.gen_range(-s..s),
            rng.gen_range(-s..s),
            rng.gen_range(-s..s),
        )
    }

    #[test]
    fn chart_degenerate_on_axis_midpoint() {
        // r1 = r2 = 1 with |y-x| = 2 collapses to the midpoint for any phi.
        let c = FocalChart::new(Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0)).unwrap();
        for phi in [0.0, 1.0, 2.5, 5.9] {
            let z = c.point(1.0, 1.0, phi).unwrap();
            assert!(z.dist(Vec3::new(1.0, 0.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn chart_collapsed_spheroid_lands_on_segment() {
        // r1 + r2 = |y-x| puts the point on the segment at x + r1 e1.
        let x = Vec3::new(0.3, -0.2, 1.0);
        let y = Vec3::new(-0.8, 0.4, 0.1);
        let c = FocalChart::new(x, y).unwrap();
        let d = c.d;
        for r1 in [0.1 * d, 0.5 * d, 0.9 * d] {
            let z = c.point(r1, d - r1, 2.1).unwrap();
            let expect = x + c.e1 * r1;
            assert!(z.dist(expect) < 1e-10);
        }
    }

    #[test]
    fn chart_point_reproduces_focal_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let x = rand_vec(&mut rng, 2.0);
            let mut y = rand_vec(&mut rng, 2.0);
            if x.dist(y) < 1e-3 {
                y = y + Vec3::new(1.0, 0.0, 0.0);
            }
            let c = FocalChart::new(x, y).unwrap();
            let d = c.d;
            let r1 = rng.gen_range(0.01..3.0);
            let lo = (d - r1).abs();
            let hi = d + r1;
            let r2 = rng.gen_range(lo..hi);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = c.point(r1, r2, phi).unwrap();
            let scale = 1.0 + r1.max(r2);
            assert!(
                (z.dist(x) - r1).abs() <= 1e-10 * scale,
                "r1 mismatch: {} vs {}",
                z.dist(x),
                r1
            );
            assert!(
                (z.dist(y) - r2).abs() <= 1e-10 * scale,
                "r2 mismatch: {} vs {}",
                z.dist(y),
                r2
            );
        }
    }

    #[test]
    fn chart_rotation_in_transverse_plane_matches_phi_shift() {
        // Rotating (e2, e3) by an angle is the same as shifting phi.
        let x = Vec3::new(0.0, 0.0, 0.0);
        let y = Vec3::new(1.0, 1.0, 0.5);
        let c = FocalChart::new(x, y).unwrap();
        let beta = 0.7;
        let e2r = c.e2 * beta.cos() + c.e3 * beta.sin();
        let e3r = c.e1.cross(e2r);
        let rotated = FocalChart { e2: e2r, e3: e3r, ..c };
        let (r1, r2) = (1.3, 1.1);
        for phi in [0.0, 0.4, 3.0] {
            let a = c.point(r1, r2, phi + beta).unwrap();
            let b = rotated.point(r1, r2, phi).unwrap();
            assert!(a.dist(b) < 1e-12);
        }
    }

    #[test]
    fn chart_jacobian_formula() {
        let c = FocalChart::new(Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0)).unwrap();
        assert_eq!(c.jacobian(0.0, 0.0), 0.0);
        assert!((c.jacobian(1.0, 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chart_rejects_coincident_points() {
        let p = Vec3::new(0.5, 0.5, 0.5);
        assert!(FocalChart::new(p, p).is_err());
    }

    #[test]
    fn chart_rejects_triangle_violation() {
        let c = FocalChart::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(c.point(0.2, 0.1, 0.0).is_err()); // r2 < |d - r1|
        assert!(c.point(0.2, 1.5, 0.0).is_err()); // r2 > d + r1
    }

    #[test]
    fn spheroid_volume_and_membership() {
        let s = Spheroid::new(Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0), 3.0);
        // semi axes: a = 1.5, b = sqrt(9-4)/2
        let b = (9.0f64 - 4.0).sqrt() / 2.0;
        let expect = 4.0 * std::f64::consts::PI / 3.0 * 1.5 * b * b;
        assert!((s.volume() - expect).abs() < 1e-12 * expect);
        assert!(s.contains(Vec3::new(1.0, 0.0, 0.0)));
        assert!(!s.contains(Vec3::new(3.1, 0.0, 0.0)));
        let empty = Spheroid::new(Vec3::ZERO, Vec3::new(2.0, 0.0, 0.0), 1.0);
        assert!(empty.is_empty());
        assert_eq!(empty.volume(), 0.0);
    }

    #[test]
    fn plane_basis_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rand_vec(&mut rng, 1.0);
            if n.norm() < 1e-6 {
                continue;
            }
            let p = Plane::new(rng.gen_range(-1.0..1.0), n).unwrap();
            let (u, v) = p.in_plane_basis();
            assert!(u.dot(p.theta).abs() < 1e-12);
            assert!(v.dot(p.theta).abs() < 1e-12);
            assert!((u.norm() - 1.0).abs() < 1e-12);
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!(u.dot(v).abs() < 1e-12);
        }
    }
}
