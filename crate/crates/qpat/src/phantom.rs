//! Compactly supported smooth phantoms and the scene holding the ground
//! truth.
//!
//! Fields are finite sums of C^∞ bump primitives
//!
//! ```text
//! b(p) = A · exp(1 − 1/(1 − |p−c|²/R²))   for |p−c| < R,   0 otherwise,
//! ```
//!
//! with closed-form gradient and Laplacian. Bumps (rather than truncated
//! Gaussians) make "supported in Ω" exact, which the large-time polynomial
//! form of the kernel requires.

use crate::error::{Error, Result};
use crate::geometry::{Segment, Vec3};
use crate::quadrature::integrate_gl;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Bump primitives and analytic fields
// ---------------------------------------------------------------------------

/// One spherical bump primitive.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Bump {
    pub center: Vec3,
    pub radius: f64,
    pub amplitude: f64,
}

impl Bump {
    pub fn new(center: Vec3, radius: f64, amplitude: f64) -> Bump {
        Bump { center, radius, amplitude }
    }

    #[inline]
    fn u(&self, p: Vec3) -> f64 {
        1.0 - (p - self.center).norm_sq() / (self.radius * self.radius)
    }

    #[inline]
    pub fn value(&self, p: Vec3) -> f64 {
        let u = self.u(p);
        if u <= 1e-12 {
            return 0.0;
        }
        self.amplitude * (1.0 - 1.0 / u).exp()
    }

    #[inline]
    pub fn gradient(&self, p: Vec3) -> Vec3 {
        let u = self.u(p);
        if u <= 1e-12 {
            return Vec3::ZERO;
        }
        let v = self.amplitude * (1.0 - 1.0 / u).exp();
        (p - self.center) * (-2.0 * v / (self.radius * self.radius * u * u))
    }

    #[inline]
    pub fn laplacian(&self, p: Vec3) -> f64 {
        let u = self.u(p);
        if u <= 1e-12 {
            return 0.0;
        }
        let v = self.amplitude * (1.0 - 1.0 / u).exp();
        let r2 = self.radius * self.radius;
        let u2 = u * u;
        (v / r2) * (4.0 * (1.0 - u) / (u2 * u2) - 8.0 * (1.0 - u) / (u2 * u) - 6.0 / u2)
    }
}

/// A smooth scalar field: finite sum of bump primitives, identically zero
/// outside the union of their support balls.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AnalyticField {
    pub bumps: Vec<Bump>,
}

impl AnalyticField {
    pub fn new(bumps: Vec<Bump>) -> AnalyticField {
        AnalyticField { bumps }
    }

    pub fn single(center: Vec3, radius: f64, amplitude: f64) -> AnalyticField {
        AnalyticField { bumps: vec![Bump::new(center, radius, amplitude)] }
    }

    pub fn zero() -> AnalyticField {
        AnalyticField { bumps: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.bumps.is_empty()
    }

    pub fn value(&self, p: Vec3) -> f64 {
        self.bumps.iter().map(|b| b.value(p)).sum()
    }

    pub fn gradient(&self, p: Vec3) -> Vec3 {
        let mut g = Vec3::ZERO;
        for b in &self.bumps {
            g = g + b.gradient(p);
        }
        g
    }

    pub fn laplacian(&self, p: Vec3) -> f64 {
        self.bumps.iter().map(|b| b.laplacian(p)).sum()
    }

    /// Support balls (center, radius) of the primitives.
    pub fn support_balls(&self) -> Vec<(Vec3, f64)> {
        self.bumps.iter().map(|b| (b.center, b.radius)).collect()
    }

    /// Upper bound on max |field|: sum of |amplitudes|.
    pub fn amplitude_bound(&self) -> f64 {
        self.bumps.iter().map(|b| b.amplitude.abs()).sum()
    }

    /// Radius of the smallest origin-centered ball containing the support.
    pub fn support_radius(&self) -> f64 {
        self.bumps
            .iter()
            .map(|b| b.center.norm() + b.radius)
            .fold(0.0, f64::max)
    }

    /// True if `p` lies inside some support ball.
    pub fn in_support(&self, p: Vec3) -> bool {
        self.bumps
            .iter()
            .any(|b| (p - b.center).norm_sq() < b.radius * b.radius)
    }

    /// Distance from `p` to the support (0 inside).
    pub fn dist_to_support(&self, p: Vec3) -> f64 {
        self.bumps
            .iter()
            .map(|b| ((p - b.center).norm() - b.radius).max(0.0))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Gauss–Legendre line integral of `field` over the segment, split at the
/// entry/exit points of every support ball so each panel integrand is smooth.
/// `n_nodes` is the node count per intersected panel.
pub fn line_integral(field: &AnalyticField, seg: &Segment, n_nodes: usize) -> f64 {
    line_integral_weighted(field, seg, n_nodes, |_, v| v)
}

/// Like [`line_integral`] but integrating `w(s, field(z(s)))` where `s` is
/// the arc length from `seg.a`. Used for the moment-weighted line integrals
/// of the wavefront expansions.
pub fn line_integral_weighted<W: Fn(f64, f64) -> f64>(
    field: &AnalyticField,
    seg: &Segment,
    n_nodes: usize,
    w: W,
) -> f64 {
    let len = seg.length();
    if len == 0.0 || field.is_zero() {
        return 0.0;
    }
    let dir = (seg.b - seg.a) / len;
    let mut cuts = vec![0.0, len];
    for b in &field.bumps {
        let oc = b.center - seg.a;
        let tm = oc.dot(dir);
        let d2 = oc.norm_sq() - tm * tm;
        let rad2 = b.radius * b.radius;
        if d2 >= rad2 {
            continue;
        }
        let half = (rad2 - d2).sqrt();
        for s in [tm - half, tm + half] {
            if s > 0.0 && s < len {
                cuts.push(s);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut acc = 0.0;
    for win in cuts.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        if hi - lo < 1e-14 {
            continue;
        }
        // skip panels that no ball overlaps
        let mid = seg.a + dir * (0.5 * (lo + hi));
        if !field.bumps.iter().any(|b| {
            (mid - b.center).norm() < b.radius + 0.5 * (hi - lo)
        }) {
            continue;
        }
        acc += integrate_gl(n_nodes, lo, hi, |s| w(s, field.value(seg.a + dir * s)));
    }
    acc
}

// ---------------------------------------------------------------------------
// Scene
// ---------------------------------------------------------------------------

/// Ground truth for one experiment: the source `f`, the perturbations `α₁`
/// and `ρ₁`, the expansion parameter `ε`, and the support geometry
/// (Ω of radius `omega_radius` containing supp f, detector sphere Σ of
/// radius `sigma_radius`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scene {
    pub f: AnalyticField,
    pub alpha1: AnalyticField,
    pub rho1: AnalyticField,
    pub epsilon: f64,
    pub omega_radius: f64,
    pub sigma_radius: f64,
}

impl Scene {
    /// Desk-scale default: unit source bump at the origin, perturbation bumps
    /// of radius 0.35 at ±0.3 on the x-axis, ε = 0.05, Ω radius 1.2,
    /// Σ radius 3. Keeps every support strictly nested and travel times short.
    pub fn default_scene() -> Scene {
        Scene {
            f: AnalyticField::single(Vec3::ZERO, 1.0, 1.0),
            alpha1: AnalyticField::single(Vec3::new(0.3, 0.0, 0.0), 0.35, 1.0),
            rho1: AnalyticField::single(Vec3::new(-0.3, 0.0, 0.0), 0.35, 1.0),
            epsilon: 0.05,
            omega_radius: 1.2,
            sigma_radius: 3.0,
        }
    }

    /// Same geometry with `ε` replaced (the expansion parameter is a scene
    /// field precisely so tests can sweep it).
    pub fn with_epsilon(&self, epsilon: f64) -> Scene {
        Scene { epsilon, ..self.clone() }
    }

    /// Checks the support nesting and the positivity constraints on the
    /// perturbed coefficients. `margin` is the minimal clearance between
    /// the perturbation supports and the boundary of supp f.
    pub fn validate(&self, margin: f64) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config("scene.epsilon must be >= 0".into()));
        }
        if self.f.is_zero() {
            return Err(Error::Config("scene.f must have at least one bump".into()));
        }
        for (name, field) in [("alpha1", &self.alpha1), ("rho1", &self.rho1)] {
            for (c, r) in field.support_balls() {
                let inside = self.f.bumps.iter().any(|fb| {
                    (c - fb.center).norm() + r <= fb.radius - margin
                });
                if !inside {
                    return Err(Error::Config(format!(
                        "scene.{name}: support ball at ({}, {}, {}) r={} is not \
                         strictly inside supp f (margin {margin})",
                        c.x, c.y, c.z, r
                    )));
                }
            }
        }
        if self.f.support_radius() > self.omega_radius {
            return Err(Error::Config(
                "scene.omega_radius must contain supp f".into(),
            ));
        }
        if self.omega_radius >= self.sigma_radius {
            return Err(Error::Config(
                "scene.sigma_radius must exceed omega_radius".into(),
            ));
        }
        let ba = self.alpha1.amplitude_bound();
        let br = self.rho1.amplitude_bound();
        if 1.0 - self.epsilon * ba <= 0.0 || 1.0 - self.epsilon * (ba + br) <= 0.0 {
            return Err(Error::Config(
                "scene.epsilon too large: perturbed coefficients lose positivity"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Support balls of α₁ and ρ₁ combined.
    pub fn perturbation_balls(&self) -> Vec<(Vec3, f64)> {
        let mut v = self.alpha1.support_balls();
        v.extend(self.rho1.support_balls());
        v
    }

    /// Distance from `p` to the union of the perturbation supports.
    pub fn dist_to_perturbations(&self, p: Vec3) -> f64 {
        self.alpha1
            .dist_to_support(p)
            .min(self.rho1.dist_to_support(p))
    }
}
