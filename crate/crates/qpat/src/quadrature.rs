//! Quadrature rules shared across the crate: cached Gauss–Legendre nodes,
//! product rules on spheres and spherical caps, and adaptive Simpson for the
//! 1-D oracles.

use crate::geometry::{orthonormal_complement, Vec3};
use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Gauss–Legendre
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
/// Computed by Newton iteration on Legendre polynomials and cached per n.
pub fn gauss_legendre(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static (Vec<f64>, Vec<f64>)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(&r) = map.get(&n) {
        return r;
    }
    let rule = Box::leak(Box::new(compute_gauss_legendre(n)));
    map.insert(n, rule);
    rule
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-style initial guess.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Applies the n-point Gauss–Legendre rule to `f` on `[a, b]`.
pub fn integrate_gl<F: FnMut(f64) -> f64>(n: usize, a: f64, b: f64, mut f: F) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

// ---------------------------------------------------------------------------
// Adaptive Simpson (1-D oracle workhorse)
// ---------------------------------------------------------------------------

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
        }
    }
    if b <= a {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

// ---------------------------------------------------------------------------
// Sphere and cap product rules
// ---------------------------------------------------------------------------

/// A direction rule: unit vectors with weights summing to the covered solid
/// angle.
#[derive(Debug, Clone)]
pub struct DirectionRule {
    pub dirs: Vec<Vec3>,
    pub weights: Vec<f64>,
}

/// Product rule over the full sphere: Gauss–Legendre in the polar cosine,
/// uniform midpoint in azimuth. Exact solid angle 4π.
pub fn sphere_rule(n_polar: usize, n_azimuth: usize) -> DirectionRule {
    cap_rule_about(Vec3::new(0.0, 0.0, 1.0), -1.0, n_polar, n_azimuth)
}

/// Product rule over the spherical cap `{ u : u·axis ≥ cos_lo }` (set
/// `cos_lo = -1` for the full sphere). Weights sum to `2π (1 − cos_lo)`.
pub fn cap_rule_about(axis: Vec3, cos_lo: f64, n_polar: usize, n_azimuth: usize) -> DirectionRule {
    let axis = axis.normalized();
    let p2 = orthonormal_complement(axis);
    let p3 = axis.cross(p2);
    let (nodes, weights) = gauss_legendre(n_polar);
    let mut dirs = Vec::with_capacity(n_polar * n_azimuth);
    let mut wts = Vec::with_capacity(n_polar * n_azimuth);
    let mid = 0.5 * (cos_lo + 1.0);
    let half = 0.5 * (1.0 - cos_lo);
    let wphi = TAU / n_azimuth as f64;
    for (x, wu) in nodes.iter().zip(weights) {
        let u = mid + half * x;
        let s = (1.0 - u * u).max(0.0).sqrt();
        for ia in 0..n_azimuth {
            let phi = TAU * (ia as f64 + 0.5) / n_azimuth as f64;
            dirs.push(axis * u + (p2 * phi.cos() + p3 * phi.sin()) * s);
            wts.push(wu * half * wphi);
        }
    }
    DirectionRule { dirs, weights: wts }
}

/// Hemisphere rule (z ≥ 0 half) for plane-direction families; weights sum to
/// 2π. Callers exploiting evenness of plane integrals double the weights.
pub fn hemisphere_rule(n_polar: usize, n_azimuth: usize) -> DirectionRule {
    cap_rule_about(Vec3::new(0.0, 0.0, 1.0), 0.0, n_polar, n_azimuth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_match_known_five_point_rule() {
        let (nodes, weights) = gauss_legendre(5);
        // Abramowitz & Stegun 25.4.29
        let n_ref = [
            -0.906179845938664,
            -0.538469310105683,
            0.0,
            0.538469310105683,
            0.906179845938664,
        ];
        let w_ref = [
            0.236926885056189,
            0.478628670499366,
            0.568888888888889,
            0.478628670499366,
            0.236926885056189,
        ];
        for i in 0..5 {
            assert!((nodes[i] - n_ref[i]).abs() < 1e-14);
            assert!((weights[i] - w_ref[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn gl_exact_for_polynomials() {
        // n-point GL is exact through degree 2n-1.
        let val = integrate_gl(6, 0.0, 1.0, |x| x.powi(11));
        assert!((val - 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_simpson_on_smooth_and_peaked() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
        let v = adaptive_simpson(&|x: f64| (-(x * x) * 200.0).exp(), -1.0, 1.0, 1e-13);
        let exact = (PI / 200.0f64).sqrt(); // erf(sqrt(200)) ~ 1
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn sphere_rule_integrates_low_order_harmonics() {
        let rule = sphere_rule(12, 24);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 4.0 * PI).abs() < 1e-12);
        // integral of z^2 over the sphere is 4*pi/3
        let z2: f64 = rule
            .dirs
            .iter()
            .zip(&rule.weights)
            .map(|(d, w)| w * d.z * d.z)
            .sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
        // odd harmonic vanishes
        let x1: f64 = rule
            .dirs
            .iter()
            .zip(&rule.weights)
            .map(|(d, w)| w * d.x)
            .sum();
        assert!(x1.abs() < 1e-13);
    }

    #[test]
    fn cap_rule_solid_angle() {
        let axis = Vec3::new(0.3, -0.5, 0.8);
        let cos_lo = 0.9;
        let rule = cap_rule_about(axis, cos_lo, 8, 16);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - TAU * (1.0 - cos_lo)).abs() < 1e-12);
        for d in &rule.dirs {
            assert!((d.norm() - 1.0).abs() < 1e-12);
            assert!(d.dot(axis.normalized()) >= cos_lo - 1e-12);
        }
    }
}
