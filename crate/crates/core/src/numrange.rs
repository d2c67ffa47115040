//! Numerical range `W(A) = {⟨Ax, x⟩ : ‖x‖ = 1}` through its support function.
//!
//! For a direction `θ` the support value `h(θ) = max Re(e^{−iθ} z)` over
//! `z ∈ W(A)` is the largest eigenvalue of the rotated Hermitian part
//! `H_θ`, and a unit top eigenvector `v` gives the boundary point
//! `⟨Av, v⟩`. A uniform sweep of `θ` traces the boundary; the numerical
//! radius is `max_θ h(θ)`, refined with a golden-section search around the
//! coarse maxima.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Default number of sweep directions.
pub const DEFAULT_SAMPLES: usize = 512;

/// Smallest accepted number of sweep directions.
pub const MIN_SAMPLES: usize = 8;

/// Width of the bracket at which the golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-10;

/// At most this many coarse local maxima are refined.
const MAX_REFINED_PEAKS: usize = 16;

/// One direction of the support-function sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportSample {
    pub theta: f64,
    /// `h(θ) = λ_max(H_θ)`.
    pub support_value: f64,
    /// `⟨Av, v⟩` for the top eigenvector `v` of `H_θ`.
    pub boundary_point: Complex64,
}

/// Sampled boundary of the closed numerical range together with the
/// numerical radius and a point of cl W(A) attaining it.
#[derive(Debug, Clone)]
pub struct NumericalRangeProfile {
    /// Uniformly spaced samples `θ_k = 2πk/m`.
    pub samples: Vec<SupportSample>,
    pub radius: f64,
    pub theta_star: f64,
    pub extremal_point: Complex64,
    /// `max(1, ‖A‖)`, the scale used by tolerance checks.
    pub scale: f64,
}

impl NumericalRangeProfile {
    /// Tests `Re(e^{−iθ}z) ≤ h(θ) + tol` for every swept direction.
    ///
    /// This is membership in the circumscribed polygon of the sweep, which
    /// contains cl W(A).
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.samples
            .iter()
            .all(|s| support_of_point(z, s.theta) <= s.support_value + tol)
    }

    /// Default membership tolerance `1e-7 · max(1, ‖A‖)`.
    pub fn default_tol(&self) -> f64 {
        1e-7 * self.scale
    }

    pub fn boundary_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|s| s.boundary_point)
    }

    /// Smallest cross product of consecutive boundary edges, walking the
    /// samples in θ order. Nonnegative (up to rounding) for a convex
    /// counter-clockwise polygon.
    pub fn min_turn(&self) -> f64 {
        let pts: Vec<Complex64> = self.boundary_points().collect();
        let m = pts.len();
        (0..m)
            .map(|k| {
                let a = pts[k];
                let b = pts[(k + 1) % m];
                let c = pts[(k + 2) % m];
                let e1 = b - a;
                let e2 = c - b;
                e1.re * e2.im - e1.im * e2.re
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// `Re(e^{−iθ} z)`.
pub fn support_of_point(z: Complex64, theta: f64) -> f64 {
    z.re * theta.cos() + z.im * theta.sin()
}

pub fn support_function(a: &ComplexMatrix, theta: f64) -> Result<SupportSample> {
    let h = a.rotated_hermitian_part(theta);
    let eig = h.eig_hermitian()?;
    let top = a.dim() - 1;
    let v = eig.eigenvector(top);
    Ok(SupportSample {
        theta,
        support_value: eig.eigenvalues[top],
        boundary_point: a.quadratic_form(&v),
    })
}

pub fn boundary_sweep(a: &ComplexMatrix, samples: usize) -> Result<NumericalRangeProfile> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "sample count {samples} is below {MIN_SAMPLES}"
        )));
    }
    let step = TAU / samples as f64;
    let swept = (0..samples)
        .into_par_iter()
        .map(|k| support_function(a, k as f64 * step))
        .collect::<Result<Vec<_>>>()?;

    let scale = a.spectral_norm().max(1.0);
    let best = refine_radius(a, &swept, step)?;
    // The peak of h is flat, so the searched θ is only good to ~1e-8; the
    // direction of the extremal point itself is exact.
    let theta_star = if best.boundary_point.norm() > 0.0 {
        normalize_angle(best.boundary_point.arg())
    } else {
        best.theta
    };
    Ok(NumericalRangeProfile {
        samples: swept,
        radius: best.support_value,
        theta_star,
        extremal_point: best.boundary_point,
        scale,
    })
}

/// Golden-section refinement of `max h(θ)`.
///
/// Any direction whose true support value beats the coarse maximum `h*` has
/// a coarse neighbour within half a step, and that neighbour's value is at
/// least `h* cos(step/2)`; so only coarse local maxima above that band can
/// hide the global maximum. Ties within `1e-12 · max(1, w)` resolve to the
/// smallest θ.
fn refine_radius(a: &ComplexMatrix, swept: &[SupportSample], step: f64) -> Result<SupportSample> {
    let m = swept.len();
    let coarse_max = swept.iter().map(|s| s.support_value).fold(f64::NEG_INFINITY, f64::max);
    let band = if coarse_max > 0.0 {
        coarse_max * (0.5 * step).cos()
    } else {
        coarse_max
    };
    let value = |k: usize| swept[k % m].support_value;

    let mut peaks: Vec<usize> = (0..m)
        .filter(|&k| {
            let v = value(k);
            v >= band && v >= value(k + m - 1) && v >= value(k + 1)
        })
        .collect();
    // Highest first; stable, so equal values keep index order.
    peaks.sort_by(|&i, &j| value(j).total_cmp(&value(i)));
    peaks.truncate(MAX_REFINED_PEAKS);
    peaks.sort_unstable();

    let refined = peaks
        .par_iter()
        .map(|&k| refine_peak(a, swept[k], step))
        .collect::<Result<Vec<_>>>()?;

    let top = refined.iter().map(|s| s.support_value).fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * top.abs().max(1.0);
    let best = refined
        .iter()
        .filter(|s| s.support_value >= top - tie)
        .min_by(|x, y| x.theta.total_cmp(&y.theta))
        .copied()
        .expect("at least one coarse peak exists");
    Ok(best)
}

fn refine_peak(a: &ComplexMatrix, coarse: SupportSample, step: f64) -> Result<SupportSample> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut lo = coarse.theta - step;
    let mut hi = coarse.theta + step;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = support_function(a, x1)?;
    let mut f2 = support_function(a, x2)?;
    while hi - lo > REFINE_TOL {
        if f1.support_value >= f2.support_value {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = support_function(a, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = support_function(a, x2)?;
        }
    }
    let candidate = if f1.support_value >= f2.support_value { f1 } else { f2 };
    let tie = 1e-12 * coarse.support_value.abs().max(1.0);
    if candidate.support_value <= coarse.support_value + tie {
        return Ok(coarse);
    }
    Ok(SupportSample {
        theta: normalize_angle(candidate.theta),
        ..candidate
    })
}

/// Maps an angle into `[0, 2π)`.
fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `w(A)` from a default-resolution sweep.
pub fn numerical_radius(a: &ComplexMatrix) -> f64 {
    boundary_sweep(a, DEFAULT_SAMPLES)
        .expect("support sweep of a valid matrix")
        .radius
}

/// A point of cl W(A) of maximal modulus `w(A)`, with the smallest-θ
/// tie-break.
pub fn extremal_point(a: &ComplexMatrix) -> Result<Complex64> {
    let profile = boundary_sweep(a, DEFAULT_SAMPLES)?;
    extremal_from_profile(&profile)
}

pub(crate) fn extremal_from_profile(profile: &NumericalRangeProfile) -> Result<Complex64> {
    if profile.radius <= 1e-12 * profile.scale {
        return Err(Error::ZeroOperator);
    }
    Ok(profile.extremal_point)
}

/// Support-function membership test of `z` in cl W(A) over a default sweep.
pub fn membership(a: &ComplexMatrix, z: Complex64, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    Ok(boundary_sweep(a, DEFAULT_SAMPLES)?.contains(z, tol))
}

/// Hull distance helper for tests and examples: distance from `z` to the
/// convex polygon with counter-clockwise vertices `hull`. Zero inside.
pub fn distance_to_convex_polygon(z: Complex64, hull: &[Complex64]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        _ => {
            let inside = hull.len() >= 3
                && (0..hull.len()).all(|k| {
                    let a = hull[k];
                    let b = hull[(k + 1) % hull.len()];
                    let e = b - a;
                    let w = z - a;
                    e.re * w.im - e.im * w.re >= 0.0
                });
            if inside {
                return 0.0;
            }
            (0..hull.len())
                .map(|k| segment_distance(z, hull[k], hull[(k + 1) % hull.len()]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let e = b - a;
    let len2 = e.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * e.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + e * t)).norm()
}

/// Counter-clockwise convex hull (monotone chain) of a point set.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(d: &[Complex64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(d).unwrap()
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn support_examples() {
        let s = support_function(&diag(&[c(1.0, 0.0), c(-1.0, 0.0)]), 0.0).unwrap();
        assert_eq!(s.support_value, 1.0);
        assert!((s.boundary_point - c(1.0, 0.0)).norm() < 1e-15);

        let s = support_function(&nilpotent(), 0.0).unwrap();
        assert!((s.support_value - 0.5).abs() < 1e-15);
        assert!((s.boundary_point.re - 0.5).abs() < 1e-15);

        // h(θ+π) of a Hermitian matrix is −λ_min
        let h = ComplexMatrix::from_real(3, &[2.0, 1.0, 0.0, 1.0, -1.0, 0.5, 0.0, 0.5, 0.3]).unwrap();
        let lmin = h.eig_hermitian().unwrap().min_eigenvalue();
        let s = support_function(&h, PI).unwrap();
        assert!((s.support_value + lmin).abs() < 1e-12);
    }

    #[test]
    fn sweep_of_normal_square() {
        let vertices = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let p = boundary_sweep(&diag(&vertices), 64).unwrap();
        assert!((p.radius - 1.0).abs() < 1e-12);
        let hull = convex_hull(&vertices);
        for z in p.boundary_points() {
            assert!(distance_to_convex_polygon(z, &hull) < 1e-8);
        }
    }

    #[test]
    fn sweep_of_nilpotent_is_disk() {
        let p = boundary_sweep(&nilpotent(), 64).unwrap();
        assert!((p.radius - 0.5).abs() < 1e-12);
        for z in p.boundary_points() {
            assert!((z.norm() - 0.5).abs() < 1e-8);
        }
        assert!(p.min_turn() > 0.0);
    }

    #[test]
    fn sweep_of_scalar() {
        let z = c(0.3, -2.0);
        let p = boundary_sweep(&diag(&[z]), 16).unwrap();
        assert!(p.boundary_points().all(|b| b == z));
        assert_eq!(p.radius, z.norm());
        assert!((p.extremal_point - z).norm() < 1e-15);
    }

    #[test]
    fn sweep_rejects_few_samples() {
        assert!(matches!(
            boundary_sweep(&nilpotent(), 7),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn radius_examples() {
        assert!((numerical_radius(&diag(&[c(2.0, 0.0), c(-1.0, 0.0)])) - 2.0).abs() < 1e-12);
        assert!((numerical_radius(&nilpotent()) - 0.5).abs() < 1e-12);
        assert_eq!(numerical_radius(&ComplexMatrix::zeros(3)), 0.0);
    }

    #[test]
    fn radius_between_random_sample_points() {
        // off-grid maximum: eigenvalue at a direction no sample hits
        let z = Complex64::from_polar(3.0, 0.123456789);
        let a = diag(&[z, c(0.5, 0.5)]);
        let p = boundary_sweep(&a, 16).unwrap();
        assert!((p.radius - 3.0).abs() < 1e-12);
        assert!((p.extremal_point - z).norm() < 1e-8);
        assert!((p.theta_star - 0.123456789).abs() < 1e-12);
        assert!((p.extremal_point - p.radius * Complex64::from_polar(1.0, p.theta_star)).norm() < 1e-8);
    }

    #[test]
    fn extremal_point_tie_breaks() {
        let e = extremal_point(&diag(&[c(1.0, 0.0), c(-1.0, 0.0)])).unwrap();
        assert!((e - c(1.0, 0.0)).norm() < 1e-12);
        let e = extremal_point(&diag(&[c(1.0, 0.0), c(0.0, 1.0), c(-0.5, 0.0)])).unwrap();
        assert!((e - c(1.0, 0.0)).norm() < 1e-12);
        let z = c(-0.25, 4.0);
        assert!((extremal_point(&diag(&[z])).unwrap() - z).norm() < 1e-14);
        assert_eq!(extremal_point(&ComplexMatrix::zeros(2)), Err(Error::ZeroOperator));
    }

    #[test]
    fn membership_examples() {
        assert!(membership(&nilpotent(), c(0.0, 0.0), 1e-7).unwrap());
        let d = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(!membership(&d, c(2.0, 0.0), 1e-7).unwrap());
        assert!(membership(&d, c(0.5, 0.0), 1e-7).unwrap());
        assert!(!membership(&d, c(0.0, 0.1), 1e-7).unwrap());
        assert!(membership(&d, c(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn hull_distance_helper() {
        let hull = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.5, 0.5)]);
        assert_eq!(hull.len(), 4);
        assert_eq!(distance_to_convex_polygon(c(0.5, 0.5), &hull), 0.0);
        assert!((distance_to_convex_polygon(c(2.0, 0.5), &hull) - 1.0).abs() < 1e-15);
        let seg = convex_hull(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!((distance_to_convex_polygon(c(0.0, 0.25), &seg) - 0.25).abs() < 1e-15);
    }
}
