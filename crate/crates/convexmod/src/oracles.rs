//! Closed-form oracles: every formula used as ground truth by the
//! verification suites, kept free of tolerance knobs.

use crate::body::GraphDomain2D;
use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Volume of the unit ball in R^n; |B^0| = 1 by convention.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

/// f for the unit ball at boundary distance d:
/// |B^n| / [d (2 - d)]^{(n+1)/2}.
pub fn ball_f(n: usize, d: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) || d == 0.0 {
        return Err(Error::DomainError(format!("d = {d} outside (0, 1]")));
    }
    Ok(unit_ball_volume(n) / (d * (2.0 - d)).powf((n as f64 + 1.0) / 2.0))
}

/// Gaussian curvature of an axis-aligned ellipsoid at the pole
/// (0, ..., 0, -l_n): l_n^{n-1} / (l_1^2 ... l_{n-1}^2).
pub fn ellipsoid_curvature(semi_axes: &[f64]) -> f64 {
    let n = semi_axes.len();
    let l_n = semi_axes[n - 1];
    let denom: f64 = semi_axes[..n - 1].iter().map(|l| l * l).product();
    l_n.powi(n as i32 - 1) / denom
}

/// f for the ellipsoid at a point on the l_n axis at pole distance d:
/// sqrt(kappa) |B^n| / [d (2 - d / l_n)]^{(n+1)/2}, valid while the pole
/// is the nearest boundary point (conservative guard
/// d <= min_j l_j^2 / l_n).
pub fn ellipsoid_f(semi_axes: &[f64], d: f64) -> Result<f64> {
    let n = semi_axes.len();
    let l_n = semi_axes[n - 1];
    let guard = semi_axes
        .iter()
        .map(|l| l * l / l_n)
        .fold(f64::MAX, f64::min);
    if d <= 0.0 || d > guard {
        return Err(Error::PoleNotNearest { d, guard });
    }
    let kappa = ellipsoid_curvature(semi_axes);
    Ok(kappa.sqrt() * unit_ball_volume(n)
        / (d * (2.0 - d / l_n)).powf((n as f64 + 1.0) / 2.0))
}

/// f for the parabolic region {x2 > kappa0 x1^2 / 2} at (0, delta):
/// sqrt(kappa0) pi / (2 delta)^{3/2}.
pub fn parabola_f(kappa0: f64, delta: f64) -> Result<f64> {
    if kappa0 <= 0.0 || delta <= 0.0 {
        return Err(Error::DomainError("kappa0, delta must be positive".into()));
    }
    Ok(kappa0.sqrt() * std::f64::consts::PI / (2.0 * delta).powf(1.5))
}

/// Support of the shifted normalized parabola region {x2 > x1^2} - e2:
/// -y1^2/(4 y2) - y2 for y2 < 0, +infinity otherwise. Membership in the
/// polar is value <= 1; the polar is the ellipse y1^2 + 4 (y2 + 1/2)^2 <= 1.
pub fn parabola_polar_support(y: &Vector) -> f64 {
    let (y1, y2) = (y[0], y[1]);
    if y2 >= 0.0 {
        if y1 == 0.0 && y2 == 0.0 {
            return 0.0;
        }
        return f64::INFINITY;
    }
    -y1 * y1 / (4.0 * y2) - y2
}

/// Leading term of |S*(x - delta nu, nu)| at a curvature-kappa boundary
/// point: sqrt(kappa) |B^{n-1}| / (2 delta)^{(n-1)/2}.
pub fn section_asymptotic(kappa: f64, n: usize, delta: f64) -> f64 {
    kappa.sqrt() * unit_ball_volume(n - 1) / (2.0 * delta).powf((n as f64 - 1.0) / 2.0)
}

/// Sharp small-delta constant for curvature-pinched domains:
/// (2^{(n+1)/2} / (|B^n| sqrt(kappa0)))^{1/n}.
pub fn t1_constant(n: usize, kappa0: f64) -> f64 {
    (2f64.powf((n as f64 + 1.0) / 2.0) / (unit_ball_volume(n) * kappa0.sqrt()))
        .powf(1.0 / n as f64)
}

/// Holder exponent for power-law contact: (1 + sum 1/p_j) / n.
pub fn corollary_alpha(n: usize, exponents: &[f64]) -> Result<f64> {
    if exponents.is_empty() || exponents.len() > n - 1 {
        return Err(Error::DomainError("need 1 <= k <= n - 1 exponents".into()));
    }
    if exponents.iter().any(|&p| p < 1.0) {
        return Err(Error::DomainError("exponents must satisfy p >= 1".into()));
    }
    Ok((1.0 + exponents.iter().map(|p| 1.0 / p).sum::<f64>()) / n as f64)
}

/// Two-sided bounds for graph domains:
/// [ (1/2) sqrt(delta h^{-1}(delta)), sqrt(2) sqrt(delta h^{-1}(delta)) ].
pub fn graph2d_bounds(domain: &GraphDomain2D, delta: f64) -> Result<(f64, f64)> {
    if delta <= 0.0 || delta >= domain.d / 2.0 {
        return Err(Error::DeltaTooLarge {
            delta,
            limit: domain.d / 2.0,
        });
    }
    let hinv = domain.h_inverse(delta)?;
    let base = (delta * hinv).sqrt();
    Ok((0.5 * base, 2f64.sqrt() * base))
}

/// Limit volume of the subgradient cap set:
/// (1 - eps)^{(n-1)/2} |B^n| / 2^{(n+1)/2}.
pub fn limit_set_volume(n: usize, eps: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::DomainError(format!("eps = {eps} outside [0, 1)")));
    }
    Ok((1.0 - eps).powf((n as f64 - 1.0) / 2.0) * unit_ball_volume(n)
        / 2f64.powf((n as f64 + 1.0) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ProfileKind;
    use crate::linalg::vec_from;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(0) - 1.0).abs() < 1e-15);
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-12);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ball_f_values() {
        assert!((ball_f(2, 1.0).unwrap() - PI).abs() < 1e-12);
        assert!((ball_f(3, 1.0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
        let expect = PI / 0.75f64.powf(1.5); // 4.836652...
        assert!((ball_f(2, 0.5).unwrap() - expect).abs() < 1e-12);
        assert!(ball_f(2, 0.0).is_err());
        assert!(ball_f(2, 1.2).is_err());
    }

    #[test]
    fn ellipsoid_curvatures() {
        assert!((ellipsoid_curvature(&[1.0, 1.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!((ellipsoid_curvature(&[1.0, 1.0, 2.0]) - 4.0).abs() < 1e-15);
        assert!((ellipsoid_curvature(&[2.0, 1.0]) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn ellipsoid_f_reduces_to_ball_on_spheres() {
        let f = ellipsoid_f(&[1.0, 1.0, 1.0], 0.5).unwrap();
        assert!((f - ball_f(3, 0.5).unwrap()).abs() < 1e-12);
        // l = (2, 1): kappa = 1/4, f = (pi/2) / [0.05 * 1.95]^{3/2}.
        let f = ellipsoid_f(&[2.0, 1.0], 0.05).unwrap();
        let expect = 0.5 * PI / (0.05f64 * 1.95).powf(1.5);
        assert!((f - expect).abs() < 1e-9 * expect);
        // Guard: pole stops being nearest.
        assert!(matches!(
            ellipsoid_f(&[0.5, 2.0], 0.5),
            Err(Error::PoleNotNearest { .. })
        ));
    }

    #[test]
    fn parabola_f_values() {
        assert!((parabola_f(1.0, 0.5).unwrap() - PI).abs() < 1e-12);
        assert!((parabola_f(1.0, 0.125).unwrap() - 8.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn parabola_polar_support_boundary() {
        assert!((parabola_polar_support(&vec_from(&[0.0, -1.0])) - 1.0).abs() < 1e-15);
        assert!((parabola_polar_support(&vec_from(&[0.0, -0.5])) - 0.5).abs() < 1e-15);
        assert!((parabola_polar_support(&vec_from(&[1.0, -0.5])) - 1.0).abs() < 1e-15);
        assert!(parabola_polar_support(&vec_from(&[0.3, 0.1])).is_infinite());
    }

    #[test]
    fn parabola_polar_support_characterizes_the_ellipse() {
        // value <= 1 iff y1^2 + 4 (y2 + 1/2)^2 <= 1, on a 100 x 100 grid.
        for i in 0..100 {
            for j in 0..100 {
                let y1 = -1.2 + 2.4 * i as f64 / 99.0;
                let y2 = -1.2 + 1.4 * j as f64 / 99.0;
                let v = parabola_polar_support(&vec_from(&[y1, y2]));
                let in_ellipse = y1 * y1 + 4.0 * (y2 + 0.5) * (y2 + 0.5) <= 1.0;
                assert_eq!(v <= 1.0, in_ellipse, "mismatch at ({y1}, {y2}): {v}");
            }
        }
    }

    #[test]
    fn section_asymptotics() {
        assert!((section_asymptotic(1.0, 2, 0.02) - 10.0).abs() < 1e-12);
        assert!((section_asymptotic(4.0, 2, 0.02) - 20.0).abs() < 1e-12);
        let expect = PI / 0.04; // 78.54
        assert!((section_asymptotic(1.0, 3, 0.02) - expect).abs() < 1e-12);
    }

    #[test]
    fn t1_constants() {
        // n = 2 identity with (2^{3/2} / (pi sqrt(kappa0)))^{1/2}.
        for kappa0 in [1.0, 4.0, 0.3] {
            let direct = (2f64.powf(1.5) / (PI * f64::sqrt(kappa0))).sqrt();
            assert!((t1_constant(2, kappa0) - direct).abs() < 1e-15);
        }
        let expect = (3.0 / PI).powf(1.0 / 3.0); // 0.984745...
        assert!((t1_constant(3, 1.0) - expect).abs() < 1e-15);
        assert!((t1_constant(2, 4.0) - t1_constant(2, 1.0) / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn corollary_alphas() {
        assert!((corollary_alpha(2, &[2.0]).unwrap() - 0.75).abs() < 1e-15);
        assert!((corollary_alpha(2, &[4.0]).unwrap() - 0.625).abs() < 1e-15);
        assert!((corollary_alpha(3, &[2.0, 2.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(corollary_alpha(2, &[2.0, 2.0]).is_err());
    }

    #[test]
    fn graph_bounds_power_profile() {
        let g = GraphDomain2D::new(ProfileKind::Power { p: 2.0 }, 1.0, 2.0).unwrap();
        let (lo, hi) = graph2d_bounds(&g, 0.01).unwrap();
        let base = (0.01f64 * 0.1).sqrt();
        assert!((lo - 0.5 * base).abs() < 1e-12);
        assert!((hi - 2f64.sqrt() * base).abs() < 1e-12);
        assert!(graph2d_bounds(&g, 1.5).is_err());
    }

    #[test]
    fn limit_set_volumes() {
        assert!((limit_set_volume(3, 0.0).unwrap() - PI / 3.0).abs() < 1e-12);
        assert!((limit_set_volume(2, 0.0).unwrap() - PI / 2f64.powf(1.5)).abs() < 1e-12);
        assert!(limit_set_volume(3, 0.999999).unwrap() < 1e-2);
        assert!(limit_set_volume(3, 1.0).is_err());
    }
}
