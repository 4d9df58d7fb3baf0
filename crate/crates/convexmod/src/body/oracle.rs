//! Support-function oracles: bodies known only through `theta -> sigma(theta)`
//! on the unit sphere.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rng;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessHint {
    Polytope,
    Smooth,
    Piecewise,
}

#[derive(Clone)]
pub struct SupportOracle {
    pub eval: Arc<dyn Fn(&Vector) -> f64 + Send + Sync>,
    pub dim: usize,
    pub hint: SmoothnessHint,
}

impl std::fmt::Debug for SupportOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SupportOracle {{ dim: {}, hint: {:?} }}",
            self.dim, self.hint
        )
    }
}

impl SupportOracle {
    pub fn new(
        dim: usize,
        hint: SmoothnessHint,
        eval: Arc<dyn Fn(&Vector) -> f64 + Send + Sync>,
    ) -> Self {
        SupportOracle { eval, dim, hint }
    }

    /// sigma on unit directions.
    pub fn support(&self, theta: &Vector) -> f64 {
        (self.eval)(theta)
    }

    /// Spot-check of subadditivity of the homogeneous extension on random
    /// direction pairs; returns the worst violation (<= 0 when consistent).
    pub fn convexity_violation(&self, seed: u64, trials: usize) -> f64 {
        let mut rng = rng::stream(seed, 0xC0);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..trials {
            let u = Vector::from_vec(rng::unit_direction(&mut rng, self.dim));
            let v = Vector::from_vec(rng::unit_direction(&mut rng, self.dim));
            let w = &u + &v;
            let wn = w.norm();
            if wn < 1e-9 {
                continue;
            }
            let lhs = wn * self.support(&(&w / wn));
            let rhs = self.support(&u) + self.support(&v);
            worst = worst.max(lhs - rhs);
            if !lhs.is_finite() || !rhs.is_finite() {
                return f64::INFINITY;
            }
        }
        worst
    }

    /// Closure membership test against a deterministic direction fan.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.min_margin(x) >= -tol
    }

    /// min over sampled directions of sigma(theta) - x.theta; equals the
    /// boundary distance for interior x up to sampling resolution.
    pub fn min_margin(&self, x: &Vector) -> f64 {
        let mut best = f64::MAX;
        for theta in direction_fan(self.dim, 512) {
            best = best.min(self.support(&theta) - x.dot(&theta));
        }
        best
    }

    pub fn distance_to_boundary(&self, a: &Vector) -> Result<f64> {
        let d = self.min_margin(a);
        if d <= 0.0 {
            return Err(Error::PointNotInterior);
        }
        Ok(d)
    }
}

/// Deterministic, well-spread unit directions (angles in the plane, a
/// Fibonacci lattice on S^2, a double-angle lattice on S^3).
pub fn direction_fan(n: usize, count: usize) -> Vec<Vector> {
    let mut dirs = Vec::with_capacity(count);
    match n {
        2 => {
            for i in 0..count {
                let t = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                dirs.push(Vector::from_vec(vec![t.cos(), t.sin()]));
            }
        }
        3 => {
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            for i in 0..count {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                let r = (1.0 - z * z).sqrt();
                let t = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
                dirs.push(Vector::from_vec(vec![r * t.cos(), r * t.sin(), z]));
            }
        }
        4 => {
            // Hopf-style lattice via the uniform S^3 parametrization.
            let m = (count as f64).powf(1.0 / 3.0).ceil() as usize;
            'outer: for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        if dirs.len() >= count {
                            break 'outer;
                        }
                        let u = (i as f64 + 0.5) / m as f64;
                        let v = (j as f64 + 0.5) / m as f64;
                        let w = (k as f64 + 0.5) / m as f64;
                        dirs.push(crate::quad::s3_point(u, v, w));
                    }
                }
            }
        }
        _ => {
            let mut rng = rng::stream(12345, n as u64);
            for _ in 0..count {
                dirs.push(Vector::from_vec(rng::unit_direction(&mut rng, n)));
            }
        }
    }
    dirs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_oracle_is_consistent() {
        let oracle = SupportOracle::new(2, SmoothnessHint::Smooth, Arc::new(|_: &Vector| 1.0));
        assert!(oracle.convexity_violation(1, 200) <= 1e-12);
        assert!(oracle.contains(&Vector::from_vec(vec![0.5, 0.0]), 1e-9));
        assert!(!oracle.contains(&Vector::from_vec(vec![1.5, 0.0]), 1e-9));
        let d = oracle
            .distance_to_boundary(&Vector::from_vec(vec![0.0, 0.25]))
            .unwrap();
        assert!((d - 0.75).abs() < 1e-4);
    }

    #[test]
    fn non_convex_eval_flagged() {
        // sigma with a dent: violates subadditivity somewhere.
        let oracle = SupportOracle::new(
            2,
            SmoothnessHint::Piecewise,
            Arc::new(|t: &Vector| 1.0 - 0.9 * (t[0] * t[1]).abs()),
        );
        assert!(oracle.convexity_violation(7, 500) > 0.0);
    }

    #[test]
    fn direction_fans_are_unit() {
        for n in 2..=4 {
            let fan = direction_fan(n, 64);
            assert!(fan.len() >= 64 || n == 4);
            for d in fan {
                assert!((d.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
