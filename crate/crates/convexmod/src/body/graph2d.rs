//! Planar graph domains `{|x1| < R, h(x1) < x2 < D - h(x1)}` for an even
//! convex profile h with h(0) = h'(0) = 0 and h(R) = D/2. The profile kind
//! is trusted to have nondecreasing boundary curvature on the arc that
//! matters (small x1); this is not verified symbolically.

use crate::error::{Error, Result};
use crate::linalg::{vec_from, Vector};
use std::sync::Arc;

#[derive(Clone)]
pub enum ProfileKind {
    /// h(x) = c |x|^p with c chosen so h(R) = D/2.
    Power { p: f64 },
    /// h(x) = c e^{-1/|x|} with c chosen so h(R) = D/2 (h(0) = 0).
    ExpFlat,
    /// Caller-supplied even convex profile with h(0)=h'(0)=0, h(R)=D/2.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for ProfileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProfileKind::Power { p } => write!(f, "Power {{ p: {p} }}"),
            ProfileKind::ExpFlat => write!(f, "ExpFlat"),
            ProfileKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphDomain2D {
    pub kind: ProfileKind,
    pub r: f64,
    pub d: f64,
    /// Scale factor applied to the raw profile so that h(R) = D/2.
    scale: f64,
}

impl GraphDomain2D {
    pub fn new(kind: ProfileKind, r: f64, d: f64) -> Result<Self> {
        if r <= 0.0 || d <= 0.0 {
            return Err(Error::InvalidBody("graph domain needs R > 0, D > 0".into()));
        }
        if let ProfileKind::Power { p } = kind {
            if p < 1.0 {
                return Err(Error::InvalidBody("power profile needs p >= 1".into()));
            }
        }
        let raw_at_r = match &kind {
            ProfileKind::Power { p } => r.powf(*p),
            ProfileKind::ExpFlat => (-1.0 / r).exp(),
            ProfileKind::Custom(f) => f(r),
        };
        if raw_at_r <= 0.0 {
            return Err(Error::InvalidBody("profile vanishes at R".into()));
        }
        let scale = match &kind {
            ProfileKind::Custom(_) => {
                if ((raw_at_r) - d / 2.0).abs() > 1e-9 * d {
                    return Err(Error::InvalidBody("custom profile must satisfy h(R) = D/2".into()));
                }
                1.0
            }
            _ => d / (2.0 * raw_at_r),
        };
        Ok(GraphDomain2D { kind, r, d, scale })
    }

    /// The profile h.
    pub fn h(&self, x: f64) -> f64 {
        let x = x.abs();
        if x == 0.0 {
            return 0.0;
        }
        let raw = match &self.kind {
            ProfileKind::Power { p } => x.powf(*p),
            ProfileKind::ExpFlat => (-1.0 / x).exp(),
            ProfileKind::Custom(f) => f(x),
        };
        self.scale * raw
    }

    /// Positive solution of h(x) = delta, 0 < delta <= D/2.
    pub fn h_inverse(&self, delta: f64) -> Result<f64> {
        if delta <= 0.0 || delta > self.d / 2.0 + 1e-15 {
            return Err(Error::DeltaTooLarge {
                delta,
                limit: self.d / 2.0,
            });
        }
        if let ProfileKind::Power { p } = self.kind {
            return Ok((delta / self.scale).powf(1.0 / p));
        }
        let (mut lo, mut hi) = (0.0, self.r);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.h(mid) < delta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let (x1, x2) = (x[0], x[1]);
        x1.abs() <= self.r + tol && x2 >= self.h(x1) - tol && x2 <= self.d - self.h(x1) + tol
    }

    pub fn is_interior(&self, x: &Vector) -> bool {
        let (x1, x2) = (x[0], x[1]);
        x1.abs() < self.r && x2 > self.h(x1) && x2 < self.d - self.h(x1)
    }

    /// Support of the domain: concave 1-D maximizations over the two arcs.
    pub fn support(&self, theta: &Vector) -> f64 {
        let (t1, t2) = (theta[0], theta[1]);
        // Lower arc (x, h(x)) favoured when t2 < 0, upper arc when t2 > 0;
        // evaluating both and taking the max needs no case analysis.
        let lower = self.arc_max(|x| t1 * x + t2 * self.h(x));
        let upper = self.arc_max(|x| t1 * x + t2 * (self.d - self.h(x)));
        lower.max(upper)
    }

    /// Maximum of a function over x in [-R, R] via golden-section around the
    /// best of a coarse scan (the integrands are concave on each arc, the
    /// scan guards the endpoints).
    fn arc_max<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        const COARSE: usize = 128;
        let mut best_x = -self.r;
        let mut best = f(best_x);
        for i in 1..=COARSE {
            let x = -self.r + 2.0 * self.r * i as f64 / COARSE as f64;
            let v = f(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        let w = 2.0 * self.r / COARSE as f64;
        let (mut lo, mut hi) = ((best_x - w).max(-self.r), (best_x + w).min(self.r));
        let phi = 0.5 * (3.0 - 5f64.sqrt());
        let (mut x1, mut x2) = (lo + phi * (hi - lo), hi - phi * (hi - lo));
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..80 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = hi - phi * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = lo + phi * (hi - lo);
                f1 = f(x1);
            }
        }
        best.max(f1).max(f2)
    }

    /// Nearest boundary distance and locations of all (locally) nearest
    /// boundary points from an interior point.
    pub fn nearest_boundary_points(&self, a: &Vector, tol: f64) -> Result<(f64, Vec<Vector>)> {
        if !self.is_interior(a) {
            return Err(Error::PointNotInterior);
        }
        let mut candidates: Vec<(f64, Vector)> = Vec::new();
        for upper in [false, true] {
            let arc = |x: f64| -> Vector {
                let y = if upper { self.d - self.h(x) } else { self.h(x) };
                vec_from(&[x, y])
            };
            let dist2 = |x: f64| -> f64 {
                let p = arc(x);
                (&p - a).norm_squared()
            };
            // Dense scan for local minima, then golden polish.
            const M: usize = 1024;
            let xs: Vec<f64> = (0..=M)
                .map(|i| -self.r + 2.0 * self.r * i as f64 / M as f64)
                .collect();
            let vals: Vec<f64> = xs.iter().map(|&x| dist2(x)).collect();
            for i in 0..=M {
                let is_min = (i == 0 || vals[i] <= vals[i - 1])
                    && (i == M || vals[i] <= vals[i + 1]);
                if !is_min {
                    continue;
                }
                let lo = if i == 0 { xs[0] } else { xs[i - 1] };
                let hi = if i == M { xs[M] } else { xs[i + 1] };
                let x = golden_min(lo, hi, &dist2);
                candidates.push((dist2(x).sqrt(), arc(x)));
            }
        }
        let d = candidates
            .iter()
            .map(|(d, _)| *d)
            .fold(f64::MAX, f64::min);
        let mut points: Vec<Vector> = Vec::new();
        for (di, p) in candidates {
            if di <= d * (1.0 + tol) && !points.iter().any(|q| (q - &p).norm() < tol.max(1e-9)) {
                points.push(p);
            }
        }
        Ok((d, points))
    }

    pub fn inradius(&self) -> f64 {
        // Chebyshev center is (0, D/2) by the two reflection symmetries.
        let center = vec_from(&[0.0, self.d / 2.0]);
        self.nearest_boundary_points(&center, 1e-9)
            .map(|(d, _)| d)
            .unwrap_or(0.0)
    }

    pub fn circumradius_bound(&self) -> f64 {
        (self.r * self.r + self.d * self.d).sqrt()
    }
}

fn golden_min<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: &F) -> f64 {
    let phi = 0.5 * (3.0 - 5f64.sqrt());
    let (mut x1, mut x2) = (lo + phi * (hi - lo), hi - phi * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..90 {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> GraphDomain2D {
        // h(x) = x^4 on |x| < 1, D = 2.
        GraphDomain2D::new(ProfileKind::Power { p: 4.0 }, 1.0, 2.0).unwrap()
    }

    #[test]
    fn profile_normalization() {
        let g = quartic();
        assert!((g.h(1.0) - 1.0).abs() < 1e-14);
        assert!((g.h(0.5) - 0.0625).abs() < 1e-14);
        assert!((g.h_inverse(1e-4).unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn exp_flat_inverse_matches_log() {
        // R = 0.2, D = 2 * 10 * e^{-5}: scale c = 10.
        let d = 20.0 * (-5.0f64).exp();
        let g = GraphDomain2D::new(ProfileKind::ExpFlat, 0.2, d).unwrap();
        let delta = 1e-3;
        let hinv = g.h_inverse(delta).unwrap();
        // h(x) = 10 e^{-1/x} = delta  =>  x = 1 / ln(10/delta)
        let expect = 1.0 / (10.0 / delta).ln();
        assert!((hinv - expect).abs() < 1e-9, "{hinv} vs {expect}");
    }

    #[test]
    fn axis_point_distance_is_height() {
        let g = quartic();
        let (d, pts) = g
            .nearest_boundary_points(&vec_from(&[0.0, 0.3]), 1e-6)
            .unwrap();
        assert!((d - 0.3).abs() < 1e-9);
        assert!(pts.iter().any(|p| p.norm() < 1e-6));
    }

    #[test]
    fn support_of_quartic_domain() {
        let g = quartic();
        // Straight up: the top of the domain is at x2 = 2 (corners reach D - h = 2 - 1 = 1,
        // the midline reaches D - h(0) = 2).
        assert!((g.support(&vec_from(&[0.0, 1.0])) - 2.0).abs() < 1e-9);
        // Straight right: corners at x1 = 1.
        assert!((g.support(&vec_from(&[1.0, 0.0])) - 1.0).abs() < 1e-9);
        // Straight down: bottom touches 0.
        assert!(g.support(&vec_from(&[0.0, -1.0])).abs() < 1e-9);
    }

    #[test]
    fn inradius_of_quartic_domain() {
        // min over x of x^2 + (1 - x^4)^2: stationary at 4x^2 - 4x^6 = 1,
        // x = 0.9151861, giving d = 0.9626309.
        assert!((quartic().inradius() - 0.9626309).abs() < 1e-6);
    }
}
