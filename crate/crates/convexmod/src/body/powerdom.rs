//! Power-law domains `{x : x_n > eta sum_j |x_j|^{p_j}}` truncated by a box
//! in the free coordinates and a height cap. Coordinate layout:
//! `x_1..x_k` power coordinates, then `n-k-1` box coordinates, then `x_n`.

use crate::error::{Error, Result};
use crate::linalg::Vector;

#[derive(Debug, Clone)]
pub struct PowerDomain {
    pub eta: f64,
    pub exponents: Vec<f64>,
    pub box_half_widths: Vec<f64>,
    pub height: f64,
}

impl PowerDomain {
    pub fn new(
        eta: f64,
        exponents: Vec<f64>,
        box_half_widths: Vec<f64>,
        height: f64,
    ) -> Result<Self> {
        if eta <= 0.0 || height <= 0.0 {
            return Err(Error::InvalidBody("eta and height must be positive".into()));
        }
        if exponents.is_empty() || exponents.iter().any(|&p| p < 1.0) {
            return Err(Error::InvalidBody("exponents must satisfy p >= 1".into()));
        }
        if box_half_widths.iter().any(|&w| w <= 0.0) {
            return Err(Error::InvalidBody("box half-widths must be positive".into()));
        }
        let n = exponents.len() + box_half_widths.len() + 1;
        if !(2..=4).contains(&n) {
            return Err(Error::InvalidBody(format!(
                "ambient dimension {n} outside 2..=4"
            )));
        }
        Ok(PowerDomain {
            eta,
            exponents,
            box_half_widths,
            height,
        })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len() + self.box_half_widths.len() + 1
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    /// Bottom surface height over the power coordinates.
    pub fn surface(&self, xp: &[f64]) -> f64 {
        self.eta
            * xp.iter()
                .zip(&self.exponents)
                .map(|(x, p)| x.abs().powf(*p))
                .sum::<f64>()
    }

    /// Half-extent of power coordinate j inside the cap.
    pub fn power_extent(&self, j: usize) -> f64 {
        (self.height / self.eta).powf(1.0 / self.exponents[j])
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let k = self.k();
        let n = self.dim();
        let xp: Vec<f64> = (0..k).map(|j| x[j]).collect();
        if x[n - 1] < self.surface(&xp) - tol || x[n - 1] > self.height + tol {
            return false;
        }
        self.box_half_widths
            .iter()
            .enumerate()
            .all(|(j, &w)| x[k + j].abs() <= w + tol)
    }

    pub fn is_interior(&self, x: &Vector) -> bool {
        let k = self.k();
        let n = self.dim();
        let xp: Vec<f64> = (0..k).map(|j| x[j]).collect();
        x[n - 1] > self.surface(&xp)
            && x[n - 1] < self.height
            && self
                .box_half_widths
                .iter()
                .enumerate()
                .all(|(j, &w)| x[k + j].abs() < w)
    }

    /// Support function. Box coordinates separate; over the power slab the
    /// value is concave in the cap height, so a golden-section closes it.
    pub fn support(&self, theta: &Vector) -> f64 {
        let k = self.k();
        let n = self.dim();
        let box_term: f64 = self
            .box_half_widths
            .iter()
            .enumerate()
            .map(|(j, &w)| w * theta[k + j].abs())
            .sum();
        let cp: Vec<f64> = (0..k).map(|j| theta[j].abs()).collect();
        let tn = theta[n - 1];
        let value = |t: f64| tn * t + self.power_ball_max(&cp, t);
        // Concave in t: golden-section over [0, H].
        let (mut lo, mut hi) = (0.0, self.height);
        let phi = 0.5 * (3.0 - 5f64.sqrt());
        let (mut x1, mut x2) = (lo + phi * (hi - lo), hi - phi * (hi - lo));
        let (mut f1, mut f2) = (value(x1), value(x2));
        for _ in 0..90 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = hi - phi * (hi - lo);
                f2 = value(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = lo + phi * (hi - lo);
                f1 = value(x1);
            }
        }
        box_term + value(0.0).max(value(self.height)).max(f1).max(f2)
    }

    /// max { sum c_j xi_j : eta sum xi_j^{p_j} <= t, xi >= 0 } for c >= 0.
    fn power_ball_max(&self, c: &[f64], t: f64) -> f64 {
        if t <= 0.0 || c.iter().all(|&v| v == 0.0) {
            return 0.0;
        }
        let k = self.k();
        if k == 1 {
            // Closed form: xi = (t/eta)^{1/p}.
            return c[0] * (t / self.eta).powf(1.0 / self.exponents[0]);
        }
        // Lagrange stationarity: c_j = lambda eta p_j xi_j^{p_j - 1} for
        // p_j > 1; p_j = 1 coordinates activate only at lambda = c_j / eta.
        let lambda_linear = c
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &p)| p == 1.0)
            .map(|(&cj, _)| cj / self.eta)
            .fold(0.0_f64, f64::max);
        let xi_curved = |lambda: f64| -> Vec<f64> {
            (0..k)
                .map(|j| {
                    let p = self.exponents[j];
                    if p == 1.0 || c[j] == 0.0 {
                        0.0
                    } else {
                        (c[j] / (lambda * self.eta * p)).powf(1.0 / (p - 1.0))
                    }
                })
                .collect()
        };
        let budget = |xi: &[f64]| -> f64 {
            self.eta
                * xi.iter()
                    .zip(&self.exponents)
                    .map(|(x, p)| x.powf(*p))
                    .sum::<f64>()
        };
        // Shrink lambda from high until the curved budget fills t or hits
        // the linear activation threshold.
        let mut hi = 1.0;
        while budget(&xi_curved(hi)) > t && hi < 1e30 {
            hi *= 2.0;
        }
        let mut lo = lambda_linear.max(1e-30);
        if budget(&xi_curved(lo)) < t && lambda_linear > 0.0 {
            // Curved coordinates cannot absorb t at the activation threshold:
            // the slack goes into the best linear coordinate.
            let xi = xi_curved(lambda_linear);
            let slack = t - budget(&xi);
            let best = c
                .iter()
                .zip(&self.exponents)
                .filter(|(_, &p)| p == 1.0)
                .map(|(&cj, _)| cj)
                .fold(0.0_f64, f64::max);
            let linear_gain = best * slack / self.eta;
            return c.iter().zip(&xi).map(|(cj, x)| cj * x).sum::<f64>() + linear_gain;
        }
        while budget(&xi_curved(lo)) < t && lo > 1e-30 {
            lo *= 0.5;
        }
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if budget(&xi_curved(mid)) > t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let xi = xi_curved((lo * hi).sqrt());
        c.iter().zip(&xi).map(|(cj, x)| cj * x).sum()
    }

    /// Distance to the boundary together with all locally nearest points.
    pub fn nearest_boundary_points(&self, a: &Vector, tol: f64) -> Result<(f64, Vec<Vector>)> {
        if !self.is_interior(a) {
            return Err(Error::PointNotInterior);
        }
        let k = self.k();
        let n = self.dim();
        let mut candidates: Vec<(f64, Vector)> = Vec::new();
        // Cap.
        let mut cap = a.clone();
        cap[n - 1] = self.height;
        candidates.push((self.height - a[n - 1], cap));
        // Box walls.
        for (j, &w) in self.box_half_widths.iter().enumerate() {
            for s in [1.0, -1.0] {
                let mut p = a.clone();
                p[k + j] = s * w;
                candidates.push((w - s * a[k + j], p));
            }
        }
        // Bottom surface: minimize over the power coordinates.
        let apow: Vec<f64> = (0..k).map(|j| a[j]).collect();
        let an = a[n - 1];
        let dist2 = |xp: &[f64]| -> f64 {
            let g = self.surface(xp);
            apow.iter()
                .zip(xp)
                .map(|(ai, xi)| (ai - xi).powi(2))
                .sum::<f64>()
                + (an - g).powi(2)
        };
        if k == 1 {
            let xmax = self.power_extent(0);
            const M: usize = 2048;
            let xs: Vec<f64> = (0..=M)
                .map(|i| -xmax + 2.0 * xmax * i as f64 / M as f64)
                .collect();
            let vals: Vec<f64> = xs.iter().map(|&x| dist2(&[x])).collect();
            for i in 0..=M {
                let is_min = (i == 0 || vals[i] <= vals[i - 1])
                    && (i == M || vals[i] <= vals[i + 1]);
                if !is_min {
                    continue;
                }
                let lo = if i == 0 { xs[0] } else { xs[i - 1] };
                let hi = if i == M { xs[M] } else { xs[i + 1] };
                let x = golden_min_1d(lo, hi, &|x| dist2(&[x]));
                let mut p = a.clone();
                p[0] = x;
                p[n - 1] = self.surface(&[x]);
                candidates.push((dist2(&[x]).sqrt(), p));
            }
        } else {
            // Coordinate-descent polish from sign-symmetric seeds.
            let seeds = symmetric_seeds(&apow);
            for seed in seeds {
                let mut xp = seed;
                for _ in 0..60 {
                    for j in 0..k {
                        let xmax = self.power_extent(j);
                        let f = |x: f64| {
                            let mut q = xp.clone();
                            q[j] = x;
                            dist2(&q)
                        };
                        xp[j] = golden_min_1d(-xmax, xmax, &f);
                    }
                }
                let mut p = a.clone();
                for j in 0..k {
                    p[j] = xp[j];
                }
                p[n - 1] = self.surface(&xp);
                candidates.push((dist2(&xp).sqrt(), p));
            }
        }
        let d = candidates
            .iter()
            .map(|(d, _)| *d)
            .fold(f64::MAX, f64::min);
        let mut points = Vec::new();
        for (di, p) in candidates {
            if di <= d * (1.0 + tol) && !points.iter().any(|q: &Vector| (q - &p).norm() < tol.max(1e-9))
            {
                points.push(p);
            }
        }
        Ok((d, points))
    }

    /// Chebyshev center: on the x_n axis by sign symmetry; golden-section
    /// the (concave) boundary distance along it.
    pub fn chebyshev(&self) -> (Vector, f64) {
        let n = self.dim();
        let d_at = |t: f64| -> f64 {
            let mut p = Vector::zeros(n);
            p[n - 1] = t;
            match self.nearest_boundary_points(&p, 1e-9) {
                Ok((d, _)) => d,
                Err(_) => 0.0,
            }
        };
        let (mut lo, mut hi) = (0.0, self.height);
        let phi = 0.5 * (3.0 - 5f64.sqrt());
        let (mut x1, mut x2) = (lo + phi * (hi - lo), hi - phi * (hi - lo));
        let (mut f1, mut f2) = (d_at(x1), d_at(x2));
        for _ in 0..70 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = hi - phi * (hi - lo);
                f2 = d_at(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = lo + phi * (hi - lo);
                f1 = d_at(x1);
            }
        }
        let t = 0.5 * (lo + hi);
        let mut c = Vector::zeros(n);
        c[n - 1] = t;
        (c, d_at(t))
    }

    pub fn circumradius_bound(&self) -> f64 {
        let pow_ext: f64 = (0..self.k()).map(|j| self.power_extent(j).powi(2)).sum();
        let box_ext: f64 = self.box_half_widths.iter().map(|w| w * w).sum();
        (pow_ext + box_ext + self.height * self.height).sqrt()
    }
}

fn symmetric_seeds(a: &[f64]) -> Vec<Vec<f64>> {
    let mut seeds = vec![a.to_vec(), vec![0.0; a.len()]];
    for j in 0..a.len() {
        let mut s = a.to_vec();
        s[j] = -s[j];
        seeds.push(s);
    }
    seeds
}

fn golden_min_1d<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: &F) -> f64 {
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

    fn quartic() -> PowerDomain {
        // {x2 > x1^4, x2 < 1} in the plane.
        PowerDomain::new(1.0, vec![4.0], vec![], 1.0).unwrap()
    }

    #[test]
    fn membership() {
        let p = quartic();
        assert!(p.is_interior(&vec_from(&[0.0, 0.5])));
        assert!(p.is_interior(&vec_from(&[0.5, 0.5])));
        assert!(!p.is_interior(&vec_from(&[0.5, 0.05]))); // below x^4 = 0.0625
        assert!(!p.is_interior(&vec_from(&[0.0, 1.5])));
    }

    #[test]
    fn support_downward_is_minus_surface_min() {
        let p = quartic();
        // theta = (0,-1): sup of -x2 over the domain is 0 at the origin.
        assert!(p.support(&vec_from(&[0.0, -1.0])).abs() < 1e-9);
        // theta = (1,0): sup of x1 is the cap half-extent 1.
        assert!((p.support(&vec_from(&[1.0, 0.0])) - 1.0).abs() < 1e-9);
        // theta = (0,1): the cap.
        assert!((p.support(&vec_from(&[0.0, 1.0])) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn axis_distance_is_height_when_small() {
        let p = quartic();
        let (d, _) = p
            .nearest_boundary_points(&vec_from(&[0.0, 0.2]), 1e-6)
            .unwrap();
        assert!((d - 0.2).abs() < 1e-9);
    }

    #[test]
    fn parabola_support_matches_closed_form() {
        // Truncated {x2 > x1^2} with a tall cap; base (0,1) handled by caller.
        let p = PowerDomain::new(1.0, vec![2.0], vec![], 1000.0).unwrap();
        // For y2 < 0 the untruncated support of D-e2 is -y1^2/(4 y2) - y2.
        let base = vec_from(&[0.0, 1.0]);
        for (y1, y2) in [(1.0, -1.0), (0.5, -0.25), (2.0, -0.8)] {
            let theta = vec_from(&[y1, y2]);
            let sigma = p.support(&theta) - base.dot(&theta);
            let expect = -y1 * y1 / (4.0 * y2) - y2;
            assert!(
                (sigma - expect).abs() < 1e-6,
                "sigma {sigma} vs {expect} at ({y1},{y2})"
            );
        }
    }

    #[test]
    fn two_power_coordinates_support() {
        // {x3 > x1^2 + x2^2, x3 < 1}: for theta = (c1, c2, 0) the maximizer
        // sits on the rim circle of radius 1: value = |(c1,c2)|.
        let p = PowerDomain::new(1.0, vec![2.0, 2.0], vec![], 1.0).unwrap();
        let s = p.support(&vec_from(&[0.6, 0.8, 0.0]));
        assert!((s - 1.0).abs() < 1e-6, "{s}");
    }

    #[test]
    fn chebyshev_center_on_axis() {
        let p = quartic();
        let (c, r) = p.chebyshev();
        assert!(c[0].abs() < 1e-9);
        assert!(r > 0.3 && r < 0.6, "inradius {r}");
        // Center height + inradius reaches the cap exactly.
        assert!((c[1] + r - 1.0).abs() < 1e-6);
    }
}
