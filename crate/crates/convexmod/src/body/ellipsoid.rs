//! Ellipsoids `{c + R diag(l) u : |u| <= 1}` with closed-form support,
//! gauge, and nearest-boundary-point (secular equation) primitives.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone)]
pub struct Ellipsoid {
    pub center: Vector,
    pub semi_axes: Vec<f64>,
    /// Columns are the axis directions; orthogonal to 1e-12.
    pub rotation: Matrix,
}

impl Ellipsoid {
    pub fn new(center: Vector, semi_axes: Vec<f64>, rotation: Option<Matrix>) -> Result<Self> {
        let n = center.len();
        if semi_axes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: semi_axes.len(),
            });
        }
        if semi_axes.iter().any(|&l| l <= 0.0 || !l.is_finite()) {
            return Err(Error::InvalidBody("semi-axes must be positive".into()));
        }
        let rotation = rotation.unwrap_or_else(|| Matrix::identity(n, n));
        if rotation.nrows() != n || rotation.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rotation.nrows(),
            });
        }
        let gram = rotation.transpose() * &rotation;
        if (&gram - Matrix::identity(n, n)).amax() > 1e-12 {
            return Err(Error::InvalidBody("rotation is not orthogonal".into()));
        }
        Ok(Ellipsoid {
            center,
            semi_axes,
            rotation,
        })
    }

    pub fn ball(n: usize, radius: f64) -> Self {
        Ellipsoid::new(Vector::zeros(n), vec![radius; n], None).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Body-frame coordinates of an ambient point.
    fn to_frame(&self, x: &Vector) -> Vector {
        self.rotation.transpose() * (x - &self.center)
    }

    fn from_frame(&self, y: &Vector) -> Vector {
        &self.rotation * y + &self.center
    }

    /// Quadratic form value `sum (y_i / l_i)^2`; < 1 strictly inside.
    pub fn level(&self, x: &Vector) -> f64 {
        let y = self.to_frame(x);
        y.iter()
            .zip(&self.semi_axes)
            .map(|(yi, li)| (yi / li).powi(2))
            .sum()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.level(x) <= 1.0 + tol
    }

    /// Support function `sigma(theta) = c.theta + |diag(l) R^T theta|`.
    pub fn support(&self, theta: &Vector) -> f64 {
        let w = self.rotation.transpose() * theta;
        let quad: f64 = w
            .iter()
            .zip(&self.semi_axes)
            .map(|(wi, li)| (li * wi).powi(2))
            .sum();
        self.center.dot(theta) + quad.sqrt()
    }

    /// Gauge of `v` about `base` (interior): smallest t with v/t on the body.
    pub fn gauge(&self, base: &Vector, v: &Vector) -> Result<f64> {
        if self.level(base) >= 1.0 {
            return Err(Error::BaseNotInterior);
        }
        if v.norm() == 0.0 {
            return Ok(0.0);
        }
        let y0 = self.to_frame(base);
        let w = self.rotation.transpose() * v;
        // Solve |diag(1/l)(y0 + s w)|^2 = 1 for s > 0; gauge = 1/s.
        let mut qa = 0.0;
        let mut qb = 0.0;
        let mut qc = -1.0;
        for i in 0..self.dim() {
            let inv = 1.0 / self.semi_axes[i];
            qa += (w[i] * inv).powi(2);
            qb += 2.0 * (w[i] * inv) * (y0[i] * inv);
            qc += (y0[i] * inv).powi(2);
        }
        let disc = qb * qb - 4.0 * qa * qc;
        let s = (-qb + disc.sqrt()) / (2.0 * qa);
        Ok(1.0 / s)
    }

    /// Distance from an interior point to the boundary, and one nearest
    /// boundary point, via the secular equation in the body frame.
    pub fn nearest_boundary(&self, a: &Vector) -> Result<(f64, Vector)> {
        let y = self.to_frame(a);
        if self.level(a) >= 1.0 {
            return Err(Error::PointNotInterior);
        }
        let n = self.dim();
        let l_min = self.semi_axes.iter().cloned().fold(f64::MAX, f64::min);
        let phi = |t: f64| -> f64 {
            (0..n)
                .map(|i| {
                    let li = self.semi_axes[i];
                    (li * y[i] / (li * li + t)).powi(2)
                })
                .sum()
        };
        // phi is decreasing on (-l_min^2, 0]; interior means phi(0) < 1.
        let t_left = -l_min * l_min;
        let eps = 1e-15 * l_min * l_min;
        if phi(t_left + eps) < 1.0 {
            // Degenerate: nearest points live on the smallest-axis subspace.
            let mut z = Vector::zeros(n);
            let mut partial = 0.0;
            for i in 0..n {
                let li = self.semi_axes[i];
                if li * li - l_min * l_min > eps {
                    z[i] = li * li * y[i] / (li * li - l_min * l_min);
                    partial += (z[i] / li).powi(2);
                }
            }
            let residual = (1.0 - partial).max(0.0);
            // Place the free coordinate on the first min-axis.
            let j = (0..n)
                .find(|&i| self.semi_axes[i] * self.semi_axes[i] - l_min * l_min <= eps)
                .unwrap();
            z[j] = l_min * residual.sqrt() * if y[j] >= 0.0 { 1.0 } else { -1.0 };
            let d = (&z - &y).norm();
            return Ok((d, self.from_frame(&z)));
        }
        let (mut lo, mut hi) = (t_left + eps, 0.0);
        if phi(hi) > 1.0 {
            return Err(Error::PointNotInterior);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let z = Vector::from_iterator(n, (0..n).map(|i| {
            let li = self.semi_axes[i];
            li * li * y[i] / (li * li + t)
        }));
        let d = (&z - &y).norm();
        Ok((d, self.from_frame(&z)))
    }

    /// Boundary point in body-frame spherical position `u` (|u| = 1) and the
    /// outer unit normal there.
    pub fn boundary_point(&self, u: &Vector) -> (Vector, Vector) {
        let n = self.dim();
        let y = Vector::from_iterator(n, (0..n).map(|i| self.semi_axes[i] * u[i]));
        let grad = Vector::from_iterator(n, (0..n).map(|i| y[i] / self.semi_axes[i].powi(2)));
        let point = self.from_frame(&y);
        let normal = &self.rotation * (&grad / grad.norm());
        (point, normal)
    }

    /// Gaussian curvature at the boundary point with frame coordinates `y`.
    pub fn curvature_at_frame(&self, y: &Vector) -> f64 {
        let n = self.dim();
        let prod_sq: f64 = self.semi_axes.iter().map(|l| l * l).product();
        let s: f64 = (0..n)
            .map(|i| (y[i] / self.semi_axes[i].powi(2)).powi(2))
            .sum();
        1.0 / (prod_sq * s.powf((n as f64 + 1.0) / 2.0))
    }

    pub fn volume(&self) -> f64 {
        crate::oracles::unit_ball_volume(self.dim()) * self.semi_axes.iter().product::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from;

    #[test]
    fn support_of_unit_disk_is_one() {
        let b = Ellipsoid::ball(2, 1.0);
        for t in [0.0f64, 0.3, 1.2, 4.0] {
            let theta = vec_from(&[t.cos(), t.sin()]);
            assert!((b.support(&theta) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nearest_point_on_axis_aligned_ellipse() {
        let e = Ellipsoid::new(Vector::zeros(2), vec![2.0, 1.0], None).unwrap();
        let (d, z) = e.nearest_boundary(&vec_from(&[0.0, 0.9])).unwrap();
        assert!((d - 0.1).abs() < 1e-10);
        assert!((z[0]).abs() < 1e-10);
        assert!((z[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn nearest_point_at_center_is_smallest_axis() {
        let e = Ellipsoid::new(Vector::zeros(3), vec![3.0, 2.0, 1.0], None).unwrap();
        let (d, z) = e.nearest_boundary(&Vector::zeros(3)).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!((z[2].abs() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gauge_matches_level_set() {
        let e = Ellipsoid::new(vec_from(&[0.5, 0.0]), vec![2.0, 1.0], None).unwrap();
        let base = vec_from(&[0.5, 0.0]);
        let v = vec_from(&[1.0, 0.3]);
        let g = e.gauge(&base, &v).unwrap();
        let boundary = &base + &v / g;
        assert!((e.level(&boundary) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn curvature_at_pole_matches_axis_formula() {
        let e = Ellipsoid::new(Vector::zeros(3), vec![1.0, 1.0, 2.0], None).unwrap();
        let y = vec_from(&[0.0, 0.0, -2.0]);
        // l_n^{n-1} / (l_1^2 l_2^2) = 4
        assert!((e.curvature_at_frame(&y) - 4.0).abs() < 1e-12);
    }
}
