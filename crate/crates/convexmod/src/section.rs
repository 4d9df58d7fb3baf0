//! Hyperplane sections S(a, nu) = {x : x . nu = 0, a + x in Omega}, their
//! polars within nu-perp, and subspace projections of polar bodies.
//!
//! Every slice lives in an orthonormal chart of nu-perp with the origin at
//! `a`, so polars within the hyperplane are ordinary polars in the chart.

use crate::body::{ConvexBody, Ellipsoid};
use crate::error::{Error, Result};
use crate::linalg::{columns_to_matrix, from_chart, orthonormal_complement, to_chart, Matrix, Vector};
use crate::polytope::{hull_measure, HPolytope, VPolytope};
use crate::quad;

#[derive(Debug, Clone)]
pub enum SliceRep {
    /// n = 2: the chord (-neg, pos) along the single chart direction.
    Interval { neg: f64, pos: f64 },
    /// Exact polytopal slice as a chart H-polytope.
    Polytope(HPolytope),
    /// Exact ellipsoidal slice in chart coordinates.
    Ellipsoid(Ellipsoid),
    /// Generic smooth slice: radial access through the parent gauge.
    Radial { parent: ConvexBody },
}

#[derive(Debug, Clone)]
pub struct SectionData {
    pub base: Vector,
    pub normal: Vector,
    pub basis: Vec<Vector>,
    pub slice: SliceRep,
}

/// The slice of `body` through `a` orthogonal to the unit vector `nu`.
pub fn section(body: &ConvexBody, a: &Vector, nu: &Vector) -> Result<SectionData> {
    if (nu.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::DomainError("nu must be a unit vector".into()));
    }
    if !body.is_interior(a) {
        return Err(Error::PointNotInterior);
    }
    let basis = orthonormal_complement(nu);
    let n = body.dim();
    let slice = if n == 2 {
        let w = &basis[0];
        let pos = 1.0 / body.gauge(a, w)?;
        let neg = 1.0 / body.gauge(a, &(-w))?;
        SliceRep::Interval { neg, pos }
    } else {
        match body {
            ConvexBody::HPoly(p) => SliceRep::Polytope(p.slice(a, &basis)?),
            ConvexBody::VPoly(p) => SliceRep::Polytope(p.to_h()?.slice(a, &basis)?),
            ConvexBody::Ellipsoid(e) => SliceRep::Ellipsoid(ellipsoid_slice(e, a, &basis)?),
            other => SliceRep::Radial {
                parent: other.clone(),
            },
        }
    };
    Ok(SectionData {
        base: a.clone(),
        normal: nu.clone(),
        basis,
        slice,
    })
}

/// Exact chart ellipsoid of an ellipsoid slice: substitute x = a + B z into
/// the quadratic form and complete the square.
fn ellipsoid_slice(e: &Ellipsoid, a: &Vector, basis: &[Vector]) -> Result<Ellipsoid> {
    let n = e.dim();
    let m = basis.len();
    let inv_sq = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0 / (e.semi_axes[i] * e.semi_axes[i])
        } else {
            0.0
        }
    });
    let q = &e.rotation * inv_sq * e.rotation.transpose();
    let b = columns_to_matrix(basis);
    let qm = b.transpose() * &q * &b;
    let offset = a - &e.center;
    let lin = b.transpose() * &q * &offset;
    let c0 = (offset.transpose() * &q * &offset)[(0, 0)] - 1.0;
    let center = -qm
        .clone()
        .lu()
        .solve(&lin)
        .ok_or(Error::DegenerateHull { rank: 0, dim: m })?;
    let rho2 = (center.transpose() * &qm * &center)[(0, 0)] - c0;
    if rho2 <= 0.0 {
        return Err(Error::PointNotInterior);
    }
    let eig = nalgebra::SymmetricEigen::new(qm / rho2);
    let semi_axes: Vec<f64> = eig.eigenvalues.iter().map(|&l| 1.0 / l.sqrt()).collect();
    Ellipsoid::new(center, semi_axes, Some(eig.eigenvectors))
}

impl SectionData {
    pub fn chart_dim(&self) -> usize {
        self.basis.len()
    }

    /// Chart point mapped back to the ambient space.
    pub fn embed(&self, z: &Vector) -> Vector {
        &self.base + from_chart(&self.basis, z)
    }

    /// (n-1)-measure of the slice.
    pub fn slice_measure(&self) -> Result<f64> {
        match &self.slice {
            SliceRep::Interval { neg, pos } => Ok(neg + pos),
            SliceRep::Polytope(h) => h.to_v()?.volume(),
            SliceRep::Ellipsoid(e) => Ok(e.volume()),
            SliceRep::Radial { parent } => {
                let m = self.chart_dim();
                let rho = |dir: &Vector| -> f64 {
                    let w = from_chart(&self.basis, dir);
                    match parent.gauge(&self.base, &w) {
                        Ok(g) if g > 0.0 => 1.0 / g,
                        _ => 0.0,
                    }
                };
                // |S| = (1/m) int rho^m over the chart sphere.
                let q = match m {
                    2 => {
                        let g = |t: f64| rho(&Vector::from_vec(vec![t.cos(), t.sin()])).powi(2);
                        quad::integrate_circle(&g, 1e-9)?
                    }
                    3 => quad::integrate_sphere(&|u: &Vector| rho(u).powi(3), 1e-7)?,
                    _ => return Err(Error::DomainError(format!("chart dim {m}"))),
                };
                Ok(q.value / m as f64)
            }
        }
    }

    /// Support function of the slice in chart coordinates.
    pub fn slice_support(&self, phi: &Vector) -> Result<f64> {
        match &self.slice {
            SliceRep::Interval { neg, pos } => Ok(if phi[0] >= 0.0 {
                pos * phi[0]
            } else {
                -neg * phi[0]
            }),
            SliceRep::Polytope(h) => {
                let interior = Vector::zeros(self.chart_dim());
                h.support_lp(phi, &interior)
            }
            SliceRep::Ellipsoid(e) => Ok(e.support(phi)),
            SliceRep::Radial { parent } => {
                // Maximize (r(psi) e(psi)) . phi along the slice boundary;
                // x . phi is unimodal along the boundary of a convex body.
                let m = self.chart_dim();
                let rho = |dir: &Vector| -> f64 {
                    let w = from_chart(&self.basis, dir);
                    match parent.gauge(&self.base, &w) {
                        Ok(g) if g > 0.0 => 1.0 / g,
                        _ => 0.0,
                    }
                };
                match m {
                    2 => {
                        let score = |t: f64| {
                            let e = Vector::from_vec(vec![t.cos(), t.sin()]);
                            rho(&e) * e.dot(phi)
                        };
                        Ok(periodic_max(&score))
                    }
                    3 => {
                        let mut best = f64::NEG_INFINITY;
                        for u in crate::body::direction_fan(3, 512) {
                            best = best.max(rho(&u) * u.dot(phi));
                        }
                        Ok(best)
                    }
                    _ => Err(Error::DomainError(format!("chart dim {m}"))),
                }
            }
        }
    }

    /// |S*(a, nu)|: measure of the polar of the slice within the chart.
    pub fn polar_measure(&self) -> Result<f64> {
        match &self.slice {
            SliceRep::Interval { neg, pos } => {
                if *neg <= 0.0 || *pos <= 0.0 {
                    return Err(Error::OriginNotInterior);
                }
                Ok(1.0 / neg + 1.0 / pos)
            }
            SliceRep::Polytope(_) => self.polar_polytope()?.volume(),
            _ => {
                let m = self.chart_dim();
                let sigma = |dir: &Vector| self.slice_support(dir).unwrap_or(f64::INFINITY);
                let q = match m {
                    2 => {
                        let g =
                            |t: f64| sigma(&Vector::from_vec(vec![t.cos(), t.sin()])).powi(-2);
                        quad::integrate_circle(&g, 1e-9)?
                    }
                    3 => quad::integrate_sphere(&|u: &Vector| sigma(u).powi(-3), 1e-7)?,
                    _ => return Err(Error::DomainError(format!("chart dim {m}"))),
                };
                Ok(q.value / m as f64)
            }
        }
    }

    /// Exact polar of a polytopal slice as a chart V-polytope.
    pub fn polar_polytope(&self) -> Result<VPolytope> {
        match &self.slice {
            SliceRep::Polytope(h) => h.polar(),
            SliceRep::Interval { neg, pos } => {
                if *neg <= 0.0 || *pos <= 0.0 {
                    return Err(Error::OriginNotInterior);
                }
                Ok(VPolytope {
                    vertices: vec![
                        Vector::from_vec(vec![1.0 / pos]),
                        Vector::from_vec(vec![-1.0 / neg]),
                    ],
                })
            }
            _ => Err(Error::DomainError("slice is not polytopal".into())),
        }
    }
}

/// Golden-section maximum of a 2pi-periodic function from the best of a
/// coarse scan.
fn periodic_max<F: Fn(f64) -> f64>(f: &F) -> f64 {
    const COARSE: usize = 256;
    let step = 2.0 * std::f64::consts::PI / COARSE as f64;
    let mut best_t = 0.0;
    let mut best = f(0.0);
    for i in 1..COARSE {
        let t = i as f64 * step;
        let v = f(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = (best_t - step, best_t + step);
    let phi = 0.5 * (3.0 - 5f64.sqrt());
    let (mut x1, mut x2) = (lo + phi * (hi - lo), hi - phi * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..70 {
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

/// The k-dimensional slice of a polytope by the subspace spanned by an
/// orthonormal `basis` (through the origin), as a chart H-polytope.
pub fn slice_subspace(body: &ConvexBody, basis: &[Vector]) -> Result<HPolytope> {
    let origin = Vector::zeros(body.dim());
    let h = match body.as_polytope() {
        Some(crate::body::PolytopeRep::H(p)) => p.clone(),
        Some(crate::body::PolytopeRep::V(p)) => p.to_h()?,
        None => return Err(Error::DomainError("subspace slices need a polytope".into())),
    };
    if h.slack(&origin).min() <= 0.0 {
        return Err(Error::OriginNotInterior);
    }
    h.slice(&origin, basis)
}

/// Orthogonal projection of the polar body onto the subspace spanned by
/// `basis`, in chart coordinates: project the polar's vertices, take the
/// hull.
pub fn project_polar(body: &ConvexBody, basis: &[Vector]) -> Result<VPolytope> {
    let polar: VPolytope = match body.as_polytope() {
        Some(crate::body::PolytopeRep::H(p)) => p.polar()?,
        Some(crate::body::PolytopeRep::V(p)) => p.polar()?.to_v()?,
        None => return Err(Error::DomainError("project_polar needs a polytope".into())),
    };
    let projected: Vec<Vector> = polar.vertices.iter().map(|w| to_chart(basis, w)).collect();
    VPolytope::new_with_dim(projected, basis.len())
}

/// Measure of `conv(points)` in its chart dimension, tolerating interior
/// points in the list.
pub fn projected_measure(v: &VPolytope) -> Result<f64> {
    hull_measure(&v.vertices, v.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from;

    fn square_body() -> ConvexBody {
        ConvexBody::HPoly(
            HPolytope::new(
                Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
                vec_from(&[1.0, 1.0, 1.0, 1.0]),
            )
            .unwrap(),
        )
    }

    fn cube_body() -> ConvexBody {
        let mut rows = Vec::new();
        let mut offs = Vec::new();
        for j in 0..3 {
            for s in [1.0, -1.0] {
                let mut r = [0.0; 3];
                r[j] = s;
                rows.extend_from_slice(&r);
                offs.push(1.0);
            }
        }
        ConvexBody::HPoly(
            HPolytope::new(Matrix::from_row_slice(6, 3, &rows), vec_from(&offs)).unwrap(),
        )
    }

    #[test]
    fn horizontal_slice_of_square() {
        let sq = square_body();
        let a = vec_from(&[0.0, -0.5]);
        let nu = vec_from(&[0.0, -1.0]);
        let s = section(&sq, &a, &nu).unwrap();
        assert!((s.slice_measure().unwrap() - 2.0).abs() < 1e-12);
        assert!((s.polar_measure().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ball3_slice_near_pole() {
        let ball = ConvexBody::Ellipsoid(Ellipsoid::ball(3, 1.0));
        let delta = 0.19;
        let a = vec_from(&[0.0, 0.0, -(1.0 - delta)]);
        let nu = vec_from(&[0.0, 0.0, -1.0]);
        let s = section(&ball, &a, &nu).unwrap();
        let r2 = 1.0 - (1.0 - delta) * (1.0 - delta); // radius^2 = 0.3439
        match &s.slice {
            SliceRep::Ellipsoid(e) => {
                assert!((e.semi_axes[0] * e.semi_axes[0] - r2).abs() < 1e-12);
                assert!((e.semi_axes[1] * e.semi_axes[1] - r2).abs() < 1e-12);
                assert!(e.center.norm() < 1e-12);
            }
            other => panic!("expected ellipsoid slice, got {other:?}"),
        }
        assert!((s.slice_measure().unwrap() - std::f64::consts::PI * r2).abs() < 1e-9);
    }

    #[test]
    fn cube_slice_through_center() {
        let s = section(&cube_body(), &Vector::zeros(3), &vec_from(&[0.0, 0.0, 1.0])).unwrap();
        assert!((s.slice_measure().unwrap() - 4.0).abs() < 1e-9);
        // Polar of [-1,1]^2 is the cross-polytope of area 2.
        assert!((s.polar_measure().unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn disk_slice_polar_matches_chord_formula() {
        let disk = ConvexBody::Ellipsoid(Ellipsoid::ball(2, 1.0));
        let delta = 0.02f64;
        let a = vec_from(&[0.0, -(1.0 - delta)]);
        let nu = vec_from(&[0.0, -1.0]);
        let s = section(&disk, &a, &nu).unwrap();
        let w = (2.0 * delta - delta * delta).sqrt();
        assert!((s.polar_measure().unwrap() - 2.0 / w).abs() < 1e-9);
    }

    #[test]
    fn ball3_slice_polar_at_depth() {
        let ball = ConvexBody::Ellipsoid(Ellipsoid::ball(3, 1.0));
        let delta = 0.02f64;
        let a = vec_from(&[0.0, 0.0, -(1.0 - delta)]);
        let nu = vec_from(&[0.0, 0.0, -1.0]);
        let s = section(&ball, &a, &nu).unwrap();
        let expect = std::f64::consts::PI / (2.0 * delta - delta * delta);
        let got = s.polar_measure().unwrap();
        assert!(
            ((got - expect) / expect).abs() < 1e-6,
            "got {got}, want {expect}"
        );
    }

    #[test]
    fn projection_of_cube_polar_is_cross_polytope() {
        let cube = cube_body();
        let basis = vec![vec_from(&[1.0, 0.0, 0.0]), vec_from(&[0.0, 1.0, 0.0])];
        let proj = project_polar(&cube, &basis).unwrap();
        assert!((projected_measure(&proj).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn square_polar_projected_to_axis_is_unit_interval() {
        let sq = square_body();
        let basis = vec![vec_from(&[1.0, 0.0])];
        let proj = project_polar(&sq, &basis).unwrap();
        assert!((projected_measure(&proj).unwrap() - 2.0).abs() < 1e-12);
        let lo = proj.vertices.iter().map(|v| v[0]).fold(f64::MAX, f64::min);
        let hi = proj.vertices.iter().map(|v| v[0]).fold(f64::MIN, f64::max);
        assert!((lo + 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slice_identity_on_the_cube() {
        // polar of the slice within the chart == projection of the polar.
        let cube = cube_body();
        let basis = vec![vec_from(&[1.0, 0.0, 0.0]), vec_from(&[0.0, 1.0, 0.0])];
        let slice = slice_subspace(&cube, &basis).unwrap();
        let polar_of_slice = slice.polar().unwrap();
        let projected = project_polar(&cube, &basis).unwrap();
        let viol = crate::polytope::hausdorff_violation(&polar_of_slice, &projected).unwrap();
        assert!(viol < 1e-9, "violation {viol}");
    }

    #[test]
    fn power_domain_slice_is_radial_and_consistent() {
        // {x3 > x1^2 + x2^2, x3 < 1} sliced horizontally at height t:
        // a disk of radius sqrt(t).
        let p = ConvexBody::Power(
            crate::body::PowerDomain::new(1.0, vec![2.0, 2.0], vec![], 1.0).unwrap(),
        );
        let t = 0.25f64;
        let a = vec_from(&[0.0, 0.0, t]);
        let nu = vec_from(&[0.0, 0.0, 1.0]);
        let s = section(&p, &a, &nu).unwrap();
        let expect = std::f64::consts::PI * t; // pi r^2, r = sqrt(t)
        let got = s.slice_measure().unwrap();
        assert!(((got - expect) / expect).abs() < 1e-6, "{got} vs {expect}");
        let polar_expect = std::f64::consts::PI / t; // polar disk radius 1/sqrt(t)
        let polar_got = s.polar_measure().unwrap();
        assert!(
            ((polar_got - polar_expect) / polar_expect).abs() < 1e-4,
            "{polar_got} vs {polar_expect}"
        );
    }
}
