//! The tagged convex-body representation and its uniform primitive
//! operations: support, gauge, boundary distance, normal sets.

pub mod ellipsoid;
pub mod graph2d;
pub mod oracle;
pub mod powerdom;
pub mod spec;

pub use ellipsoid::Ellipsoid;
pub use graph2d::{GraphDomain2D, ProfileKind};
pub use oracle::{direction_fan, SmoothnessHint, SupportOracle};
pub use powerdom::PowerDomain;
pub use spec::BodySpec;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::polytope::{HPolytope, VPolytope};

/// A bounded open convex set in one of the supported representations.
#[derive(Debug, Clone)]
pub enum ConvexBody {
    HPoly(HPolytope),
    VPoly(VPolytope),
    Ellipsoid(Ellipsoid),
    Graph2D(GraphDomain2D),
    Power(PowerDomain),
    Oracle(SupportOracle),
}

/// Borrowed view of the exact-polytope representations.
pub enum PolytopeRep<'a> {
    H(&'a HPolytope),
    V(&'a VPolytope),
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::HPoly(p) => p.dim(),
            ConvexBody::VPoly(p) => p.dim(),
            ConvexBody::Ellipsoid(e) => e.dim(),
            ConvexBody::Graph2D(_) => 2,
            ConvexBody::Power(p) => p.dim(),
            ConvexBody::Oracle(o) => o.dim,
        }
    }

    pub fn as_polytope(&self) -> Option<PolytopeRep<'_>> {
        match self {
            ConvexBody::HPoly(p) => Some(PolytopeRep::H(p)),
            ConvexBody::VPoly(p) => Some(PolytopeRep::V(p)),
            _ => None,
        }
    }

    /// Closure membership with tolerance.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            ConvexBody::HPoly(p) => p.contains(x, tol),
            ConvexBody::VPoly(p) => p.contains(x, tol).unwrap_or(false),
            ConvexBody::Ellipsoid(e) => e.contains(x, tol),
            ConvexBody::Graph2D(g) => g.contains(x, tol),
            ConvexBody::Power(p) => p.contains(x, tol),
            ConvexBody::Oracle(o) => o.contains(x, tol),
        }
    }

    /// Strict interior test (exact per representation, no tolerance).
    pub fn is_interior(&self, x: &Vector) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            ConvexBody::HPoly(p) => p.slack(x).min() > 0.0,
            ConvexBody::VPoly(p) => match p.facets() {
                Ok(facets) => facets.iter().all(|f| f.normal.dot(x) < f.offset),
                Err(_) => false,
            },
            ConvexBody::Ellipsoid(e) => e.level(x) < 1.0,
            ConvexBody::Graph2D(g) => g.is_interior(x),
            ConvexBody::Power(p) => p.is_interior(x),
            ConvexBody::Oracle(o) => o.min_margin(x) > 0.0,
        }
    }

    /// Support of the body itself (positively homogeneous in `theta`).
    pub fn support_raw(&self, theta: &Vector) -> Result<f64> {
        if theta.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: theta.len(),
            });
        }
        Ok(match self {
            ConvexBody::HPoly(p) => {
                let interior = p.interior_point()?;
                p.support_lp(theta, &interior)?
            }
            ConvexBody::VPoly(p) => p.support(theta),
            ConvexBody::Ellipsoid(e) => e.support(theta),
            ConvexBody::Graph2D(g) => g.support(theta),
            ConvexBody::Power(p) => p.support(theta),
            ConvexBody::Oracle(o) => {
                let norm = theta.norm();
                norm * o.support(&(theta / norm))
            }
        })
    }

    /// sigma_{Omega - base}(theta) for a unit direction `theta` and a base
    /// point in the closure of the body.
    pub fn support(&self, theta: &Vector, base: &Vector) -> Result<f64> {
        if (theta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::DomainError("direction must be a unit vector".into()));
        }
        if !self.contains(base, 1e-9) {
            return Err(Error::BaseNotInterior);
        }
        Ok(self.support_raw(theta)? - base.dot(theta))
    }

    /// Minkowski gauge of `Omega - base` at `v`: the unique t >= 0 with
    /// v/t on the boundary; < 1 iff base + v interior.
    pub fn gauge(&self, base: &Vector, v: &Vector) -> Result<f64> {
        if !self.is_interior(base) {
            return Err(Error::BaseNotInterior);
        }
        if v.norm() == 0.0 {
            return Ok(0.0);
        }
        match self {
            ConvexBody::HPoly(p) => gauge_facets(p, base, v),
            ConvexBody::VPoly(p) => gauge_facets(&p.to_h()?, base, v),
            ConvexBody::Ellipsoid(e) => e.gauge(base, v),
            _ => self.gauge_bisect(base, v),
        }
    }

    /// Bracketed bisection along the ray (80 iterations; monotone
    /// membership makes this unconditionally convergent).
    fn gauge_bisect(&self, base: &Vector, v: &Vector) -> Result<f64> {
        let member = |t: f64| self.contains(&(base + v / t), 0.0);
        let mut hi = 1.0;
        let mut grow = 0;
        while !member(hi) {
            hi *= 2.0;
            grow += 1;
            if grow > 200 {
                return Err(Error::UnboundedBody {
                    direction: v.iter().cloned().collect(),
                });
            }
        }
        let mut lo = hi;
        let mut shrink = 0;
        while member(lo) {
            lo *= 0.5;
            shrink += 1;
            if shrink > 2000 {
                return Ok(0.0); // v/t stays inside: gauge is zero only for v = 0
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if member(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// dist(a, boundary) for interior a.
    pub fn distance_to_boundary(&self, a: &Vector) -> Result<f64> {
        if !self.is_interior(a) {
            return Err(Error::PointNotInterior);
        }
        match self {
            ConvexBody::HPoly(p) => Ok(p.slack(a).min()),
            ConvexBody::VPoly(p) => Ok(p.to_h()?.slack(a).min()),
            ConvexBody::Ellipsoid(e) => Ok(e.nearest_boundary(a)?.0),
            ConvexBody::Graph2D(g) => Ok(g.nearest_boundary_points(a, 1e-9)?.0),
            ConvexBody::Power(p) => Ok(p.nearest_boundary_points(a, 1e-9)?.0),
            ConvexBody::Oracle(o) => o.distance_to_boundary(a),
        }
    }

    /// Unit directions toward the nearest boundary points. Exact facet
    /// normals for polytopes; a tolerance-clustered sample when the set
    /// can be a continuum.
    pub fn normal_set(&self, a: &Vector, tol: f64) -> Result<Vec<Vector>> {
        if tol <= 0.0 {
            return Err(Error::DomainError("tol must be positive".into()));
        }
        if !self.is_interior(a) {
            return Err(Error::PointNotInterior);
        }
        match self {
            ConvexBody::HPoly(p) => Ok(normals_from_h(p, a, tol)),
            ConvexBody::VPoly(p) => Ok(normals_from_h(&p.to_h()?, a, tol)),
            ConvexBody::Ellipsoid(e) => ellipsoid_normals(e, a, tol),
            ConvexBody::Graph2D(g) => {
                let (d, pts) = g.nearest_boundary_points(a, tol)?;
                Ok(dirs_from_points(a, &pts, d))
            }
            ConvexBody::Power(p) => {
                let (d, pts) = p.nearest_boundary_points(a, tol)?;
                Ok(dirs_from_points(a, &pts, d))
            }
            ConvexBody::Oracle(o) => oracle_normals(o, a, tol),
        }
    }

    /// Chebyshev center and inradius.
    pub fn chebyshev(&self) -> Result<(Vector, f64)> {
        match self {
            ConvexBody::HPoly(p) => p.chebyshev(),
            ConvexBody::VPoly(p) => p.to_h()?.chebyshev(),
            ConvexBody::Ellipsoid(e) => Ok((
                e.center.clone(),
                e.semi_axes.iter().cloned().fold(f64::MAX, f64::min),
            )),
            ConvexBody::Graph2D(g) => Ok((
                Vector::from_vec(vec![0.0, g.d / 2.0]),
                g.inradius(),
            )),
            ConvexBody::Power(p) => Ok(p.chebyshev()),
            ConvexBody::Oracle(o) => {
                // Nelder-Mead on the sampled margin from the origin.
                let d0 = o.min_margin(&Vector::zeros(o.dim));
                if d0 <= 0.0 {
                    return Err(Error::OriginNotInterior);
                }
                Ok(nelder_mead_max(
                    |x| o.min_margin(x),
                    Vector::zeros(o.dim),
                    0.2 * d0.max(0.1),
                ))
            }
        }
    }

    /// Upper bound on max |x| over the body (circumradius about the origin).
    pub fn circumradius_bound(&self) -> Result<f64> {
        Ok(match self {
            ConvexBody::HPoly(p) => p
                .vertices()?
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max),
            ConvexBody::VPoly(p) => p.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max),
            ConvexBody::Ellipsoid(e) => {
                e.center.norm() + e.semi_axes.iter().cloned().fold(0.0, f64::max)
            }
            ConvexBody::Graph2D(g) => g.circumradius_bound(),
            ConvexBody::Power(p) => p.circumradius_bound(),
            ConvexBody::Oracle(o) => direction_fan(o.dim, 256)
                .iter()
                .map(|t| o.support(t))
                .fold(0.0, f64::max),
        })
    }

    pub fn diameter_bound(&self) -> Result<f64> {
        Ok(2.0 * self.circumradius_bound()?)
    }

    /// Whether the exact polytope pipeline applies.
    pub fn is_exact(&self) -> bool {
        self.as_polytope().is_some()
    }

    pub fn from_json(text: &str) -> Result<ConvexBody> {
        let spec: BodySpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidBody(e.to_string()))?;
        spec.build()
    }
}

fn gauge_facets(p: &HPolytope, base: &Vector, v: &Vector) -> Result<f64> {
    let slack = p.slack(base);
    if slack.min() <= 0.0 {
        return Err(Error::BaseNotInterior);
    }
    let mut g: f64 = 0.0;
    for i in 0..p.num_facets() {
        let num = p.normals.row(i).transpose().dot(v);
        if num > 0.0 {
            g = g.max(num / slack[i]);
        }
    }
    Ok(g)
}

fn normals_from_h(p: &HPolytope, a: &Vector, tol: f64) -> Vec<Vector> {
    let slack = p.slack(a);
    let d = slack.min();
    (0..p.num_facets())
        .filter(|&i| slack[i] <= d * (1.0 + tol))
        .map(|i| p.normals.row(i).transpose())
        .collect()
}

fn dirs_from_points(a: &Vector, pts: &[Vector], d: f64) -> Vec<Vector> {
    pts.iter()
        .filter(|p| (*p - a).norm() > 0.5 * d)
        .map(|p| {
            let v = p - a;
            let n = v.norm();
            v / n
        })
        .collect()
}

fn ellipsoid_normals(e: &Ellipsoid, a: &Vector, tol: f64) -> Result<Vec<Vector>> {
    let (d, nearest) = e.nearest_boundary(a)?;
    // Degenerate centers produce a continuum; detect by probing a ring of
    // rotations of the found direction and keep a well-spread subsample.
    let base_dir = (&nearest - a) / d;
    let fan = direction_fan(e.dim(), if e.dim() == 2 { 64 } else { 162 });
    let mut result: Vec<Vector> = vec![base_dir.clone()];
    for dir in fan {
        let margin = e.support(&dir) - a.dot(&dir);
        if margin <= d * (1.0 + tol) {
            if !result.iter().any(|r| (r - &dir).norm() < tol.max(1e-7)) {
                result.push(dir);
            }
        }
    }
    Ok(result)
}

fn oracle_normals(o: &SupportOracle, a: &Vector, tol: f64) -> Result<Vec<Vector>> {
    let fan = direction_fan(o.dim, 512);
    let margins: Vec<f64> = fan.iter().map(|t| o.support(t) - a.dot(t)).collect();
    let d = margins.iter().cloned().fold(f64::MAX, f64::min);
    if d <= 0.0 {
        return Err(Error::PointNotInterior);
    }
    let mut result: Vec<Vector> = Vec::new();
    for (dir, &m) in fan.iter().zip(&margins) {
        if m <= d * (1.0 + tol) && !result.iter().any(|r| (r - dir).norm() < tol.max(1e-7)) {
            result.push(dir.clone());
        }
    }
    Ok(result)
}

/// Tiny deterministic Nelder-Mead used for oracle Chebyshev centers.
fn nelder_mead_max<F: Fn(&Vector) -> f64>(f: F, start: Vector, step: f64) -> (Vector, f64) {
    let n = start.len();
    let mut simplex: Vec<Vector> = vec![start.clone()];
    for j in 0..n {
        let mut p = start.clone();
        p[j] += step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    for _ in 0..400 {
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
        let simplex2: Vec<Vector> = order.iter().map(|&i| simplex[i].clone()).collect();
        let values2: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = simplex2;
        values = values2;
        let worst = simplex.len() - 1;
        let mut centroid = Vector::zeros(n);
        for p in &simplex[..worst] {
            centroid += p;
        }
        centroid /= worst as f64;
        let reflect = &centroid * 2.0 - &simplex[worst];
        let fr = f(&reflect);
        if fr > values[0] {
            let expand = &centroid * 3.0 - &simplex[worst] * 2.0;
            let fe = f(&expand);
            if fe > fr {
                simplex[worst] = expand;
                values[worst] = fe;
            } else {
                simplex[worst] = reflect;
                values[worst] = fr;
            }
        } else if fr > values[worst - 1] {
            simplex[worst] = reflect;
            values[worst] = fr;
        } else {
            let contract = (&centroid + &simplex[worst]) * 0.5;
            let fc = f(&contract);
            if fc > values[worst] {
                simplex[worst] = contract;
                values[worst] = fc;
            } else {
                for i in 1..simplex.len() {
                    simplex[i] = (&simplex[i] + &simplex[0]) * 0.5;
                    values[i] = f(&simplex[i]);
                }
            }
        }
        let spread = (0..simplex.len())
            .map(|i| (&simplex[i] - &simplex[0]).norm())
            .fold(0.0, f64::max);
        if spread < 1e-12 {
            break;
        }
    }
    let best = (0..values.len())
        .max_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap())
        .unwrap();
    (simplex[best].clone(), values[best])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from;
    use crate::linalg::Matrix;

    pub fn square_body() -> ConvexBody {
        ConvexBody::HPoly(
            HPolytope::new(
                Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
                vec_from(&[1.0, 1.0, 1.0, 1.0]),
            )
            .unwrap(),
        )
    }

    pub fn disk_body() -> ConvexBody {
        ConvexBody::Ellipsoid(Ellipsoid::ball(2, 1.0))
    }

    #[test]
    fn support_of_square_is_l1() {
        let sq = square_body();
        let base = Vector::zeros(2);
        for t in [0.1f64, 0.9, 2.2, 4.4] {
            let theta = vec_from(&[t.cos(), t.sin()]);
            let s = sq.support(&theta, &base).unwrap();
            assert!((s - (t.cos().abs() + t.sin().abs())).abs() < 1e-9);
        }
    }

    #[test]
    fn support_of_disk_is_one() {
        let disk = disk_body();
        let base = Vector::zeros(2);
        let theta = vec_from(&[0.6, 0.8]);
        assert!((disk.support(&theta, &base).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauge_examples() {
        let disk = disk_body();
        let sq = square_body();
        let g = disk.gauge(&Vector::zeros(2), &vec_from(&[0.5, 0.0])).unwrap();
        assert!((g - 0.5).abs() < 1e-12);
        let g = sq.gauge(&Vector::zeros(2), &vec_from(&[0.25, 1.0])).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
        let g = sq
            .gauge(&vec_from(&[0.5, 0.0]), &vec_from(&[0.4, 0.0]))
            .unwrap();
        assert!((g - 0.8).abs() < 1e-12);
    }

    #[test]
    fn gauge_level_sets_classify_membership() {
        let sq = square_body();
        let base = vec_from(&[0.2, -0.1]);
        for (v, inside) in [
            (vec_from(&[0.5, 0.5]), true),
            (vec_from(&[1.5, 0.0]), false),
            (vec_from(&[-1.0, 0.9]), true),
        ] {
            let g = sq.gauge(&base, &v).unwrap();
            assert_eq!(g < 1.0, inside, "gauge {g} vs inside {inside}");
        }
    }

    #[test]
    fn distance_examples() {
        let sq = square_body();
        assert!((sq.distance_to_boundary(&vec_from(&[0.2, 0.0])).unwrap() - 0.8).abs() < 1e-12);
        let disk = disk_body();
        assert!(
            (disk.distance_to_boundary(&vec_from(&[0.0, 0.25])).unwrap() - 0.75).abs() < 1e-9
        );
        let ell = ConvexBody::Ellipsoid(
            Ellipsoid::new(Vector::zeros(2), vec![2.0, 1.0], None).unwrap(),
        );
        assert!((ell.distance_to_boundary(&vec_from(&[0.0, 0.9])).unwrap() - 0.1).abs() < 1e-9);
    }

    #[test]
    fn normal_sets_of_square() {
        let sq = square_body();
        let ns = sq.normal_set(&vec_from(&[0.2, 0.0]), 1e-9).unwrap();
        assert_eq!(ns.len(), 1);
        assert!((ns[0][0] - 1.0).abs() < 1e-12);
        let ns = sq.normal_set(&Vector::zeros(2), 1e-9).unwrap();
        assert_eq!(ns.len(), 4);
    }

    #[test]
    fn normal_set_of_disk_center_is_well_spread() {
        let disk = disk_body();
        let ns = disk.normal_set(&Vector::zeros(2), 1e-3).unwrap();
        assert!(ns.len() >= 16, "got {}", ns.len());
    }

    #[test]
    fn chebyshev_of_bodies() {
        let (c, r) = square_body().chebyshev().unwrap();
        assert!(c.amax() < 1e-9 && (r - 1.0).abs() < 1e-9);
        let (c, r) = disk_body().chebyshev().unwrap();
        assert!(c.amax() < 1e-12 && (r - 1.0).abs() < 1e-12);
    }

}
