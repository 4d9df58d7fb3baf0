//! Exact polytope pipeline for n in {2, 3, 4}: H- and V-representations,
//! polar duality, vertex/facet enumeration, and hull volumes.
//!
//! Facet enumeration is combinatorial (every n-subset of points spans a
//! candidate hyperplane, kept when it supports the set). That is O(k^n)
//! but exact up to rounding, which is the point of this path; the
//! quadrature path covers everything the combinatorics cannot reach.

use crate::error::{Error, Result};
use crate::linalg::{
    affine_rank, hyperplane_normal, orthonormal_complement, to_chart, vec_from, Matrix, Vector,
};
use crate::lp;

/// Row-merge tolerance for duplicate facet normals.
const MERGE_TOL: f64 = 1e-10;
/// Scale-relative tolerance for on-hyperplane / feasibility decisions.
const GEOM_TOL: f64 = 1e-9;

/// Intersection of half-spaces `{x : normals[i] . x <= offsets[i]}`,
/// rows normalized to unit length.
#[derive(Debug, Clone)]
pub struct HPolytope {
    pub normals: Matrix,
    pub offsets: Vector,
}

/// Convex hull of a finite point set. The list may contain non-extreme
/// points; every operation treats the hull of the list.
#[derive(Debug, Clone)]
pub struct VPolytope {
    pub vertices: Vec<Vector>,
}

/// A supporting hyperplane `{x : normal . x = offset}` with unit normal,
/// and the indices of the points lying on it.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub on_facet: Vec<usize>,
}

impl HPolytope {
    /// Normalize rows to unit length and merge facets whose normals differ
    /// by less than `MERGE_TOL`, keeping the smaller offset.
    pub fn new(normals: Matrix, offsets: Vector) -> Result<Self> {
        let m = normals.nrows();
        let n = normals.ncols();
        if offsets.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: offsets.len(),
            });
        }
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidBody(format!(
                "ambient dimension {n} outside 1..=4"
            )));
        }
        let mut rows: Vec<(Vector, f64)> = Vec::with_capacity(m);
        for i in 0..m {
            let row = normals.row(i).transpose();
            let norm = row.norm();
            if norm < 1e-14 {
                return Err(Error::InvalidBody(format!("zero normal in row {i}")));
            }
            let unit = row / norm;
            let off = offsets[i] / norm;
            match rows
                .iter_mut()
                .find(|(u, _)| (u - &unit).norm() < MERGE_TOL)
            {
                Some((_, o)) => *o = o.min(off),
                None => rows.push((unit, off)),
            }
        }
        let mm = rows.len();
        let normals = Matrix::from_fn(mm, n, |i, j| rows[i].0[j]);
        let offsets = Vector::from_iterator(mm, rows.iter().map(|(_, o)| *o));
        Ok(HPolytope { normals, offsets })
    }

    pub fn dim(&self) -> usize {
        self.normals.ncols()
    }

    pub fn num_facets(&self) -> usize {
        self.normals.nrows()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let r = &self.normals * x - &self.offsets;
        r.iter().all(|&v| v <= tol)
    }

    /// Signed slack vector `b - A x` (positive inside).
    pub fn slack(&self, x: &Vector) -> Vector {
        &self.offsets - &self.normals * x
    }

    /// `{x - t : x in P}`.
    pub fn translate(&self, t: &Vector) -> HPolytope {
        HPolytope {
            normals: self.normals.clone(),
            offsets: &self.offsets - &self.normals * t,
        }
    }

    /// Map the slice `{z : a + B z in P}` to an H-polytope in the chart
    /// spanned by the orthonormal columns `basis`. Rows that become zero
    /// (facets parallel to the chart) are dropped; `a` must be interior.
    pub fn slice(&self, a: &Vector, basis: &[Vector]) -> Result<HPolytope> {
        let k = basis.len();
        let shifted = self.slack(a);
        let mut rows: Vec<(Vector, f64)> = Vec::new();
        for i in 0..self.num_facets() {
            let ni = self.normals.row(i).transpose();
            let proj = Vector::from_iterator(k, basis.iter().map(|b| b.dot(&ni)));
            let norm = proj.norm();
            if norm < 1e-13 {
                if shifted[i] < 0.0 {
                    return Err(Error::PointNotInterior);
                }
                continue;
            }
            rows.push((proj, shifted[i]));
        }
        let m = rows.len();
        HPolytope::new(
            Matrix::from_fn(m, k, |i, j| rows[i].0[j]),
            Vector::from_iterator(m, rows.iter().map(|(_, o)| *o)),
        )
    }

    /// Enumerate vertices: every n-subset of facets is solved and kept when
    /// feasible. Exact up to rounding for n <= 4.
    pub fn vertices(&self) -> Result<Vec<Vector>> {
        let n = self.dim();
        let m = self.num_facets();
        if m < n {
            return Err(Error::InvalidBody(
                "fewer facets than dimensions: unbounded".into(),
            ));
        }
        let scale = 1.0_f64.max(self.offsets.amax());
        let mut verts: Vec<Vector> = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let sub = Matrix::from_fn(n, n, |i, j| self.normals[(idx[i], j)]);
            let rhs = Vector::from_iterator(n, idx.iter().map(|&i| self.offsets[i]));
            if let Some(x) = sub.clone().lu().solve(&rhs) {
                let residual = (&sub * &x - &rhs).amax();
                if residual < GEOM_TOL * scale && self.contains(&x, GEOM_TOL * scale) {
                    let x_scale = 1.0_f64.max(x.amax());
                    if !verts
                        .iter()
                        .any(|v| (v - &x).amax() < 10.0 * GEOM_TOL * x_scale)
                    {
                        verts.push(x);
                    }
                }
            }
            if !advance(&mut idx, m) {
                break;
            }
        }
        if verts.len() < n + 1 {
            return Err(Error::InvalidBody(
                "H-polytope has empty interior or is unbounded".into(),
            ));
        }
        Ok(verts)
    }

    /// A strictly interior point (vertex centroid).
    pub fn interior_point(&self) -> Result<Vector> {
        let verts = self.vertices()?;
        let n = self.dim();
        let mut c = Vector::zeros(n);
        for v in &verts {
            c += v;
        }
        c /= verts.len() as f64;
        if self.slack(&c).min() <= 0.0 {
            return Err(Error::InvalidBody("empty interior".into()));
        }
        Ok(c)
    }

    /// Support function via the linear program `max theta.x, A x <= b`.
    pub fn support_lp(&self, theta: &Vector, interior: &Vector) -> Result<f64> {
        Ok(lp::maximize(&self.normals, &self.offsets, theta, interior)?.value)
    }

    /// Chebyshev center and inradius.
    pub fn chebyshev(&self) -> Result<(Vector, f64)> {
        let interior = self.interior_point()?;
        lp::chebyshev_center(&self.normals, &self.offsets, &interior)
    }

    /// Polar `{A_i / b_i}` as a V-polytope; requires the origin interior
    /// (all offsets positive after normalization).
    pub fn polar(&self) -> Result<VPolytope> {
        let n = self.dim();
        if self.offsets.iter().any(|&b| b <= GEOM_TOL) {
            return Err(Error::OriginNotInterior);
        }
        let verts = (0..self.num_facets())
            .map(|i| self.normals.row(i).transpose() / self.offsets[i])
            .collect();
        VPolytope::new_with_dim(verts, n)
    }

    /// Convert to a V-polytope (vertex enumeration).
    pub fn to_v(&self) -> Result<VPolytope> {
        VPolytope::new_with_dim(self.vertices()?, self.dim())
    }

    /// Bounded iff the support LP stays finite along every axis direction.
    pub fn is_bounded(&self) -> Result<bool> {
        let interior = self.interior_point()?;
        let n = self.dim();
        for j in 0..n {
            for sign in [1.0, -1.0] {
                let mut c = Vector::zeros(n);
                c[j] = sign;
                match lp::maximize(&self.normals, &self.offsets, &c, &interior) {
                    Ok(_) => {}
                    Err(Error::UnboundedBody { .. }) => return Ok(false),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    }
}

impl VPolytope {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidBody("empty vertex list".into()));
        }
        let n = vertices[0].len();
        Self::new_with_dim(vertices, n)
    }

    pub fn new_with_dim(vertices: Vec<Vector>, n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidBody(format!(
                "ambient dimension {n} outside 1..=4"
            )));
        }
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: vertices.iter().map(|v| v.len()).find(|&l| l != n).unwrap(),
            });
        }
        let rank = affine_rank(&vertices, 1e-12);
        if vertices.len() < n + 1 || rank < n {
            return Err(Error::DegenerateHull { rank, dim: n });
        }
        Ok(VPolytope { vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn centroid(&self) -> Vector {
        let mut c = Vector::zeros(self.dim());
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    pub fn translate(&self, t: &Vector) -> VPolytope {
        VPolytope {
            vertices: self.vertices.iter().map(|v| v - t).collect(),
        }
    }

    /// Exact support: maximum over vertices.
    pub fn support(&self, theta: &Vector) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(theta))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Supporting hyperplanes of the hull.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        facets_of(&self.vertices, self.dim())
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        let scale = self.scale();
        Ok(self
            .facets()?
            .iter()
            .all(|f| f.normal.dot(x) - f.offset <= tol * scale))
    }

    fn scale(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.amax())
            .fold(1.0_f64, f64::max)
    }

    /// Exact hull volume by fan triangulation from the centroid.
    pub fn volume(&self) -> Result<f64> {
        hull_measure(&self.vertices, self.dim())
    }

    /// Polar `{y : v . y <= 1 for all vertices v}` as an H-polytope;
    /// requires the origin strictly inside the hull.
    pub fn polar(&self) -> Result<HPolytope> {
        let origin = Vector::zeros(self.dim());
        let scale = self.scale();
        for f in self.facets()? {
            if f.normal.dot(&origin) >= f.offset - GEOM_TOL / scale.max(1.0) {
                return Err(Error::OriginNotInterior);
            }
        }
        let k = self.vertices.len();
        let normals = Matrix::from_fn(k, self.dim(), |i, j| self.vertices[i][j]);
        let offsets = Vector::from_element(k, 1.0);
        HPolytope::new(normals, offsets)
    }

    /// H-representation of the hull (facet hyperplanes).
    pub fn to_h(&self) -> Result<HPolytope> {
        let facets = self.facets()?;
        let m = facets.len();
        let n = self.dim();
        HPolytope::new(
            Matrix::from_fn(m, n, |i, j| facets[i].normal[j]),
            Vector::from_iterator(m, facets.iter().map(|f| f.offset)),
        )
    }
}

/// Next combination in lexicographic order; false when exhausted.
fn advance(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if idx[i] != i + m - k {
            break;
        }
    }
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Supporting hyperplanes of `conv(points)` in R^n.
pub fn facets_of(points: &[Vector], n: usize) -> Result<Vec<Facet>> {
    let scale = points
        .iter()
        .map(|p| p.amax())
        .fold(1.0_f64, f64::max);
    let tol = GEOM_TOL * scale;
    if n == 1 {
        let lo = points.iter().map(|p| p[0]).fold(f64::MAX, f64::min);
        let hi = points.iter().map(|p| p[0]).fold(f64::MIN, f64::max);
        let locate = |c: f64, sgn: f64| Facet {
            normal: vec_from(&[sgn]),
            offset: sgn * c,
            on_facet: points
                .iter()
                .enumerate()
                .filter(|(_, p)| (p[0] - c).abs() <= tol)
                .map(|(i, _)| i)
                .collect(),
        };
        return Ok(vec![locate(hi, 1.0), locate(lo, -1.0)]);
    }
    if n == 2 {
        return polygon_facets(points, tol);
    }
    let rank = affine_rank(points, 1e-12);
    if rank < n {
        return Err(Error::DegenerateHull { rank, dim: n });
    }
    let k = points.len();
    let mut found: Vec<Facet> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let subset: Vec<Vector> = idx.iter().map(|&i| points[i].clone()).collect();
        if let Some(normal) = hyperplane_normal(&subset) {
            let offset = normal.dot(&subset[0]);
            let mut above = false;
            let mut below = false;
            for p in points {
                let s = normal.dot(p) - offset;
                if s > tol {
                    above = true;
                }
                if s < -tol {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            if above != below {
                let (normal, offset) = if below {
                    (normal, offset)
                } else {
                    (-normal, -offset)
                };
                let dup = found.iter().any(|f| {
                    (&f.normal - &normal).amax() < 1e-7 && (f.offset - offset).abs() < 10.0 * tol
                });
                if !dup {
                    let on_facet = points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| (normal.dot(p) - offset).abs() <= 10.0 * tol)
                        .map(|(i, _)| i)
                        .collect();
                    found.push(Facet {
                        normal,
                        offset,
                        on_facet,
                    });
                }
            } else if !above && !below {
                // all points coplanar would have been caught by the rank check
            }
        }
        if !advance(&mut idx, k) {
            break;
        }
    }
    if found.len() < n + 1 {
        return Err(Error::DegenerateHull { rank, dim: n });
    }
    Ok(found)
}

/// Convex polygon facets via Andrew's monotone chain.
fn polygon_facets(points: &[Vector], tol: f64) -> Result<Vec<Facet>> {
    let hull = polygon_hull_indices(points, tol)?;
    let mut facets = Vec::with_capacity(hull.len());
    for w in 0..hull.len() {
        let p = &points[hull[w]];
        let q = &points[hull[(w + 1) % hull.len()]];
        let edge = q - p;
        let len = edge.norm();
        if len < tol {
            continue;
        }
        // CCW hull: outward normal is the edge rotated -90 degrees.
        let normal = vec_from(&[edge[1] / len, -edge[0] / len]);
        let offset = normal.dot(p);
        let on_facet = points
            .iter()
            .enumerate()
            .filter(|(_, r)| (normal.dot(r) - offset).abs() <= 10.0 * tol)
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet {
            normal,
            offset,
            on_facet,
        });
    }
    if facets.len() < 3 {
        return Err(Error::DegenerateHull {
            rank: affine_rank(points, 1e-12),
            dim: 2,
        });
    }
    Ok(facets)
}

/// Indices of the convex hull of a planar point set, counterclockwise
/// (Andrew's monotone chain; collinear points dropped from the chain).
fn polygon_hull_indices(points: &[Vector], tol: f64) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        (points[i][0], points[i][1])
            .partial_cmp(&(points[j][0], points[j][1]))
            .unwrap()
    });
    order.dedup_by(|&mut i, &mut j| (&points[i] - &points[j]).amax() < tol * 1e-3);
    if order.len() < 3 {
        return Err(Error::DegenerateHull {
            rank: affine_rank(points, 1e-12),
            dim: 2,
        });
    }
    // Above fp cross-product noise (~ scale^2 * 1e-16), below real features.
    let scale = points.iter().map(|p| p.amax()).fold(1.0_f64, f64::max);
    let eps_area = 1e-13 * scale * scale;
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let chain = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut half: Vec<usize> = Vec::new();
        for i in iter {
            while half.len() >= 2 && cross(half[half.len() - 2], half[half.len() - 1], i) <= eps_area
            {
                half.pop();
            }
            half.push(i);
        }
        half.pop();
        half
    };
    let lower = chain(&mut order.iter().cloned());
    let upper = chain(&mut order.iter().rev().cloned());
    let hull: Vec<usize> = lower.into_iter().chain(upper).collect();
    if hull.len() < 3 {
        return Err(Error::DegenerateHull {
            rank: affine_rank(points, 1e-12),
            dim: 2,
        });
    }
    Ok(hull)
}

/// k-dimensional Hausdorff measure of `conv(points)` lying in R^k:
/// fan decomposition from the centroid, facet areas by recursion.
pub fn hull_measure(points: &[Vector], k: usize) -> Result<f64> {
    if k == 1 {
        let lo = points.iter().map(|p| p[0]).fold(f64::MAX, f64::min);
        let hi = points.iter().map(|p| p[0]).fold(f64::MIN, f64::max);
        return Ok((hi - lo).max(0.0));
    }
    if k == 2 {
        let scale = points.iter().map(|p| p.amax()).fold(1.0_f64, f64::max);
        let hull = polygon_hull_indices(points, GEOM_TOL * scale)?;
        let mut area = 0.0;
        for w in 0..hull.len() {
            let p = &points[hull[w]];
            let q = &points[hull[(w + 1) % hull.len()]];
            area += p[0] * q[1] - q[0] * p[1];
        }
        return Ok(0.5 * area.abs());
    }
    let facets = facets_of(points, k)?;
    let mut centroid = Vector::zeros(k);
    for p in points {
        centroid += p;
    }
    centroid /= points.len() as f64;
    let mut volume = 0.0;
    for f in &facets {
        let height = (f.offset - f.normal.dot(&centroid)).abs();
        let basis = orthonormal_complement(&f.normal);
        let anchor = &f.normal * f.offset;
        let chart_pts: Vec<Vector> = f
            .on_facet
            .iter()
            .map(|&i| to_chart(&basis, &(&points[i] - &anchor)))
            .collect();
        if chart_pts.len() < k {
            continue;
        }
        let area = match hull_measure(&chart_pts, k - 1) {
            Ok(a) => a,
            Err(Error::DegenerateHull { .. }) => continue,
            Err(e) => return Err(e),
        };
        volume += height * area / k as f64;
    }
    Ok(volume)
}

/// Max over `pts` of the worst constraint violation against the hull of
/// `other` (all unit facet normals). Zero when `conv(pts)` sits inside
/// `conv(other)`; used as a one-sided Hausdorff surrogate for polytopes.
pub fn containment_violation(pts: &[Vector], other: &VPolytope) -> Result<f64> {
    let facets = other.facets()?;
    let mut worst = 0.0_f64;
    for p in pts {
        for f in &facets {
            worst = worst.max(f.normal.dot(p) - f.offset);
        }
    }
    Ok(worst)
}

/// Symmetric version of [`containment_violation`].
pub fn hausdorff_violation(a: &VPolytope, b: &VPolytope) -> Result<f64> {
    Ok(containment_violation(&a.vertices, b)?.max(containment_violation(&b.vertices, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn square() -> HPolytope {
        HPolytope::new(
            Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
            vec_from(&[1.0, 1.0, 1.0, 1.0]),
        )
        .unwrap()
    }

    pub fn cube() -> HPolytope {
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
        HPolytope::new(Matrix::from_row_slice(6, 3, &rows), vec_from(&offs)).unwrap()
    }

    #[test]
    fn square_vertices_enumerated() {
        let verts = square().vertices().unwrap();
        assert_eq!(verts.len(), 4);
        for v in &verts {
            assert!((v[0].abs() - 1.0).abs() < 1e-12);
            assert!((v[1].abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn square_polar_is_cross_polytope() {
        let polar = square().polar().unwrap();
        assert_eq!(polar.vertices.len(), 4);
        assert!((polar.volume().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cross_polytope_polar_is_square() {
        let cross = VPolytope::new(vec![
            vec_from(&[1.0, 0.0]),
            vec_from(&[-1.0, 0.0]),
            vec_from(&[0.0, 1.0]),
            vec_from(&[0.0, -1.0]),
        ])
        .unwrap();
        let sq = cross.polar().unwrap();
        let verts = sq.vertices().unwrap();
        assert_eq!(verts.len(), 4);
        for v in &verts {
            assert!((v[0].abs() - 1.0).abs() < 1e-9);
            assert!((v[1].abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn triangle_polar_matches_vertex_to_facet_map() {
        // conv{(2,0),(0,2),(-1,-1)} -> {2y1 <= 1, 2y2 <= 1, -y1 - y2 <= 1}
        let tri = VPolytope::new(vec![
            vec_from(&[2.0, 0.0]),
            vec_from(&[0.0, 2.0]),
            vec_from(&[-1.0, -1.0]),
        ])
        .unwrap();
        let polar = tri.polar().unwrap();
        // Brute-force membership cross-check on a grid.
        for i in -20..=20 {
            for j in -20..=20 {
                let y = vec_from(&[i as f64 * 0.1, j as f64 * 0.1]);
                let in_polar = polar.contains(&y, 1e-12);
                let by_def = tri.vertices.iter().all(|v| v.dot(&y) <= 1.0 + 1e-12);
                assert_eq!(in_polar, by_def, "mismatch at {y:?}");
            }
        }
    }

    #[test]
    fn cube_volume_is_eight() {
        let v = cube().to_v().unwrap();
        assert_eq!(v.vertices.len(), 8);
        assert!((v.volume().unwrap() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn skewed_quadrilateral_volume() {
        // conv{(+-1,0),(0,1/(2-d)),(0,-1/d)} with d = 0.5 has area 8/3.
        let d = 0.5;
        let quad = VPolytope::new(vec![
            vec_from(&[1.0, 0.0]),
            vec_from(&[-1.0, 0.0]),
            vec_from(&[0.0, 1.0 / (2.0 - d)]),
            vec_from(&[0.0, -1.0 / d]),
        ])
        .unwrap();
        assert!((quad.volume().unwrap() - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cube_double_polar_returns_cube() {
        let cross = cube().polar().unwrap(); // octahedron
        assert!((cross.volume().unwrap() - 4.0 / 3.0).abs() < 1e-12);
        let back = cross.polar().unwrap().to_v().unwrap();
        assert_eq!(back.vertices.len(), 8);
        for v in &back.vertices {
            for c in v.iter() {
                assert!((c.abs() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn four_dim_cross_polytope_volume() {
        // polar of [-1,1]^4; |cross_4| = 2^4 / 4! = 2/3.
        let mut rows = Vec::new();
        let mut offs = Vec::new();
        for j in 0..4 {
            for s in [1.0f64, -1.0] {
                let mut r = [0.0; 4];
                r[j] = s;
                rows.extend_from_slice(&r);
                offs.push(1.0);
            }
        }
        let tesseract =
            HPolytope::new(Matrix::from_row_slice(8, 4, &rows), vec_from(&offs)).unwrap();
        let cross = tesseract.polar().unwrap();
        assert!((cross.volume().unwrap() - 2.0 / 3.0).abs() < 1e-9);
        let verts = tesseract.vertices().unwrap();
        assert_eq!(verts.len(), 16);
    }

    #[test]
    fn slice_of_cube_is_square() {
        let c = cube();
        let nu = vec_from(&[0.0, 0.0, 1.0]);
        let basis = orthonormal_complement(&nu);
        let slice = c.slice(&vec_from(&[0.0, 0.0, 0.0]), &basis).unwrap();
        let v = slice.to_v().unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!((v.volume().unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_center_of_cube() {
        let (c, r) = cube().chebyshev().unwrap();
        assert!(c.amax() < 1e-9);
        assert!((r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_h_polytope_rejected() {
        let half = HPolytope::new(
            Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
            vec_from(&[1.0, 1.0]),
        )
        .unwrap();
        assert!(half.vertices().is_err());
    }
}
