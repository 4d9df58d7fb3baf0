//! The modulus engine: polar volumes f(a) = |(Omega - a)*|, the sharp
//! modulus omega(delta) = sup { f(a)^{-1/n} : d(a) <= delta }, its
//! section-polar sandwich bounds, and Mahler products.

use crate::body::{ConvexBody, PolytopeRep};
use crate::error::{Error, Result};
use crate::linalg::{lex_less, vec_from, Vector};
use crate::polytope::VPolytope;
use crate::quad;
use crate::rng;
use crate::section;
use rayon::prelude::*;
use serde::Serialize;

/// Points closer to the boundary than this are refused on the quadrature
/// path: the radial integrand is near-singular there and closed forms or
/// asymptotics should be used instead.
pub const NEAR_BOUNDARY_REFUSAL: f64 = 1e-6;

/// The polar body (Omega - a)* together with its volume f(a).
#[derive(Debug, Clone)]
pub struct PolarBody {
    pub rep: PolarRep,
    pub volume: f64,
    pub base: Vector,
    /// Estimated absolute volume error (0 on the exact path).
    pub volume_error: f64,
}

#[derive(Debug, Clone)]
pub enum PolarRep {
    /// Exact vertex representation.
    Exact(VPolytope),
    /// Radial oracle theta -> scale / sigma_{Omega-a}(theta).
    Radial {
        parent: ConvexBody,
        base: Vector,
        scale: f64,
    },
}

/// Options for the quadrature path of `f_omega`.
#[derive(Debug, Clone, Copy)]
pub struct FOpts {
    pub tol: f64,
    pub seed: u64,
}

impl FOpts {
    pub fn for_dim(n: usize) -> Self {
        let tol = match n {
            2 => 1e-8,
            3 => 1e-6,
            _ => 5e-2,
        };
        FOpts { tol, seed: 0 }
    }
}

/// f(a) = |(Omega - a)*|: exact polar volume for polytopes, radial
/// quadrature (1/n) int sigma^{-n} for everything else.
pub fn f_omega(body: &ConvexBody, a: &Vector, opts: FOpts) -> Result<PolarBody> {
    if !body.is_interior(a) {
        return Err(Error::PointNotInterior);
    }
    let n = body.dim();
    match body.as_polytope() {
        Some(PolytopeRep::H(h)) => {
            let polar = h.translate(a).polar()?;
            let volume = polar.volume()?;
            Ok(PolarBody {
                rep: PolarRep::Exact(polar),
                volume,
                base: a.clone(),
                volume_error: 0.0,
            })
        }
        Some(PolytopeRep::V(v)) => {
            let polar = v.translate(a).polar()?.to_v()?;
            let volume = polar.volume()?;
            Ok(PolarBody {
                rep: PolarRep::Exact(polar),
                volume,
                base: a.clone(),
                volume_error: 0.0,
            })
        }
        None => {
            let d = body.distance_to_boundary(a)?;
            if d < NEAR_BOUNDARY_REFUSAL {
                return Err(Error::QuadratureNotConverged {
                    estimated: f64::INFINITY,
                    tolerance: opts.tol,
                });
            }
            let (value, error) = radial_volume(body, a, n, opts)?;
            Ok(PolarBody {
                rep: PolarRep::Radial {
                    parent: body.clone(),
                    base: a.clone(),
                    scale: 1.0,
                },
                volume: value,
                base: a.clone(),
                volume_error: error,
            })
        }
    }
}

fn radial_volume(body: &ConvexBody, a: &Vector, n: usize, opts: FOpts) -> Result<(f64, f64)> {
    let sigma = |theta: &Vector| -> f64 { body.support_raw(theta).unwrap_or(f64::INFINITY) - a.dot(theta) };
    let q = match n {
        2 => {
            let g = |t: f64| {
                let theta = vec_from(&[t.cos(), t.sin()]);
                sigma(&theta).powi(-2)
            };
            quad::integrate_circle(&g, opts.tol)?
        }
        3 => quad::integrate_sphere(&|u: &Vector| sigma(u).powi(-3), opts.tol)?,
        4 => {
            let q = quad::integrate_s3(&|u: &Vector| sigma(u).powi(-4), quad::S3_POINTS, opts.seed);
            let rel = q.error / q.value.abs().max(f64::MIN_POSITIVE);
            if rel > opts.tol {
                return Err(Error::QuadratureNotConverged {
                    estimated: rel,
                    tolerance: opts.tol,
                });
            }
            q
        }
        _ => return Err(Error::DomainError(format!("dimension {n}"))),
    };
    Ok((q.value / n as f64, q.error / n as f64))
}

/// Shell and search options for the omega maximization.
#[derive(Debug, Clone)]
pub struct OmegaOpts {
    pub boundary_samples: usize,
    pub refine_iters: usize,
    pub seed: u64,
    pub tol: f64,
    /// Extra shell ray directions merged into the sample (deterministic).
    pub extra_directions: Vec<Vector>,
}

impl OmegaOpts {
    pub fn for_dim(n: usize) -> Self {
        OmegaOpts {
            boundary_samples: match n {
                2 => 96,
                3 => 128,
                _ => 128,
            },
            refine_iters: 8,
            seed: 0,
            tol: FOpts::for_dim(n).tol,
            extra_directions: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// One evaluated sample of omega's objective.
#[derive(Debug, Clone)]
pub struct OmegaPoint {
    pub value: f64,
    pub argmax: Vector,
    pub samples_used: usize,
    /// Excess of the interior-lattice maximum over the shell maximum
    /// (sampling slack carried into sandwich assertions), plus quadrature
    /// slack on the value.
    pub slack: f64,
    pub shell_value: f64,
}

/// Deterministic shell ray directions: axes, structured polytope
/// directions, extras, and a seeded well-spread fan.
fn shell_directions(body: &ConvexBody, opts: &OmegaOpts) -> Vec<Vector> {
    let n = body.dim();
    let mut dirs: Vec<Vector> = Vec::new();
    for j in 0..n {
        for s in [1.0, -1.0] {
            let mut d = Vector::zeros(n);
            d[j] = s;
            dirs.push(d);
        }
    }
    match body.as_polytope() {
        Some(PolytopeRep::H(h)) => {
            for i in 0..h.num_facets() {
                dirs.push(h.normals.row(i).transpose());
            }
            if let Ok(verts) = h.vertices() {
                let c = verts.iter().fold(Vector::zeros(n), |acc, v| acc + v) / verts.len() as f64;
                for v in verts {
                    let d = &v - &c;
                    let norm = d.norm();
                    if norm > 1e-12 {
                        dirs.push(d / norm);
                    }
                }
            }
        }
        Some(PolytopeRep::V(v)) => {
            if let Ok(h) = v.to_h() {
                for i in 0..h.num_facets() {
                    dirs.push(h.normals.row(i).transpose());
                }
            }
            let c = v.centroid();
            for vert in &v.vertices {
                let d = vert - &c;
                let norm = d.norm();
                if norm > 1e-12 {
                    dirs.push(d / norm);
                }
            }
        }
        None => {}
    }
    dirs.extend(opts.extra_directions.iter().cloned());
    let mut rng = rng::stream(opts.seed, 0x5E11);
    while dirs.len() < opts.boundary_samples.max(2 * n) {
        dirs.push(Vector::from_vec(rng::unit_direction(&mut rng, n)));
    }
    dirs
}

/// Point on the ray from `center` along `dir` with boundary distance
/// `target` (d is nonincreasing along rays from the Chebyshev center).
fn shell_point(
    body: &ConvexBody,
    center: &Vector,
    dir: &Vector,
    target: f64,
    diam: f64,
) -> Option<Vector> {
    let g = body.gauge(center, dir).ok()?;
    if g <= 0.0 {
        return None;
    }
    let t_boundary = 1.0 / g;
    let d_center = body.distance_to_boundary(center).ok()?;
    if d_center < target {
        return None;
    }
    let (mut lo, mut hi) = (0.0_f64, t_boundary);
    // d(center + lo dir) >= target >= 0 = d(boundary)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = center + dir * mid;
        let d = body.distance_to_boundary(&p).unwrap_or(0.0);
        if d > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) * dir.norm() < 1e-12 * diam.max(1.0) {
            break;
        }
    }
    let t = 0.5 * (lo + hi);
    Some(center + dir * t)
}

/// Deterministic shell sample of `{ d = delta }`.
pub fn shell_sample(
    body: &ConvexBody,
    delta: f64,
    opts: &OmegaOpts,
) -> Result<(Vec<Vector>, Vector, f64)> {
    let (center, inradius) = body.chebyshev()?;
    if delta > inradius * (1.0 + 1e-9) {
        return Err(Error::DeltaExceedsInradius {
            delta,
            inradius,
        });
    }
    let delta = delta.min(inradius);
    let diam = body.diameter_bound()?;
    let dirs = shell_directions(body, opts);
    let pts: Vec<Vector> = dirs
        .par_iter()
        .filter_map(|dir| shell_point(body, &center, dir, delta, diam))
        .collect();
    Ok((pts, center, inradius))
}

fn objective(body: &ConvexBody, p: &Vector, n: usize, fopts: FOpts) -> Option<(f64, f64)> {
    match f_omega(body, p, fopts) {
        Ok(pb) => {
            let value = pb.volume.powf(-1.0 / n as f64);
            let rel_err = pb.volume_error / pb.volume.abs().max(f64::MIN_POSITIVE);
            Some((value, value * rel_err / n as f64))
        }
        Err(_) => None,
    }
}

/// omega(delta): maximize f(a)^{-1/n} over the sampled shell {d = delta}
/// plus a coarse interior lattice of {d < delta} (no monotonicity of f
/// along inward normals is assumed), with a coordinate-search polish.
pub fn omega(body: &ConvexBody, delta: f64, opts: &OmegaOpts) -> Result<OmegaPoint> {
    let n = body.dim();
    let fopts = FOpts {
        tol: opts.tol,
        seed: opts.seed,
    };
    let (shell, center, _) = shell_sample(body, delta, opts)?;
    let diam = body.diameter_bound()?;
    let dirs = shell_directions(body, opts);
    // Coarse interior lattice of the collar {d < delta}.
    let lattice: Vec<Vector> = dirs
        .par_iter()
        .enumerate()
        .filter(|(i, _)| i % 4 == 0)
        .flat_map_iter(|(_, dir)| {
            [0.25, 0.5, 0.75]
                .into_iter()
                .filter_map(|frac| shell_point(body, &center, dir, delta * frac, diam))
                .collect::<Vec<_>>()
        })
        .collect();

    let eval_all = |pts: &[Vector]| -> Vec<Option<(f64, f64)>> {
        pts.par_iter()
            .map(|p| objective(body, p, n, fopts))
            .collect()
    };
    let shell_vals = eval_all(&shell);
    let lattice_vals = eval_all(&lattice);

    let pick = |pts: &[Vector], vals: &[Option<(f64, f64)>]| -> Option<(f64, Vector, f64)> {
        let mut best: Option<(f64, Vector, f64)> = None;
        for (p, v) in pts.iter().zip(vals) {
            if let Some((value, err)) = v {
                let better = match &best {
                    None => true,
                    Some((bv, bp, _)) => {
                        *value > *bv + 1e-15 || ((*value - *bv).abs() <= 1e-15 && lex_less(p, bp))
                    }
                };
                if better {
                    best = Some((*value, p.clone(), *err));
                }
            }
        }
        best
    };
    let shell_best = pick(&shell, &shell_vals);
    let lattice_best = pick(&lattice, &lattice_vals);
    let samples_used = shell.len() + lattice.len();

    let (mut value, mut argmax, mut verr) = match (&shell_best, &lattice_best) {
        (Some(s), Some(l)) => {
            if l.0 > s.0 {
                l.clone()
            } else {
                s.clone()
            }
        }
        (Some(s), None) => s.clone(),
        (None, Some(l)) => l.clone(),
        (None, None) => {
            return Err(Error::QuadratureNotConverged {
                estimated: f64::INFINITY,
                tolerance: opts.tol,
            })
        }
    };
    let shell_value = shell_best.as_ref().map(|s| s.0).unwrap_or(value);

    // Coordinate-search polish inside {d <= delta}.
    let mut step = delta / 2.0;
    let mut extra_samples = 0usize;
    for _ in 0..opts.refine_iters {
        let mut moved = false;
        for j in 0..n {
            for s in [1.0, -1.0] {
                let mut p = argmax.clone();
                p[j] += s * step;
                if !body.is_interior(&p) {
                    continue;
                }
                let d = match body.distance_to_boundary(&p) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                if d > delta * (1.0 + 1e-9) {
                    continue;
                }
                extra_samples += 1;
                if let Some((v, e)) = objective(body, &p, n, fopts) {
                    if v > value {
                        value = v;
                        argmax = p;
                        verr = e;
                        moved = true;
                    }
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    let slack = (value - shell_value).max(0.0) + verr;
    Ok(OmegaPoint {
        value,
        argmax,
        samples_used: samples_used + extra_samples,
        slack,
        shell_value,
    })
}

/// Section-polar bounds at one distance level: the shell supremum of
/// (delta / (2 |S*|))^{1/n} from below and of inf over normals of
/// (n delta / |S*|)^{1/n} from above.
pub fn t2_bounds(body: &ConvexBody, delta: f64, opts: &OmegaOpts) -> Result<(f64, f64)> {
    let n = body.dim();
    let (shell, _, _) = shell_sample(body, delta, opts)?;
    let per_point: Vec<Option<(f64, f64)>> = shell
        .par_iter()
        .map(|a| {
            let normals = body.normal_set(a, 1e-6).ok()?;
            let mut lo_a = f64::NEG_INFINITY;
            let mut hi_a = f64::INFINITY;
            for nu in &normals {
                let sec = section::section(body, a, nu).ok()?;
                let spv = sec.polar_measure().ok()?;
                if !(spv.is_finite() && spv > 0.0) {
                    return None;
                }
                lo_a = lo_a.max((delta / (2.0 * spv)).powf(1.0 / n as f64));
                hi_a = hi_a.min((n as f64 * delta / spv).powf(1.0 / n as f64));
            }
            Some((lo_a, hi_a))
        })
        .collect();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut any = false;
    for v in per_point.into_iter().flatten() {
        lo = lo.max(v.0);
        hi = hi.max(v.1);
        any = true;
    }
    if !any {
        return Err(Error::DomainError(
            "no shell point admitted section bounds".into(),
        ));
    }
    Ok((lo, hi))
}

/// The per-point workhorse sandwich at a single interior point.
pub struct WorkhorseBounds {
    pub lo: f64,
    pub hi: f64,
    pub f: f64,
    pub nu: Vector,
}

pub fn workhorse_bounds(body: &ConvexBody, a: &Vector) -> Result<WorkhorseBounds> {
    let n = body.dim() as f64;
    let d = body.distance_to_boundary(a)?;
    let normals = body.normal_set(a, 1e-6)?;
    let nu = normals
        .first()
        .cloned()
        .ok_or_else(|| Error::DomainError("empty normal set".into()))?;
    let sec = section::section(body, a, &nu)?;
    let spv = sec.polar_measure()?;
    let f = f_omega(body, a, FOpts::for_dim(body.dim()))?.volume;
    Ok(WorkhorseBounds {
        lo: spv / (n * d),
        hi: 2.0 * spv / d,
        f,
        nu,
    })
}

/// The modulus curve over a delta grid with its sandwich bounds.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusCurve {
    pub deltas: Vec<f64>,
    pub omega: Vec<f64>,
    pub lower_bound: Vec<f64>,
    pub upper_bound: Vec<f64>,
    pub argmax: Vec<Vec<f64>>,
    pub samples_used: Vec<usize>,
    /// Sampling + quadrature slack per grid point.
    pub tolerance: Vec<f64>,
    pub seed: u64,
    /// Monotone repairs larger than 1e-6 (index, before, after).
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CurveOpts {
    pub omega: OmegaOpts,
    pub with_bounds: bool,
}

impl CurveOpts {
    pub fn for_dim(n: usize) -> Self {
        CurveOpts {
            omega: OmegaOpts::for_dim(n),
            with_bounds: true,
        }
    }
}

/// Sweep the grid (parallel across grid points, per-point derived seeds),
/// then enforce monotonicity by cumulative max, logging visible repairs.
pub fn omega_curve(body: &ConvexBody, deltas: &[f64], opts: &CurveOpts) -> Result<ModulusCurve> {
    if deltas.is_empty() {
        return Err(Error::DomainError("empty delta grid".into()));
    }
    if deltas.windows(2).any(|w| w[1] <= w[0]) || deltas[0] <= 0.0 {
        return Err(Error::DomainError(
            "delta grid must be strictly increasing and positive".into(),
        ));
    }
    let results: Vec<Result<(OmegaPoint, f64, f64)>> = deltas
        .par_iter()
        .enumerate()
        .map(|(i, &delta)| {
            let mut o = opts.omega.clone();
            o.seed = rng::splitmix64(opts.omega.seed ^ (i as u64).wrapping_mul(0x9E37));
            let pt = omega(body, delta, &o)?;
            let (lo, hi) = if opts.with_bounds {
                t2_bounds(body, delta, &o)?
            } else {
                (f64::NAN, f64::NAN)
            };
            Ok((pt, lo, hi))
        })
        .collect();
    let mut curve = ModulusCurve {
        deltas: deltas.to_vec(),
        omega: Vec::new(),
        lower_bound: Vec::new(),
        upper_bound: Vec::new(),
        argmax: Vec::new(),
        samples_used: Vec::new(),
        tolerance: Vec::new(),
        seed: opts.omega.seed,
        warnings: Vec::new(),
    };
    for r in results {
        let (pt, lo, hi) = r?;
        curve.omega.push(pt.value);
        curve.lower_bound.push(lo);
        curve.upper_bound.push(hi);
        curve.argmax.push(pt.argmax.iter().cloned().collect());
        curve.samples_used.push(pt.samples_used);
        curve.tolerance.push(pt.slack.max(1e-12));
    }
    // Monotone repair: omega is nondecreasing; sampling noise may not be.
    let mut running = f64::NEG_INFINITY;
    for i in 0..curve.omega.len() {
        if curve.omega[i] < running {
            let repair = running - curve.omega[i];
            if repair > 1e-6 {
                curve.warnings.push(format!(
                    "monotone repair at delta={}: {} -> {}",
                    curve.deltas[i], curve.omega[i], running
                ));
            }
            curve.omega[i] = running;
        } else {
            running = curve.omega[i];
        }
    }
    Ok(curve)
}

impl ModulusCurve {
    pub fn dim(&self) -> usize {
        self.argmax.first().map(|a| a.len()).unwrap_or(0)
    }

    /// CSV with one row per grid point; deterministic shortest-roundtrip
    /// float formatting.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut out = String::from("delta,omega,lower_bound,upper_bound");
        for j in 0..n {
            out.push_str(&format!(",argmax_{j}"));
        }
        out.push_str(",samples_used\n");
        for i in 0..self.deltas.len() {
            out.push_str(&format!(
                "{},{},{},{}",
                self.deltas[i], self.omega[i], self.lower_bound[i], self.upper_bound[i]
            ));
            for j in 0..n {
                out.push_str(&format!(",{}", self.argmax[i][j]));
            }
            out.push_str(&format!(",{}\n", self.samples_used[i]));
        }
        out
    }

    /// Log-linear interpolation inside the grid; constant extension above
    /// the grid is exact once the grid reaches the inradius.
    pub fn eval(&self, t: f64, inradius: f64) -> Result<f64> {
        let lo = self.deltas[0];
        let hi = *self.deltas.last().unwrap();
        if t < lo * (1.0 - 1e-12) {
            return Err(Error::EmptyCurveRange {
                distance: t,
                lo,
                hi,
            });
        }
        if t > hi * (1.0 + 1e-12) {
            if hi >= inradius * (1.0 - 1e-9) {
                return Ok(*self.omega.last().unwrap());
            }
            return Err(Error::EmptyCurveRange {
                distance: t,
                lo,
                hi,
            });
        }
        let t = t.clamp(lo, hi);
        let idx = match self
            .deltas
            .binary_search_by(|d| d.partial_cmp(&t).unwrap())
        {
            Ok(i) => return Ok(self.omega[i]),
            Err(i) => i,
        };
        let (d0, d1) = (self.deltas[idx - 1], self.deltas[idx]);
        let (w0, w1) = (self.omega[idx - 1], self.omega[idx]);
        if w0 <= 0.0 || w1 <= 0.0 {
            return Ok(w0.max(w1));
        }
        let s = (t.ln() - d0.ln()) / (d1.ln() - d0.ln());
        Ok((w0.ln() + s * (w1.ln() - w0.ln())).exp())
    }
}

/// Mahler product report for a polytope with the origin interior.
#[derive(Debug, Clone, Serialize)]
pub struct MahlerReport {
    pub volume: f64,
    pub polar_volume: f64,
    pub product: f64,
    /// Product for a centered simplex computed by this same pipeline
    /// (reference point, not an asserted bound).
    pub simplex_reference: f64,
    /// |B_1^n|^2, reported when the body is centrally symmetric.
    pub symmetric_upper: Option<f64>,
}

pub fn mahler_check(body: &ConvexBody) -> Result<MahlerReport> {
    let n = body.dim();
    let (volume, polar_volume, symmetric) = match body.as_polytope() {
        Some(PolytopeRep::H(h)) => {
            let v = h.to_v()?;
            let polar = h.polar()?;
            (v.volume()?, polar.volume()?, is_symmetric(&v))
        }
        Some(PolytopeRep::V(v)) => {
            let polar = v.polar()?.to_v()?;
            (v.volume()?, polar.volume()?, is_symmetric(v))
        }
        None => return Err(Error::DomainError("mahler check needs a polytope".into())),
    };
    let simplex_reference = simplex_product(n)?;
    Ok(MahlerReport {
        volume,
        polar_volume,
        product: volume * polar_volume,
        simplex_reference,
        symmetric_upper: if symmetric {
            let b = crate::oracles::unit_ball_volume(n);
            Some(b * b)
        } else {
            None
        },
    })
}

fn is_symmetric(v: &VPolytope) -> bool {
    v.vertices.iter().all(|p| {
        let neg = -p;
        v.vertices.iter().any(|q| (q - &neg).amax() < 1e-9)
    })
}

/// |T| |T*| for a centered simplex, computed with the same polytope
/// pipeline (the product is affine-invariant, so any centered simplex
/// gives the dimensional constant).
fn simplex_product(n: usize) -> Result<f64> {
    let mut verts: Vec<Vector> = Vec::with_capacity(n + 1);
    verts.push(Vector::zeros(n));
    for j in 0..n {
        let mut v = Vector::zeros(n);
        v[j] = 1.0;
        verts.push(v);
    }
    let centroid = verts.iter().fold(Vector::zeros(n), |acc, v| acc + v) / (n as f64 + 1.0);
    let centered = VPolytope::new(verts.into_iter().map(|v| v - &centroid).collect())?;
    let vol = centered.volume()?;
    let polar_vol = centered.polar()?.to_v()?.volume()?;
    Ok(vol * polar_vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Ellipsoid;
    use crate::linalg::Matrix;

    fn square_body() -> ConvexBody {
        ConvexBody::HPoly(
            crate::polytope::HPolytope::new(
                Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
                vec_from(&[1.0, 1.0, 1.0, 1.0]),
            )
            .unwrap(),
        )
    }

    fn disk_body() -> ConvexBody {
        ConvexBody::Ellipsoid(Ellipsoid::ball(2, 1.0))
    }

    #[test]
    fn f_of_disk_center_is_pi() {
        let f = f_omega(&disk_body(), &Vector::zeros(2), FOpts::for_dim(2)).unwrap();
        assert!((f.volume - std::f64::consts::PI).abs() < 1e-8, "{}", f.volume);
    }

    #[test]
    fn f_of_disk_at_half_depth() {
        // |B^2| / [d (2 - d)]^{3/2} at d = 0.5: pi / 0.75^{1.5}.
        let a = vec_from(&[0.0, -0.5]);
        let f = f_omega(&disk_body(), &a, FOpts::for_dim(2)).unwrap();
        let expect = std::f64::consts::PI / 0.75f64.powf(1.5);
        assert!(((f.volume - expect) / expect).abs() < 1e-8);
    }

    #[test]
    fn f_of_square_at_edge_midline() {
        let a = vec_from(&[0.0, -0.5]);
        let f = f_omega(&square_body(), &a, FOpts::for_dim(2)).unwrap();
        assert!((f.volume - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_path_agrees_with_exact_on_square() {
        let a = vec_from(&[0.1, -0.35]);
        let exact = f_omega(&square_body(), &a, FOpts::for_dim(2)).unwrap().volume;
        let (radial, _) = radial_volume(&square_body(), &a, 2, FOpts { tol: 1e-7, seed: 0 }).unwrap();
        assert!(
            ((radial - exact) / exact).abs() < 1e-6,
            "radial {radial} vs exact {exact}"
        );
    }

    #[test]
    fn omega_of_disk_at_half() {
        let o = omega(&disk_body(), 0.5, &OmegaOpts::for_dim(2)).unwrap();
        let expect = 0.75f64.powf(0.75) / std::f64::consts::PI.sqrt();
        assert!(
            ((o.value - expect) / expect).abs() < 1e-6,
            "omega {} vs {}",
            o.value,
            expect
        );
    }

    #[test]
    fn omega_of_square_at_half() {
        let o = omega(&square_body(), 0.5, &OmegaOpts::for_dim(2)).unwrap();
        let expect = (8.0f64 / 3.0).powf(-0.5);
        assert!(
            ((o.value - expect) / expect).abs() < 1e-9,
            "omega {} vs {}",
            o.value,
            expect
        );
        // The maximizer is an edge midline point.
        let am = &o.argmax;
        let near_edge_mid = (am[0].abs() < 1e-6 && (am[1].abs() - 0.5).abs() < 1e-6)
            || (am[1].abs() < 1e-6 && (am[0].abs() - 0.5).abs() < 1e-6);
        assert!(near_edge_mid, "argmax {:?}", am);
    }

    #[test]
    fn omega_at_inradius_is_center_value() {
        let o = omega(&disk_body(), 1.0, &OmegaOpts::for_dim(2)).unwrap();
        let expect = 1.0 / std::f64::consts::PI.sqrt();
        assert!(((o.value - expect) / expect).abs() < 1e-6);
    }

    #[test]
    fn delta_above_inradius_rejected() {
        match omega(&disk_body(), 1.5, &OmegaOpts::for_dim(2)) {
            Err(Error::DeltaExceedsInradius { .. }) => {}
            other => panic!("expected DeltaExceedsInradius, got {other:?}"),
        }
    }

    #[test]
    fn t2_sandwich_on_square() {
        let delta = 0.5;
        let (lo, hi) = t2_bounds(&square_body(), delta, &OmegaOpts::for_dim(2)).unwrap();
        assert!((lo - 0.3535533905932738).abs() < 1e-9, "lo {lo}");
        assert!((hi - 0.7071067811865476).abs() < 1e-9, "hi {hi}");
        let o = omega(&square_body(), delta, &OmegaOpts::for_dim(2)).unwrap();
        assert!(lo <= o.value && o.value <= hi);
    }

    #[test]
    fn workhorse_on_square_edge_midline() {
        let a = vec_from(&[0.0, -0.5]);
        let wb = workhorse_bounds(&square_body(), &a).unwrap();
        assert!((wb.lo - 2.0).abs() < 1e-9);
        assert!((wb.f - 8.0 / 3.0).abs() < 1e-9);
        assert!((wb.hi - 8.0).abs() < 1e-9);
    }

    #[test]
    fn curve_is_monotone_and_sandwiched() {
        let deltas: Vec<f64> = (0..8).map(|i| 0.02 * (i + 1) as f64).collect();
        let curve = omega_curve(&square_body(), &deltas, &CurveOpts::for_dim(2)).unwrap();
        for i in 1..curve.omega.len() {
            assert!(curve.omega[i] >= curve.omega[i - 1]);
        }
        for i in 0..curve.omega.len() {
            assert!(
                curve.lower_bound[i] <= curve.omega[i] + curve.tolerance[i],
                "lower bound violated at {i}"
            );
            assert!(
                curve.omega[i] <= curve.upper_bound[i] + curve.tolerance[i],
                "upper bound violated at {i}"
            );
        }
        let csv = curve.to_csv();
        assert!(csv.starts_with("delta,omega,lower_bound,upper_bound,argmax_0,argmax_1,samples_used"));
        assert_eq!(csv.lines().count(), deltas.len() + 1);
    }

    #[test]
    fn mahler_of_square_and_cube() {
        let m = mahler_check(&square_body()).unwrap();
        assert!((m.product - 8.0).abs() < 1e-9);
        let upper = m.symmetric_upper.unwrap();
        assert!((upper - std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert!(m.product <= upper);
        // Simplex reference in the plane: 27/4.
        assert!((m.simplex_reference - 6.75).abs() < 1e-9);
    }
}
