//! Deterministic sphere quadrature: adaptively refined trapezoid on the
//! circle, adaptively subdivided icosphere on S^2, and low-discrepancy
//! points on S^3.
//!
//! The base rules (4096 angles, level-4 icosphere, 2^17 QMC points) match
//! the desk-scale defaults; the circle and icosphere rules additionally
//! refine locally because the polar radial integrand sigma^{-n} develops
//! a spike of angular width ~ sqrt(delta) near the contact direction,
//! which no fixed rule of that size resolves as delta -> 0.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rng::splitmix64;
use std::f64::consts::PI;

/// Base number of angles on the circle.
pub const CIRCLE_BASE: usize = 4096;
/// Icosphere subdivision levels (level 4 = 5120 triangles).
pub const ICOSPHERE_LEVELS: usize = 4;
/// Low-discrepancy points on S^3.
pub const S3_POINTS: usize = 1 << 17;

const MAX_DEPTH: usize = 42;
const EVAL_BUDGET: usize = 8_000_000;

pub struct Quadrature {
    pub value: f64,
    /// Post-hoc absolute error estimate.
    pub error: f64,
    pub evals: usize,
}

/// Integral of `g` over the unit circle (d theta), adaptive trapezoid on a
/// 4096-interval base grid.
pub fn integrate_circle<F: Fn(f64) -> f64>(g: &F, rel_tol: f64) -> Result<Quadrature> {
    let n = CIRCLE_BASE;
    let h = 2.0 * PI / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| g(i as f64 * h)).collect();
    let coarse: f64 = h * (0..n).map(|i| 0.5 * (values[i] + values[i + 1])).sum::<f64>();
    let tol_abs = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = n + 1;
    for i in 0..n {
        let (v, e) = refine_interval(
            g,
            i as f64 * h,
            (i + 1) as f64 * h,
            values[i],
            values[i + 1],
            tol_abs / n as f64,
            MAX_DEPTH,
            &mut evals,
        )?;
        total += v;
        err += e;
    }
    if err > 10.0 * tol_abs.max(rel_tol * total.abs()) {
        return Err(Error::QuadratureNotConverged {
            estimated: err / total.abs().max(f64::MIN_POSITIVE),
            tolerance: rel_tol,
        });
    }
    Ok(Quadrature {
        value: total,
        error: err,
        evals,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine_interval<F: Fn(f64) -> f64>(
    g: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> Result<(f64, f64)> {
    let m = 0.5 * (a + b);
    let fm = g(m);
    *evals += 1;
    if *evals > EVAL_BUDGET {
        return Err(Error::QuadratureNotConverged {
            estimated: f64::INFINITY,
            tolerance: 0.0,
        });
    }
    let one = (b - a) * 0.5 * (fa + fb);
    let two = (b - a) * 0.25 * (fa + 2.0 * fm + fb);
    let diff = (two - one).abs();
    if diff <= tol || depth == 0 {
        return Ok((two, diff / 3.0));
    }
    let (left, le) = refine_interval(g, a, m, fa, fm, tol * 0.5, depth - 1, evals)?;
    let (right, re) = refine_interval(g, m, b, fm, fb, tol * 0.5, depth - 1, evals)?;
    Ok((left + right, le + re))
}

/// Triangles of the level-`levels` icosphere as unit-vertex triples.
pub fn icosphere(levels: usize) -> Vec<[Vector; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let verts: Vec<Vector> = raw
        .iter()
        .map(|v| {
            let x = Vector::from_vec(v.to_vec());
            let n = x.norm();
            x / n
        })
        .collect();
    let faces: [[usize; 3]; 20] = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let mut tris: Vec<[Vector; 3]> = faces
        .iter()
        .map(|f| [verts[f[0]].clone(), verts[f[1]].clone(), verts[f[2]].clone()])
        .collect();
    for _ in 0..levels {
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let mids: Vec<Vector> = (0..3)
                .map(|i| {
                    let m = (&t[i] + &t[(i + 1) % 3]) * 0.5;
                    let n = m.norm();
                    m / n
                })
                .collect();
            next.push([t[0].clone(), mids[0].clone(), mids[2].clone()]);
            next.push([t[1].clone(), mids[1].clone(), mids[0].clone()]);
            next.push([t[2].clone(), mids[2].clone(), mids[1].clone()]);
            next.push([mids[0].clone(), mids[1].clone(), mids[2].clone()]);
        }
        tris = next;
    }
    tris
}

/// Spherical triangle area via l'Huilier.
pub fn spherical_area(t: &[Vector; 3]) -> f64 {
    let a = arc(&t[1], &t[2]);
    let b = arc(&t[0], &t[2]);
    let c = arc(&t[0], &t[1]);
    let s = 0.5 * (a + b + c);
    let inner = (0.5 * s).tan()
        * (0.5 * (s - a)).tan()
        * (0.5 * (s - b)).tan()
        * (0.5 * (s - c)).tan();
    4.0 * inner.max(0.0).sqrt().atan()
}

fn arc(u: &Vector, v: &Vector) -> f64 {
    let d = (u - v).norm();
    2.0 * (0.5 * d).asin()
}

/// Degree-5 Radon rule on the unit triangle, barycentric coordinates and
/// weights (weights sum to 1).
const RADON7: [([f64; 3], f64); 7] = {
    const A1: f64 = 0.059_715_871_789_77;
    const B1: f64 = 0.470_142_064_105_115;
    const W1: f64 = 0.132_394_152_788_506;
    const A2: f64 = 0.797_426_985_353_087;
    const B2: f64 = 0.101_286_507_323_456;
    const W2: f64 = 0.125_939_180_544_827;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
        ([A1, B1, B1], W1),
        ([B1, A1, B1], W1),
        ([B1, B1, A1], W1),
        ([A2, B2, B2], W2),
        ([B2, A2, B2], W2),
        ([B2, B2, A2], W2),
    ]
};

/// Integral of `g` over the spherical triangle `t` by pulling the surface
/// measure back to the flat triangle through central projection:
/// dA_sphere = (x . n_hat) / |x|^3 dA_flat, integrated with the degree-5
/// rule. High order, so tight tolerances stay affordable.
fn triangle_rule<F: Fn(&Vector) -> f64>(g: &F, t: &[Vector; 3]) -> f64 {
    let e1 = &t[1] - &t[0];
    let e2 = &t[2] - &t[0];
    // Area-scaled normal of the flat triangle (cross product halved).
    let n = Vector::from_vec(vec![
        0.5 * (e1[1] * e2[2] - e1[2] * e2[1]),
        0.5 * (e1[2] * e2[0] - e1[0] * e2[2]),
        0.5 * (e1[0] * e2[1] - e1[1] * e2[0]),
    ]);
    // Orient outward (same side as the vertices).
    let sign = if n.dot(&t[0]) < 0.0 { -1.0 } else { 1.0 };
    let mut sum = 0.0;
    for (bary, w) in RADON7 {
        let x = &t[0] * bary[0] + &t[1] * bary[1] + &t[2] * bary[2];
        let r = x.norm();
        let u = &x / r;
        sum += w * g(&u) * sign * x.dot(&n) / (r * r * r);
    }
    sum
}

/// Integral of `g` over S^2: level-4 icosphere base mesh, degree-5
/// gnomonic rule per triangle, adaptive subdivision where the parent and
/// child estimates disagree.
pub fn integrate_sphere<F: Fn(&Vector) -> f64>(g: &F, rel_tol: f64) -> Result<Quadrature> {
    let base = icosphere(ICOSPHERE_LEVELS);
    let mut evals = 0usize;
    let mut coarse = 0.0;
    let cached: Vec<f64> = base
        .iter()
        .map(|t| {
            let v = triangle_rule(g, t);
            evals += 7;
            coarse += v;
            v
        })
        .collect();
    let tol_abs = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    let mut err = 0.0;
    for (t, est) in base.iter().zip(cached) {
        let area = spherical_area(t);
        let (val, e) = refine_triangle(
            g,
            t,
            est,
            tol_abs * (area / (4.0 * PI)),
            MAX_DEPTH,
            &mut evals,
        )?;
        total += val;
        err += e;
    }
    if err > 10.0 * tol_abs.max(rel_tol * total.abs()) {
        return Err(Error::QuadratureNotConverged {
            estimated: err / total.abs().max(f64::MIN_POSITIVE),
            tolerance: rel_tol,
        });
    }
    Ok(Quadrature {
        value: total,
        error: err,
        evals,
    })
}

fn refine_triangle<F: Fn(&Vector) -> f64>(
    g: &F,
    t: &[Vector; 3],
    parent_estimate: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> Result<(f64, f64)> {
    let mids: Vec<Vector> = (0..3)
        .map(|i| {
            let m = (&t[i] + &t[(i + 1) % 3]) * 0.5;
            let n = m.norm();
            m / n
        })
        .collect();
    let children = [
        [t[0].clone(), mids[0].clone(), mids[2].clone()],
        [t[1].clone(), mids[1].clone(), mids[0].clone()],
        [t[2].clone(), mids[2].clone(), mids[1].clone()],
        [mids[0].clone(), mids[1].clone(), mids[2].clone()],
    ];
    let mut child_estimates = [0.0; 4];
    let mut sum = 0.0;
    for (i, c) in children.iter().enumerate() {
        let est = triangle_rule(g, c);
        *evals += 7;
        child_estimates[i] = est;
        sum += est;
    }
    if *evals > EVAL_BUDGET {
        return Err(Error::QuadratureNotConverged {
            estimated: f64::INFINITY,
            tolerance: 0.0,
        });
    }
    let diff = (sum - parent_estimate).abs();
    if diff <= tol || depth == 0 {
        return Ok((sum, diff / 15.0));
    }
    let mut total = 0.0;
    let mut err = 0.0;
    for (c, est) in children.iter().zip(child_estimates) {
        let (v, e) = refine_triangle(g, c, est, tol * 0.25, depth - 1, evals)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// Area-preserving map [0,1)^3 -> S^3 (unit-quaternion construction).
pub fn s3_point(u: f64, v: f64, w: f64) -> Vector {
    let a = (1.0 - u).sqrt();
    let b = u.sqrt();
    Vector::from_vec(vec![
        a * (2.0 * PI * v).sin(),
        a * (2.0 * PI * v).cos(),
        b * (2.0 * PI * w).sin(),
        b * (2.0 * PI * w).cos(),
    ])
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut x = 0.0;
    let mut scale = inv;
    while i > 0 {
        x += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    x
}

/// Low-discrepancy points on S^3: Halton (2,3,5) with a seed-derived
/// Cranley-Patterson rotation pushed through the uniform S^3 map.
pub fn s3_lattice(count: usize, seed: u64) -> Vec<Vector> {
    let s1 = splitmix64(seed) as f64 / u64::MAX as f64;
    let s2 = splitmix64(seed.wrapping_add(1)) as f64 / u64::MAX as f64;
    let s3 = splitmix64(seed.wrapping_add(2)) as f64 / u64::MAX as f64;
    (0..count)
        .map(|i| {
            let u = (radical_inverse(i as u64 + 1, 2) + s1).fract();
            let v = (radical_inverse(i as u64 + 1, 3) + s2).fract();
            let w = (radical_inverse(i as u64 + 1, 5) + s3).fract();
            s3_point(u, v, w)
        })
        .collect()
}

/// Integral of `g` over S^3 (total measure 2 pi^2) by QMC; the error
/// estimate is the half-sample split discrepancy.
pub fn integrate_s3<F: Fn(&Vector) -> f64>(g: &F, count: usize, seed: u64) -> Quadrature {
    let pts = s3_lattice(count, seed);
    let mut sum_even = 0.0;
    let mut sum_odd = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let v = g(p);
        if i % 2 == 0 {
            sum_even += v;
        } else {
            sum_odd += v;
        }
    }
    let measure = 2.0 * PI * PI;
    let half = count as f64 / 2.0;
    let a = measure * sum_even / half;
    let b = measure * sum_odd / half;
    Quadrature {
        value: 0.5 * (a + b),
        error: 0.5 * (a - b).abs(),
        evals: count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_constant_and_cos_squared() {
        let q = integrate_circle(&|_| 1.0, 1e-10).unwrap();
        assert!((q.value - 2.0 * PI).abs() < 1e-12);
        let q = integrate_circle(&|t: f64| t.cos().powi(2), 1e-10).unwrap();
        assert!((q.value - PI).abs() < 1e-10);
    }

    #[test]
    fn circle_resolves_narrow_peak() {
        // int dtheta / (a - cos theta) = 2 pi / sqrt(a^2 - 1), spiked at a -> 1+.
        let a: f64 = 1.0 + 1e-4;
        let exact = 2.0 * PI / (a * a - 1.0).sqrt();
        let q = integrate_circle(&|t: f64| 1.0 / (a - t.cos()), 1e-7).unwrap();
        assert!(
            ((q.value - exact) / exact).abs() < 1e-6,
            "got {} want {} (err est {})",
            q.value,
            exact,
            q.error
        );
    }

    #[test]
    fn icosphere_counts_and_total_area() {
        let tris = icosphere(4);
        assert_eq!(tris.len(), 5120);
        let total: f64 = tris.iter().map(spherical_area).sum();
        assert!((total - 4.0 * PI).abs() < 1e-9, "{total}");
    }

    #[test]
    fn sphere_constant_and_z_squared() {
        let q = integrate_sphere(&|_| 1.0, 1e-9).unwrap();
        assert!((q.value - 4.0 * PI).abs() < 1e-8);
        let q = integrate_sphere(&|p: &Vector| p[2] * p[2], 1e-6).unwrap();
        assert!(((q.value - 4.0 * PI / 3.0) / q.value).abs() < 1e-5);
    }

    #[test]
    fn sphere_resolves_polar_spike() {
        // int over S^2 of (1 - beta z)^{-3} dA = 4 pi / (delta (2 - delta))^2.
        let delta: f64 = 0.01;
        let beta = 1.0 - delta;
        let exact = 4.0 * PI / (delta * (2.0 - delta)).powi(2);
        let q = integrate_sphere(&|p: &Vector| (1.0 - beta * p[2]).powi(-3), 1e-5).unwrap();
        assert!(
            ((q.value - exact) / exact).abs() < 1e-4,
            "got {} want {} rel {}",
            q.value,
            exact,
            ((q.value - exact) / exact).abs()
        );
    }

    #[test]
    fn s3_total_measure_and_moment() {
        let q = integrate_s3(&|_| 1.0, 1 << 12, 7);
        assert!((q.value - 2.0 * PI * PI).abs() < 1e-9);
        let q = integrate_s3(&|p: &Vector| p[0] * p[0], 1 << 14, 7);
        let exact = 2.0 * PI * PI / 4.0;
        assert!(((q.value - exact) / exact).abs() < 5e-3, "{}", q.value);
    }

    #[test]
    fn s3_lattice_deterministic_in_seed() {
        let a = s3_lattice(16, 42);
        let b = s3_lattice(16, 42);
        let c = s3_lattice(16, 43);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
        assert!(a.iter().zip(&c).any(|(x, y)| x != y));
    }
}
