//! Verification suites: each named suite executes the acceptance checks
//! mapped to it against bundled fixtures and returns a machine-readable
//! report. The CLI `verify` subcommand and the acceptance test target both
//! run these functions.

use crate::body::{ConvexBody, Ellipsoid, GraphDomain2D, PowerDomain, ProfileKind};
use crate::cone;
use crate::error::{Error, Result};
use crate::fitting;
use crate::flatspot;
use crate::linalg::{vec_from, Matrix, Vector};
use crate::modulus::{self, CurveOpts, FOpts, OmegaOpts};
use crate::oracles;
use crate::polytope::{hausdorff_violation, HPolytope, VPolytope};
use crate::rng;
use crate::section;
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub environment: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: &str, seed: u64, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport {
            suite: suite.to_string(),
            seed,
            environment: format!(
                "convexmod {} ({}-{})",
                env!("CARGO_PKG_VERSION"),
                std::env::consts::OS,
                std::env::consts::ARCH
            ),
            checks,
            pass,
        }
    }
}

fn check(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, tolerance: impl Into<String>, pass: bool) -> CheckResult {
    CheckResult {
        name: name.into(),
        expected: expected.into(),
        actual: actual.into(),
        tolerance: tolerance.into(),
        pass,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    T1,
    T2,
    Workhorse,
    Slice,
    Affine,
    Compare,
    Cor1,
    Graph2d,
    Sections,
    Flatspot,
    Mahler,
    Ma,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::T1,
        Suite::T2,
        Suite::Workhorse,
        Suite::Slice,
        Suite::Affine,
        Suite::Compare,
        Suite::Cor1,
        Suite::Graph2d,
        Suite::Sections,
        Suite::Flatspot,
        Suite::Mahler,
        Suite::Ma,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::T1 => "t1",
            Suite::T2 => "t2",
            Suite::Workhorse => "workhorse",
            Suite::Slice => "slice",
            Suite::Affine => "affine",
            Suite::Compare => "compare",
            Suite::Cor1 => "cor1",
            Suite::Graph2d => "graph2d",
            Suite::Sections => "sections",
            Suite::Flatspot => "flatspot",
            Suite::Mahler => "mahler",
            Suite::Ma => "ma",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .find(|su| su.name() == s)
            .copied()
            .ok_or_else(|| Error::DomainError(format!("unknown suite {s:?}")))
    }
}

/// Run a suite with optional trial-count override.
pub fn run_suite(suite: Suite, trials: Option<usize>, seed: u64) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::T1 => {
            let mut c = criterion_1_disk_constant(seed)?;
            c.extend(criterion_2_ball3_constant(seed)?);
            c.extend(criterion_3_ellipsoid_closed_form(seed)?);
            c.extend(criterion_13_parabola(seed)?);
            c
        }
        Suite::T2 => criterion_5_t2_sandwich(seed)?,
        Suite::Workhorse => criterion_4_workhorse(trials.unwrap_or(100), seed)?,
        Suite::Slice => criterion_6_slice_identity(trials.unwrap_or(50), seed)?,
        Suite::Affine => criterion_7_affine(trials.unwrap_or(100), seed)?,
        Suite::Compare => criterion_7_compare(trials.unwrap_or(100), seed)?,
        Suite::Cor1 => criterion_8_cor1(seed)?,
        Suite::Graph2d => criterion_9_graph_domains(seed)?,
        Suite::Sections => criterion_10_section_asymptotics(seed)?,
        Suite::Flatspot => criterion_11_flat_spots(seed)?,
        Suite::Mahler => criterion_14_mahler(seed)?,
        Suite::Ma => criterion_12_equality_and_seminorm(trials.unwrap_or(20), seed)?,
    };
    Ok(VerifyReport::new(suite.name(), seed, checks))
}

// ---------------------------------------------------------------------------
// fixtures

pub fn square() -> ConvexBody {
    ConvexBody::HPoly(
        HPolytope::new(
            Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
            vec_from(&[1.0, 1.0, 1.0, 1.0]),
        )
        .unwrap(),
    )
}

pub fn cube() -> ConvexBody {
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
    ConvexBody::HPoly(HPolytope::new(Matrix::from_row_slice(6, 3, &rows), vec_from(&offs)).unwrap())
}

pub fn cross_polytope(n: usize) -> ConvexBody {
    let mut verts = Vec::new();
    for j in 0..n {
        for s in [1.0, -1.0] {
            let mut v = Vector::zeros(n);
            v[j] = s;
            verts.push(v);
        }
    }
    ConvexBody::VPoly(VPolytope::new(verts).unwrap())
}

pub fn disk() -> ConvexBody {
    ConvexBody::Ellipsoid(Ellipsoid::ball(2, 1.0))
}

pub fn ball3() -> ConvexBody {
    ConvexBody::Ellipsoid(Ellipsoid::ball(3, 1.0))
}

pub fn quartic_graph_domain() -> ConvexBody {
    ConvexBody::Graph2D(GraphDomain2D::new(ProfileKind::Power { p: 4.0 }, 1.0, 2.0).unwrap())
}

/// exp-flat profile h(x) = 10 e^{-1/|x|} on |x| < 0.2 (D = 20 e^{-5}):
/// h^{-1}(delta) stays inside the increasing-curvature range for
/// delta <= 1e-2.
pub fn exp_flat_graph_domain() -> ConvexBody {
    let d = 20.0 * (-5.0f64).exp();
    ConvexBody::Graph2D(GraphDomain2D::new(ProfileKind::ExpFlat, 0.2, d).unwrap())
}

pub fn quartic_power_domain() -> ConvexBody {
    ConvexBody::Power(PowerDomain::new(1.0, vec![4.0], vec![], 1.0).unwrap())
}

pub fn truncated_parabola(height: f64) -> ConvexBody {
    ConvexBody::Power(PowerDomain::new(1.0, vec![2.0], vec![], height).unwrap())
}

/// Random polytope containing the origin: hull of points on a random
/// ellipsoidal shell, recentered at the vertex centroid.
pub fn random_polytope(n: usize, vertices: usize, rng: &mut rand_chacha::ChaCha8Rng) -> VPolytope {
    loop {
        let mut pts: Vec<Vector> = Vec::with_capacity(vertices);
        let stretch: Vec<f64> = (0..n).map(|_| rng.gen_range(0.6..1.6)).collect();
        for _ in 0..vertices {
            let dir = rng::unit_direction(rng, n);
            let r = rng.gen_range(0.7..1.3);
            pts.push(Vector::from_iterator(
                n,
                dir.iter().zip(&stretch).map(|(d, s)| d * s * r),
            ));
        }
        let centroid = pts.iter().fold(Vector::zeros(n), |acc, p| acc + p) / vertices as f64;
        let pts: Vec<Vector> = pts.into_iter().map(|p| p - &centroid).collect();
        if let Ok(v) = VPolytope::new(pts) {
            if v.contains(&Vector::zeros(n), -1e-6).unwrap_or(false) {
                return v;
            }
        }
    }
}

/// Random interior point as a Dirichlet-weighted vertex combination,
/// pulled toward the centroid to stay strictly inside.
pub fn random_interior_point(v: &VPolytope, rng: &mut rand_chacha::ChaCha8Rng) -> Vector {
    let n = v.dim();
    let mut weights: Vec<f64> = v.vertices.iter().map(|_| -f64::ln(rng.gen_range(1e-9..1.0))).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut p = Vector::zeros(n);
    for (w, vert) in weights.iter().zip(&v.vertices) {
        p += vert * *w;
    }
    p * 0.95
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let t = i as f64 / (points as f64 - 1.0);
            (lo.ln() + t * (hi.ln() - lo.ln())).exp()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// acceptance criteria

/// Criterion 1: sharp n = 2 constant on the unit disk over a 20-point log
/// grid on [1e-3, 1e-1].
pub fn criterion_1_disk_constant(seed: u64) -> Result<Vec<CheckResult>> {
    let body = disk();
    let grid = log_grid(1e-3, 1e-1, 20);
    let mut opts = CurveOpts::for_dim(2);
    opts.omega = opts.omega.with_seed(seed);
    opts.with_bounds = false;
    let curve = modulus::omega_curve(&body, &grid, &opts)?;
    let target = (2f64.powf(1.5) / std::f64::consts::PI).sqrt();
    let mut checks = Vec::new();
    let mut sup: f64 = f64::NEG_INFINITY;
    let mut worst_in_band = f64::INFINITY;
    let mut band_ok = true;
    for (d, w) in curve.deltas.iter().zip(&curve.omega) {
        let ratio = w / d.powf(0.75);
        sup = sup.max(ratio);
        if !(0.938..=0.958).contains(&ratio) {
            band_ok = false;
            worst_in_band = worst_in_band.min(ratio);
        }
    }
    checks.push(check(
        "t1.n2.disk.band: omega(d) d^{-3/4} in [0.938, 0.958] at all 20 grid points",
        "[0.938, 0.958]",
        if band_ok {
            "all in band".to_string()
        } else {
            format!("worst ratio {worst_in_band:.6} (exact curve: (2-d)^{{3/4}}/sqrt(pi) leaves the band for d > 0.0303)")
        },
        "band",
        band_ok,
    ));
    checks.push(check(
        "t1.n2.disk.sup: sup over grid <= 1.01 target",
        format!("<= {:.6}", target * 1.01),
        format!("{sup:.6}"),
        "1%",
        sup <= target * 1.01,
    ));
    Ok(checks)
}

/// Criterion 2: n = 3 constant on the unit ball at delta = 1e-3 via the
/// sphere quadrature path.
pub fn criterion_2_ball3_constant(seed: u64) -> Result<Vec<CheckResult>> {
    let body = ball3();
    let delta = 1e-3;
    let mut opts = OmegaOpts::for_dim(3).with_seed(seed);
    opts.boundary_samples = 32; // the shell is symmetric; keep runtime low
    let o = modulus::omega(&body, delta, &opts)?;
    let ratio = o.value / delta.powf(2.0 / 3.0);
    let target = oracles::t1_constant(3, 1.0);
    let rel = (ratio / target - 1.0).abs();
    Ok(vec![check(
        "t1.n3.ball: omega(1e-3) delta^{-2/3} within 2% of (3/pi)^{1/3}",
        format!("{target:.6}"),
        format!("{ratio:.6} (rel err {rel:.2e})"),
        "2e-2",
        rel < 2e-2,
    )])
}

/// Criterion 3: engine f against the ellipsoid closed form over random
/// axis tuples and pole distances, per-dimension tolerances.
pub fn criterion_3_ellipsoid_closed_form(seed: u64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for (n, tol) in [(2usize, 1e-6), (3, 1e-3), (4, 2e-2)] {
        let mut rng = rng::stream(seed, 0x30 + n as u64);
        let mut worst: f64 = 0.0;
        for case in 0..10 {
            let axes: Vec<f64> = (0..n).map(|_| rng.gen_range(0.6..2.0)).collect();
            let l_n = axes[n - 1];
            let guard = axes.iter().map(|l| l * l / l_n).fold(f64::MAX, f64::min);
            let body = ConvexBody::Ellipsoid(Ellipsoid::new(
                Vector::zeros(n),
                axes.clone(),
                None,
            )?);
            for (k, frac) in [0.25, 0.4, 0.55, 0.7, 0.85].iter().enumerate() {
                let d = guard * frac;
                let oracle = oracles::ellipsoid_f(&axes, d)?;
                let mut a = Vector::zeros(n);
                a[n - 1] = -(l_n - d);
                let fopts = FOpts {
                    tol: if n == 4 { 1.0 } else { tol * 0.1 },
                    seed: rng::splitmix64(seed ^ ((case * 8 + k) as u64)),
                };
                let engine = modulus::f_omega(&body, &a, fopts)?.volume;
                worst = worst.max((engine / oracle - 1.0).abs());
            }
        }
        checks.push(check(
            format!("lem.ellipse.n{n}: engine f vs closed form, 10 axis tuples x 5 distances"),
            "relative error".to_string(),
            format!("worst {worst:.3e}"),
            format!("{tol:.0e}"),
            worst < tol,
        ));
    }
    Ok(checks)
}

/// Criterion 4: the workhorse sandwich on random polytopes.
pub fn criterion_4_workhorse(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0x40);
    let mut failures = 0usize;
    let mut total = 0usize;
    let mut worst_slack: f64 = 0.0;
    for t in 0..trials {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let poly = random_polytope(n, if n == 2 { 10 } else { 14 }, &mut rng);
        let body = ConvexBody::VPoly(poly.clone());
        for _ in 0..10 {
            let a = random_interior_point(&poly, &mut rng);
            let wb = match modulus::workhorse_bounds(&body, &a) {
                Ok(w) => w,
                Err(_) => continue,
            };
            total += 1;
            let scale = wb.f.max(1.0);
            let lo_slack = (wb.lo - wb.f).max(0.0) / scale;
            let hi_slack = (wb.f - wb.hi).max(0.0) / scale;
            worst_slack = worst_slack.max(lo_slack).max(hi_slack);
            if lo_slack > 1e-9 || hi_slack > 1e-9 {
                failures += 1;
            }
        }
    }
    Ok(vec![check(
        format!("workhorse: (1/n) d^{{-1}}|S*| <= f <= 2 d^{{-1}}|S*| on {total} random points"),
        "0 failures",
        format!("{failures} failures, worst slack {worst_slack:.2e}"),
        "1e-9 relative",
        failures == 0,
    )])
}

/// Criterion 5: the two-sided modulus sandwich along whole curves.
pub fn criterion_5_t2_sandwich(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0x50);
    let random = ConvexBody::VPoly(random_polytope(2, 12, &mut rng));
    let fixtures: Vec<(&str, ConvexBody)> = vec![
        ("disk", disk()),
        ("square", square()),
        ("cross2", cross_polytope(2)),
        ("random-polygon", random),
    ];
    let mut checks = Vec::new();
    for (name, body) in fixtures {
        let inradius = body.chebyshev()?.1;
        let grid = log_grid(1e-3, 0.95 * inradius, 12);
        let mut opts = CurveOpts::for_dim(body.dim());
        opts.omega = opts.omega.with_seed(seed);
        let curve = modulus::omega_curve(&body, &grid, &opts)?;
        let mut violations = 0usize;
        let mut worst: f64 = 0.0;
        for i in 0..curve.deltas.len() {
            let slack = curve.tolerance[i] + 1e-12;
            let lo_gap = curve.lower_bound[i] - curve.omega[i];
            let hi_gap = curve.omega[i] - curve.upper_bound[i];
            worst = worst.max(lo_gap).max(hi_gap);
            if lo_gap > slack || hi_gap > slack {
                violations += 1;
            }
        }
        checks.push(check(
            format!("t2.sandwich.{name}: lower <= omega <= upper at 12 grid points"),
            "0 violations",
            format!("{violations} violations, worst gap {worst:.2e}"),
            "per-point sampling slack",
            violations == 0,
        ));
    }
    Ok(checks)
}

/// Criterion 6: polar-of-slice equals projection-of-polar.
pub fn criterion_6_slice_identity(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0x60);
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < trials {
        attempts += 1;
        if attempts > 50 * trials {
            return Err(Error::DomainError(
                "slice-identity fixtures kept degenerating".into(),
            ));
        }
        let n = 2 + (done % 3); // 2, 3, 4
        let poly = random_polytope(n, 6 + 2 * n, &mut rng);
        let body = ConvexBody::VPoly(poly);
        let k = 1 + (rng.gen::<u64>() as usize % (n - 1));
        // Random orthonormal k-frame via Gram-Schmidt on random directions.
        let mut basis: Vec<Vector> = Vec::new();
        while basis.len() < k {
            let mut v = Vector::from_vec(rng::unit_direction(&mut rng, n));
            for b in &basis {
                v -= b * b.dot(&v);
            }
            let norm = v.norm();
            if norm > 1e-6 {
                basis.push(v / norm);
            }
        }
        let slice = match section::slice_subspace(&body, &basis) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let polar_of_slice = match slice.polar() {
            Ok(p) => p,
            Err(_) => continue,
        };
        let projected = section::project_polar(&body, &basis)?;
        let viol = if k == 1 {
            // 1-D charts: compare interval endpoints.
            let ends = |v: &VPolytope| {
                let lo = v.vertices.iter().map(|p| p[0]).fold(f64::MAX, f64::min);
                let hi = v.vertices.iter().map(|p| p[0]).fold(f64::MIN, f64::max);
                (lo, hi)
            };
            let (a_lo, a_hi) = ends(&polar_of_slice);
            let (b_lo, b_hi) = ends(&projected);
            (a_lo - b_lo).abs().max((a_hi - b_hi).abs())
        } else {
            hausdorff_violation(&polar_of_slice, &projected)?
        };
        worst = worst.max(viol);
        if viol > 1e-9 {
            failures += 1;
        }
        done += 1;
    }
    Ok(vec![check(
        format!("slice.identity: polar-of-slice vs projection-of-polar, {trials} random cases"),
        "distance < 1e-9",
        format!("{failures} failures, worst {worst:.2e}"),
        "1e-9",
        failures == 0,
    )])
}

/// Criterion 7a: affine covariance f_{M Omega}(M a) |det M| = f_Omega(a).
pub fn criterion_7_affine(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0x70);
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for t in 0..trials {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let poly = random_polytope(n, 8 + 2 * n, &mut rng);
        let a = random_interior_point(&poly, &mut rng);
        // Random map with singular values in [0.4, 2.4] (condition <= 6).
        let m = random_map(n, &mut rng);
        let det = m.determinant().abs();
        let mapped = VPolytope {
            vertices: poly.vertices.iter().map(|v| &m * v).collect(),
        };
        let fa = modulus::f_omega(&ConvexBody::VPoly(poly), &a, FOpts::for_dim(n))?.volume;
        let fma = modulus::f_omega(&ConvexBody::VPoly(mapped), &(&m * &a), FOpts::for_dim(n))?
            .volume;
        let gap = (fma * det - fa).abs() / fa.max(1.0);
        worst = worst.max(gap);
        if gap > 1e-9 {
            failures += 1;
        }
    }
    Ok(vec![check(
        format!("affine.covariance: f_{{M Omega}}(M a) |det M| = f(a), {trials} trials"),
        "equality",
        format!("{failures} failures, worst {worst:.2e}"),
        "1e-9 relative",
        failures == 0,
    )])
}

fn random_map(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix {
    // QR of a Gaussian matrix gives a rotation; scale rows by random
    // singular values.
    let g = Matrix::from_fn(n, n, |_, _| rng::gaussian(rng));
    let q = g.qr().q();
    let g2 = Matrix::from_fn(n, n, |_, _| rng::gaussian(rng));
    let q2 = g2.qr().q();
    let sing = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            rng.gen_range(0.4..2.4)
        } else {
            0.0
        }
    });
    q * sing * q2
}

/// Criterion 7b: domain monotonicity f_Omega(a) >= f_Omega'(a) for
/// Omega inside Omega'.
pub fn criterion_7_compare(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0x71);
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for t in 0..trials {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let inner = random_polytope(n, 8 + 2 * n, &mut rng);
        let a = random_interior_point(&inner, &mut rng);
        let grow = rng.gen_range(1.05..1.8);
        let outer = VPolytope {
            vertices: inner.vertices.iter().map(|v| v * grow).collect(),
        };
        let f_in = modulus::f_omega(&ConvexBody::VPoly(inner), &a, FOpts::for_dim(n))?.volume;
        let f_out = modulus::f_omega(&ConvexBody::VPoly(outer), &a, FOpts::for_dim(n))?.volume;
        let gap = (f_out - f_in).max(0.0) / f_in.max(1.0);
        worst = worst.max(gap);
        if f_out > f_in * (1.0 + 1e-12) + 1e-12 {
            failures += 1;
        }
    }
    Ok(vec![check(
        format!("compare.monotonicity: f is antitone in the domain, {trials} nested pairs"),
        "0 violations",
        format!("{failures} violations, worst {worst:.2e}"),
        "exact",
        failures == 0,
    )])
}

/// Criterion 8: power-law contact exponent alpha = 5/8 for p = 4, n = 2,
/// fitted along the contact ray through the degenerate boundary point.
pub fn criterion_8_cor1(seed: u64) -> Result<Vec<CheckResult>> {
    let body = quartic_power_domain();
    let grid = log_grid(1e-4, 1e-2, 20);
    let mut omega_vals = Vec::with_capacity(grid.len());
    for (i, &d) in grid.iter().enumerate() {
        let a = vec_from(&[0.0, d]);
        let fopts = FOpts {
            tol: 1e-7,
            seed: rng::splitmix64(seed ^ i as u64),
        };
        let f = modulus::f_omega(&body, &a, fopts)?.volume;
        omega_vals.push(f.powf(-0.5));
    }
    let fit = fitting::fit_loglog(&grid, &omega_vals)?;
    let target = oracles::corollary_alpha(2, &[4.0])?;
    Ok(vec![
        check(
            "cor1.alpha: contact-ray exponent for p = 4, n = 2",
            format!("{target} +- 0.03"),
            format!("{:.5}", fit.alpha),
            "0.03",
            (fit.alpha - target).abs() <= 0.03,
        ),
        check(
            "cor1.r2: log-log fit quality",
            ">= 0.999",
            format!("{:.6}", fit.r2),
            "0.999",
            fit.r2 >= 0.999,
        ),
    ])
}

/// Criterion 9: graph-domain sandwich ratio in [0.5, 1.415] for the
/// quartic and exp-flat profiles.
pub fn criterion_9_graph_domains(seed: u64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for (name, body) in [
        ("x^4", quartic_graph_domain()),
        ("exp_flat", exp_flat_graph_domain()),
    ] {
        let g = match &body {
            ConvexBody::Graph2D(g) => g.clone(),
            _ => unreachable!(),
        };
        let grid = log_grid(1e-4, 1e-2, 10);
        let mut opts = CurveOpts::for_dim(2);
        opts.omega = opts.omega.with_seed(seed);
        opts.omega.extra_directions =
            vec![vec_from(&[0.0, 1.0]), vec_from(&[0.0, -1.0])];
        opts.with_bounds = false;
        let curve = modulus::omega_curve(&body, &grid, &opts)?;
        let mut lo_ratio = f64::INFINITY;
        let mut hi_ratio = f64::NEG_INFINITY;
        for (d, w) in curve.deltas.iter().zip(&curve.omega) {
            let hinv = g.h_inverse(*d)?;
            let ratio = w / (d * hinv).sqrt();
            lo_ratio = lo_ratio.min(ratio);
            hi_ratio = hi_ratio.max(ratio);
        }
        let pass = lo_ratio >= 0.5 && hi_ratio <= 1.415;
        checks.push(check(
            format!("graph2d.{name}: omega / sqrt(delta h^{{-1}}(delta)) across [1e-4, 1e-2]"),
            "[0.5, 1.415]",
            format!("[{lo_ratio:.4}, {hi_ratio:.4}]"),
            "band",
            pass,
        ));
    }
    Ok(checks)
}

/// Criterion 10: section-polar blowup matches the curvature asymptotic at
/// delta = 1e-4 on random ellipsoids, n in {2, 3}.
pub fn criterion_10_section_asymptotics(seed: u64) -> Result<Vec<CheckResult>> {
    let delta = 1e-4;
    let mut checks = Vec::new();
    for n in [2usize, 3] {
        let mut rng = rng::stream(seed, 0xA0 + n as u64);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let axes: Vec<f64> = (0..n).map(|_| rng.gen_range(0.7..1.8)).collect();
            let rot = random_rotation(n, &mut rng);
            let e = Ellipsoid::new(Vector::zeros(n), axes.clone(), Some(rot.clone()))?;
            // Pole of the rotated ellipsoid and its outer normal.
            let mut pole_dir = Vector::zeros(n);
            pole_dir[n - 1] = -1.0;
            let (x, nu) = e.boundary_point(&pole_dir);
            let kappa = oracles::ellipsoid_curvature(&axes);
            let a = &x - &nu * delta;
            let body = ConvexBody::Ellipsoid(e);
            let sec = section::section(&body, &a, &nu)?;
            let measured = sec.polar_measure()?;
            let oracle = oracles::section_asymptotic(kappa, n, delta);
            worst = worst.max((measured / oracle - 1.0).abs());
        }
        checks.push(check(
            format!("section.kappa.n{n}: |S*(x - delta nu, nu)| / asymptotic at delta = 1e-4"),
            "1 within 2%",
            format!("worst deviation {worst:.3e}"),
            "2e-2",
            worst < 2e-2,
        ));
    }
    Ok(checks)
}

fn random_rotation(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix {
    let g = Matrix::from_fn(n, n, |_, _| rng::gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    if q.determinant() < 0.0 {
        for i in 0..n {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}

/// Criterion 11: flat spots on the square and cube, none on the disk.
pub fn criterion_11_flat_spots(seed: u64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for (name, body, decades) in [
        ("square", square(), (1e-4, 1e-1)),
        ("cube", cube(), (1e-4, 1e-1)),
    ] {
        let grid = log_grid(decades.0, decades.1, 13);
        let mut opts = CurveOpts::for_dim(body.dim());
        opts.omega = opts.omega.with_seed(seed);
        opts.with_bounds = false;
        let curve = modulus::omega_curve(&body, &grid, &opts)?;
        let cert = flatspot::flat_spot_certificate(&body, &curve)?;
        let witness = cert.witness_ball_radius.unwrap_or(0.0);
        let pass = cert.flat_spot
            && cert.a >= 0.9
            && witness >= cert.predicted_radius;
        checks.push(check(
            format!("flatspot.{name}: A >= 0.9 across 3 decades, witness >= predicted radius"),
            "flat spot with valid witness",
            format!(
                "A = {:.4}, predicted r = {:.4}, witness r = {:.4}",
                cert.a, cert.predicted_radius, witness
            ),
            "A >= 0.9",
            pass,
        ));
    }
    {
        let body = disk();
        let grid = log_grid(1e-3, 1e-1, 13);
        let mut opts = CurveOpts::for_dim(2);
        opts.omega = opts.omega.with_seed(seed);
        opts.with_bounds = false;
        let curve = modulus::omega_curve(&body, &grid, &opts)?;
        let cert = flatspot::flat_spot_certificate(&body, &curve)?;
        let pass = !cert.flat_spot && cert.a_limit < 1e-3;
        checks.push(check(
            "flatspot.disk: decaying ratio, no flat spot flagged",
            "A_limit < 1e-3, not flagged",
            format!(
                "A_limit = {:.2e}, decay exponent {:.3}, flagged = {}",
                cert.a_limit, cert.decay_exponent, cert.flat_spot
            ),
            "1e-3",
            pass,
        ));
    }
    Ok(checks)
}

/// Criterion 12: equality case of the sharp estimate and the seminorm
/// inequality against computed curves.
pub fn criterion_12_equality_and_seminorm(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = rng::stream(seed, 0xC0);
    let mut checks = Vec::new();
    // Equality cases: exact-path bodies to 1e-9, quadrature bodies to 1e-4.
    let mut worst_exact: f64 = 0.0;
    let mut worst_quad: f64 = 0.0;
    let mut count_exact = 0;
    let mut count_quad = 0;
    for t in 0..trials {
        if t % 4 < 3 {
            let n = if t % 2 == 0 { 2 } else { 3 };
            let poly = random_polytope(n, 8 + 2 * n, &mut rng);
            let a = random_interior_point(&poly, &mut rng);
            let e = cone::equality_case_check(&ConvexBody::VPoly(poly), &a, FOpts::for_dim(n))?;
            worst_exact = worst_exact.max((e.ratio - 1.0).abs());
            count_exact += 1;
        } else {
            let axes: Vec<f64> = (0..2).map(|_| rng.gen_range(0.8..1.8)).collect();
            let e = Ellipsoid::new(Vector::zeros(2), axes, None)?;
            let body = ConvexBody::Ellipsoid(e);
            let (c, inr) = body.chebyshev()?;
            let dir = Vector::from_vec(rng::unit_direction(&mut rng, 2));
            let a = &c + &dir * (0.5 * inr);
            let ec = cone::equality_case_check(&body, &a, FOpts { tol: 1e-8, seed })?;
            worst_quad = worst_quad.max((ec.ratio - 1.0).abs());
            count_quad += 1;
        }
    }
    checks.push(check(
        format!("ma.equality.exact: ratio = 1 on {count_exact} random polytope apexes"),
        "1",
        format!("worst |ratio - 1| = {worst_exact:.2e}"),
        "1e-9",
        worst_exact < 1e-9,
    ));
    checks.push(check(
        format!("ma.equality.quad: ratio = 1 on {count_quad} ellipse apexes"),
        "1",
        format!("worst |ratio - 1| = {worst_quad:.2e}"),
        "1e-4",
        worst_quad < 1e-4,
    ));
    // Seminorm inequality against computed curves.
    let mut worst_ratio: f64 = 0.0;
    for (bi, body) in [disk(), square()].into_iter().enumerate() {
        let (center, inradius) = body.chebyshev()?;
        for k in 0..3 {
            let dir = Vector::from_vec(rng::unit_direction(&mut rng, 2));
            let a = &center + &dir * (inradius * (0.3 + 0.2 * k as f64));
            let d_a = body.distance_to_boundary(&a)?;
            let mut grid = log_grid(0.3 * d_a, inradius, 10);
            grid.push(d_a);
            grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
            grid.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
            let mut opts = CurveOpts::for_dim(2);
            opts.omega = opts.omega.with_seed(seed ^ (bi as u64) << 8 ^ k as u64);
            opts.with_bounds = false;
            let to_a = &a - &center;
            if to_a.norm() > 1e-9 {
                opts.omega.extra_directions = vec![&to_a / to_a.norm()];
            }
            let curve = modulus::omega_curve(&body, &grid, &opts)?;
            let cone_fn = cone::ConeFunction::new(body.clone(), a.clone(), 1.0)?;
            let f = cone_fn.subgradient_image(FOpts::for_dim(2))?;
            let sampled = cone::SampledFunction::from_cone(&cone_fn)?;
            let s = cone::seminorm(
                &sampled,
                &cone::Modulus::Curve {
                    curve: &curve,
                    inradius,
                },
                cone::PairSampler {
                    pairs: 2000,
                    seed: seed ^ 0xD00D,
                },
            )?;
            let bound = f.volume.powf(0.5);
            worst_ratio = worst_ratio.max(s / bound);
        }
    }
    checks.push(check(
        "ma.seminorm: [u_a]_omega <= |du_a(Omega)|^{1/n} (1 + 1e-2), 6 cases",
        "<= 1.01",
        format!("worst ratio {worst_ratio:.6}"),
        "1e-2",
        worst_ratio <= 1.01,
    ));
    Ok(checks)
}

/// Criterion 13: the truncated normalized parabola and its polar support.
pub fn criterion_13_parabola(seed: u64) -> Result<Vec<CheckResult>> {
    let body = truncated_parabola(1000.0);
    let a = vec_from(&[0.0, 1.0]);
    let f = modulus::f_omega(
        &body,
        &a,
        FOpts {
            tol: 1e-8,
            seed,
        },
    )?
    .volume;
    let target = std::f64::consts::PI / 2.0;
    let gap = (f - target).abs();
    let mut checks = vec![check(
        "parabola.f: engine f at (0,1) on {x2 > x1^2, x2 < 1000}",
        format!("{target:.9}"),
        format!("{f:.9}"),
        "1e-3",
        gap < 1e-3,
    )];
    // Boundary grid of the polar ellipse: support identically 1. The
    // half-angle form y2 = -sin^2(pi/4 - t/2) keeps y2 relatively
    // accurate near the tangency, where -y1^2/(4 y2) amplifies any
    // cancellation in y2 itself.
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let t = 2.0 * std::f64::consts::PI * i as f64 / 10_000.0;
        let half = std::f64::consts::FRAC_PI_4 - 0.5 * t;
        let y2 = -half.sin().powi(2);
        if y2 >= 0.0 {
            continue; // the single tangency point at the origin
        }
        let y = vec_from(&[t.cos(), y2]);
        let v = oracles::parabola_polar_support(&y);
        worst = worst.max((v - 1.0).abs());
    }
    checks.push(check(
        "parabola.polar-support: boundary grid of the polar ellipse",
        "1 everywhere",
        format!("worst |v - 1| = {worst:.2e}"),
        "1e-12",
        worst < 1e-12,
    ));
    Ok(checks)
}

/// Criterion 14: Mahler products of the symmetric fixtures.
pub fn criterion_14_mahler(_seed: u64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let cases: Vec<(&str, ConvexBody, f64)> = vec![
        ("square", square(), 8.0),
        ("cube", cube(), 32.0 / 3.0),
        ("cross2", cross_polytope(2), 8.0),
        ("cross3", cross_polytope(3), 32.0 / 3.0),
    ];
    for (name, body, expect) in cases {
        let m = modulus::mahler_check(&body)?;
        let upper = m.symmetric_upper.ok_or_else(|| {
            Error::DomainError(format!("{name} should be detected centrally symmetric"))
        })?;
        let exact = (m.product - expect).abs() < 1e-9;
        let bounded = m.product <= upper + 1e-12;
        checks.push(check(
            format!("mahler.{name}: |S||S*| exact and below |B^n|^2"),
            format!("{expect:.9} <= {upper:.9}"),
            format!("{:.9}", m.product),
            "1e-9",
            exact && bounded,
        ));
    }
    // 64-gon approaches the disk product pi^2 from below.
    let m64 = {
        let verts: Vec<Vector> = (0..64)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
                vec_from(&[t.cos(), t.sin()])
            })
            .collect();
        modulus::mahler_check(&ConvexBody::VPoly(VPolytope::new(verts).unwrap()))?
    };
    let pi2 = std::f64::consts::PI.powi(2);
    // m^2 sin^2(pi/m) at m = 64.
    let expect = 64f64.powi(2) * (std::f64::consts::PI / 64.0).sin().powi(2);
    checks.push(check(
        "mahler.64gon: product below pi^2 and matching m^2 sin^2(pi/m)",
        format!("{expect:.9} < {pi2:.9}"),
        format!("{:.9}", m64.product),
        "1e-9",
        (m64.product - expect).abs() < 1e-9 && m64.product < pi2,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            let parsed: Suite = s.name().parse().unwrap();
            assert_eq!(parsed, s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn random_polytopes_contain_origin() {
        let mut rng = rng::stream(1, 2);
        for n in 2..=4 {
            let p = random_polytope(n, 8 + 2 * n, &mut rng);
            assert!(p.contains(&Vector::zeros(n), 0.0).unwrap());
            let a = random_interior_point(&p, &mut rng);
            assert!(ConvexBody::VPoly(p).is_interior(&a));
        }
    }

    #[test]
    fn mahler_suite_passes() {
        let report = run_suite(Suite::Mahler, None, 7).unwrap();
        assert!(report.pass, "{:#?}", report.checks);
    }
}
