//! Batch front-end: body-spec JSON in, curves / reports / plot-ready CSV
//! out. Exit codes: 0 success (and all checks passed), 1 check failure,
//! 2 input error. All randomness is seeded and echoed; identical
//! invocations produce byte-identical outputs.

use clap::{Args, Parser, Subcommand};
use convexmod::body::ConvexBody;
use convexmod::cone;
use convexmod::error::Error;
use convexmod::linalg::{vec_from, Vector};
use convexmod::modulus::{self, CurveOpts, FOpts};
use convexmod::oracles;
use convexmod::verify::{self, Suite};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "convexmod", version, about = "Convex-body modulus engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BodyArg {
    /// Path to a body-spec JSON file.
    #[arg(long)]
    body: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Polar polytope of a polytopal body (H <-> V duality).
    Polar {
        #[command(flatten)]
        body: BodyArg,
    },
    /// Exact hull volume of a polytopal body.
    Volume {
        #[command(flatten)]
        body: BodyArg,
    },
    /// Polar volume f(a) = |(Omega - a)*|.
    F {
        #[command(flatten)]
        body: BodyArg,
        /// Coordinates of the base point a.
        #[arg(long, num_args = 2..=4, allow_hyphen_values = true)]
        point: Vec<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sharp modulus at a single delta.
    Omega {
        #[command(flatten)]
        body: BodyArg,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Modulus curve over a delta grid with sandwich bounds.
    Sweep {
        #[command(flatten)]
        body: BodyArg,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// log | linear
        #[arg(long, default_value = "log")]
        spacing: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        /// Skip the per-point section bounds.
        #[arg(long, default_value_t = false)]
        no_bounds: bool,
        /// Also report omega(delta) / delta^alpha columns and their
        /// sup/tail values (exploratory; nothing is asserted).
        #[arg(long)]
        ratio_exponent: Option<f64>,
        /// CSV output path (defaults to curve.csv under --output-dir).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON output path (defaults to curve.json under --output-dir).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
    },
    /// Closed-form oracle evaluations.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Cone-function checks.
    Ma {
        #[command(subcommand)]
        which: MaCmd,
    },
    /// Run a verification suite; exit 1 on any failed check.
    Verify {
        /// One of: t1 t2 workhorse slice affine compare cor1 graph2d
        /// sections flatspot mahler ma
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 20240806)]
        seed: u64,
        /// Append the JSON report to this file (JSONL, append-only).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// |B^n| / [d (2 - d)]^{(n+1)/2}
    BallF {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
    },
    /// sqrt(kappa) |B^n| / [d (2 - d / l_n)]^{(n+1)/2}
    EllipsoidF {
        #[arg(long, num_args = 2..=4, value_delimiter = ',')]
        semi_axes: Vec<f64>,
        #[arg(long)]
        d: f64,
    },
    /// Pole curvature l_n^{n-1} / prod l_j^2
    EllipsoidCurvature {
        #[arg(long, num_args = 2..=4, value_delimiter = ',')]
        semi_axes: Vec<f64>,
    },
    /// sqrt(kappa0) pi / (2 delta)^{3/2}
    ParabolaF {
        #[arg(long)]
        kappa0: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Support of the shifted parabola region at y.
    ParabolaPolarSupport {
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        y: Vec<f64>,
    },
    /// sqrt(kappa) |B^{n-1}| / (2 delta)^{(n-1)/2}
    SectionAsymptotic {
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
    },
    /// (2^{(n+1)/2} / (|B^n| sqrt(kappa0)))^{1/n}
    T1Constant {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        kappa0: f64,
    },
    /// (1 + sum 1/p_j) / n
    CorollaryAlpha {
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        p: Vec<f64>,
    },
    /// Two-sided graph-domain bounds at delta.
    Graph2dBounds {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// (1 - eps)^{(n-1)/2} |B^n| / 2^{(n+1)/2}
    LimitSetVolume {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// pi^{n/2} / Gamma(n/2 + 1)
    UnitBallVolume {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum MaCmd {
    /// Evaluate the cone function and report its structural invariants.
    ConeCheck {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, num_args = 2..=4, allow_hyphen_values = true)]
        apex: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Equality case of the sharp estimate at the extremizer.
    Equality {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, num_args = 2..=4, allow_hyphen_values = true)]
        apex: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sampled seminorm of the cone function against a modulus.
    Seminorm {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, num_args = 2..=4, allow_hyphen_values = true)]
        apex: Vec<f64>,
        /// Holder exponent; omitted = use a computed omega curve.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 2000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let payload = json!({ "error": e.to_string(), "kind": error_kind(&e) });
            eprintln!("{payload}");
            std::process::exit(2);
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("CONVEXMOD_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global();
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::UnboundedBody { .. } => "unbounded_body",
        Error::BaseNotInterior => "base_not_interior",
        Error::PointNotInterior => "point_not_interior",
        Error::OriginNotInterior => "origin_not_interior",
        Error::DegenerateHull { .. } => "degenerate_hull",
        Error::DeltaExceedsInradius { .. } => "delta_exceeds_inradius",
        Error::QuadratureNotConverged { .. } => "quadrature_not_converged",
        Error::InsufficientPoints { .. } => "insufficient_points",
        Error::CurveTooNarrow { .. } => "curve_too_narrow",
        Error::PoleNotNearest { .. } => "pole_not_nearest",
        Error::DomainError(_) => "domain_error",
        Error::DeltaTooLarge { .. } => "delta_too_large",
        Error::EmptyCurveRange { .. } => "empty_curve_range",
        Error::CollinearDegeneracy => "collinear_degeneracy",
        Error::PointOutsideDomain => "point_outside_domain",
        Error::InvalidBody(_) => "invalid_body",
        Error::LpInfeasible => "lp_infeasible",
        Error::Io(_) => "io",
    }
}

fn load_body(path: &Path) -> Result<ConvexBody, Error> {
    let text = std::fs::read_to_string(path)?;
    ConvexBody::from_json(&text)
}

/// Write-temp-rename so partial output never lands under the final name.
fn atomic_write(path: &Path, contents: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp~");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Polar { body } => {
            let b = load_body(&body.body)?;
            let out = match b.as_polytope() {
                Some(convexmod::body::PolytopeRep::H(h)) => {
                    let polar = h.polar()?;
                    json!({
                        "type": "vpolytope",
                        "vertices": polar.vertices.iter()
                            .map(|v| v.iter().cloned().collect::<Vec<f64>>())
                            .collect::<Vec<_>>(),
                    })
                }
                Some(convexmod::body::PolytopeRep::V(v)) => {
                    let polar = v.polar()?;
                    json!({
                        "type": "hpolytope",
                        "normals": (0..polar.num_facets())
                            .map(|i| polar.normals.row(i).iter().cloned().collect::<Vec<f64>>())
                            .collect::<Vec<_>>(),
                        "offsets": polar.offsets.iter().cloned().collect::<Vec<f64>>(),
                    })
                }
                None => {
                    return Err(Error::DomainError(
                        "polar output needs a polytopal body".into(),
                    ))
                }
            };
            println!("{out}");
            Ok(0)
        }
        Command::Volume { body } => {
            let b = load_body(&body.body)?;
            let volume = match b.as_polytope() {
                Some(convexmod::body::PolytopeRep::H(h)) => h.to_v()?.volume()?,
                Some(convexmod::body::PolytopeRep::V(v)) => v.volume()?,
                None => match &b {
                    ConvexBody::Ellipsoid(e) => e.volume(),
                    _ => {
                        return Err(Error::DomainError(
                            "volume needs a polytope or ellipsoid".into(),
                        ))
                    }
                },
            };
            println!("{}", json!({ "volume": volume }));
            Ok(0)
        }
        Command::F {
            body,
            point,
            tol,
            seed,
        } => {
            let b = load_body(&body.body)?;
            let mut opts = FOpts::for_dim(b.dim());
            if let Some(t) = tol {
                opts.tol = t;
            }
            opts.seed = seed;
            let a = vec_from(&point);
            let f = modulus::f_omega(&b, &a, opts)?;
            println!(
                "{}",
                json!({ "f": f.volume, "error_estimate": f.volume_error, "seed": seed })
            );
            Ok(0)
        }
        Command::Omega {
            body,
            delta,
            samples,
            seed,
            tol,
        } => {
            let b = load_body(&body.body)?;
            let mut opts = modulus::OmegaOpts::for_dim(b.dim()).with_seed(seed);
            if let Some(s) = samples {
                opts.boundary_samples = s;
            }
            if let Some(t) = tol {
                opts.tol = t;
            }
            let o = modulus::omega(&b, delta, &opts)?;
            println!(
                "{}",
                json!({
                    "omega": o.value,
                    "argmax": o.argmax.iter().cloned().collect::<Vec<f64>>(),
                    "samples_used": o.samples_used,
                    "slack": o.slack,
                    "seed": seed,
                })
            );
            Ok(0)
        }
        Command::Sweep {
            body,
            min,
            max,
            points,
            spacing,
            samples,
            seed,
            tol,
            no_bounds,
            ratio_exponent,
            csv,
            json: json_path,
            output_dir,
        } => {
            let b = load_body(&body.body)?;
            if points < 2 || min <= 0.0 || max <= min {
                return Err(Error::DomainError(
                    "need points >= 2 and 0 < min < max".into(),
                ));
            }
            let grid: Vec<f64> = (0..points)
                .map(|i| {
                    let t = i as f64 / (points as f64 - 1.0);
                    match spacing.as_str() {
                        "linear" => min + t * (max - min),
                        _ => (min.ln() + t * (max.ln() - min.ln())).exp(),
                    }
                })
                .collect();
            let mut opts = CurveOpts::for_dim(b.dim());
            opts.omega = opts.omega.with_seed(seed);
            if let Some(s) = samples {
                opts.omega.boundary_samples = s;
            }
            if let Some(t) = tol {
                opts.omega.tol = t;
            }
            opts.with_bounds = !no_bounds;
            let curve = modulus::omega_curve(&b, &grid, &opts)?;
            let csv_path = csv.unwrap_or_else(|| output_dir.join("curve.csv"));
            let json_path = json_path.unwrap_or_else(|| output_dir.join("curve.json"));
            atomic_write(&csv_path, &curve.to_csv())?;
            let mut doc = serde_json::to_value(&curve).map_err(|e| Error::Io(e.to_string()))?;
            if let Some(alpha) = ratio_exponent {
                let ratios: Vec<f64> = curve
                    .deltas
                    .iter()
                    .zip(&curve.omega)
                    .map(|(d, w)| w / d.powf(alpha))
                    .collect();
                let sup = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let tail = *ratios.last().unwrap();
                doc["ratio_exponent"] = json!(alpha);
                doc["ratio"] = json!(ratios);
                doc["ratio_sup"] = json!(sup);
                doc["ratio_tail"] = json!(tail);
            }
            atomic_write(&json_path, &format!("{doc}\n"))?;
            println!(
                "{}",
                json!({
                    "csv": csv_path.display().to_string(),
                    "json": json_path.display().to_string(),
                    "points": points,
                    "seed": seed,
                    "warnings": curve.warnings,
                })
            );
            Ok(0)
        }
        Command::Oracle { which } => {
            let out = run_oracle(which)?;
            println!("{out}");
            Ok(0)
        }
        Command::Ma { which } => run_ma(which),
        Command::Verify {
            suite,
            trials,
            seed,
            output,
            output_dir,
        } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run_suite(suite, trials, seed)?;
            for c in &report.checks {
                println!(
                    "[{}] {} | expected {} | actual {} | tol {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.expected,
                    c.actual,
                    c.tolerance
                );
            }
            let doc = serde_json::to_string(&report).map_err(|e| Error::Io(e.to_string()))?;
            let path = output.unwrap_or_else(|| output_dir.join("verify-report.jsonl"));
            // Reports are append-only once written.
            let mut file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&path)?;
            writeln!(file, "{doc}").map_err(Error::from)?;
            println!(
                "{}",
                json!({ "suite": report.suite, "pass": report.pass, "report": path.display().to_string() })
            );
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn run_oracle(cmd: OracleCmd) -> Result<serde_json::Value, Error> {
    Ok(match cmd {
        OracleCmd::BallF { n, d } => {
            json!({ "value": oracles::ball_f(n, d)?, "formula_id": "ball_f" })
        }
        OracleCmd::EllipsoidF { semi_axes, d } => {
            json!({ "value": oracles::ellipsoid_f(&semi_axes, d)?, "formula_id": "ellipsoid_f" })
        }
        OracleCmd::EllipsoidCurvature { semi_axes } => {
            json!({ "value": oracles::ellipsoid_curvature(&semi_axes), "formula_id": "ellipsoid_curvature" })
        }
        OracleCmd::ParabolaF { kappa0, delta } => {
            json!({ "value": oracles::parabola_f(kappa0, delta)?, "formula_id": "parabola_f" })
        }
        OracleCmd::ParabolaPolarSupport { y } => {
            let v = oracles::parabola_polar_support(&vec_from(&y));
            json!({
                "value": if v.is_finite() { json!(v) } else { json!("inf") },
                "formula_id": "parabola_polar_support",
            })
        }
        OracleCmd::SectionAsymptotic { kappa, n, delta } => {
            json!({ "value": oracles::section_asymptotic(kappa, n, delta), "formula_id": "section_asymptotic" })
        }
        OracleCmd::T1Constant { n, kappa0 } => {
            json!({ "value": oracles::t1_constant(n, kappa0), "formula_id": "t1_constant" })
        }
        OracleCmd::CorollaryAlpha { n, p } => {
            json!({ "value": oracles::corollary_alpha(n, &p)?, "formula_id": "corollary_alpha" })
        }
        OracleCmd::Graph2dBounds { body, delta } => {
            let b = load_body(&body)?;
            let g = match &b {
                ConvexBody::Graph2D(g) => g,
                _ => return Err(Error::DomainError("body must be graph2d".into())),
            };
            let (lo, hi) = oracles::graph2d_bounds(g, delta)?;
            json!({ "lo": lo, "hi": hi, "formula_id": "graph2d_bounds" })
        }
        OracleCmd::LimitSetVolume { n, eps } => {
            json!({ "value": oracles::limit_set_volume(n, eps)?, "formula_id": "limit_set_volume" })
        }
        OracleCmd::UnitBallVolume { n } => {
            json!({ "value": oracles::unit_ball_volume(n), "formula_id": "unit_ball_volume" })
        }
    })
}

fn run_ma(cmd: MaCmd) -> Result<i32, Error> {
    match cmd {
        MaCmd::ConeCheck {
            body,
            apex,
            scale,
            samples,
            seed,
        } => {
            let b = load_body(&body)?;
            let apex = vec_from(&apex);
            let cone_fn = cone::ConeFunction::new(b.clone(), apex.clone(), scale)?;
            let apex_value = cone_fn.eval(&apex)?;
            let mut rng = convexmod::rng::stream(seed, 1);
            let mut worst_boundary: f64 = 0.0;
            let mut worst_convexity: f64 = f64::NEG_INFINITY;
            let n = b.dim();
            let (center, _) = b.chebyshev()?;
            let radius = b.circumradius_bound()? + center.norm();
            let mut draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Option<Vector> {
                for _ in 0..200 {
                    let p = Vector::from_iterator(
                        n,
                        (0..n).map(|_| rand::Rng::gen_range(rng, -radius..radius)),
                    );
                    if b.is_interior(&p) {
                        return Some(p);
                    }
                }
                None
            };
            for _ in 0..samples {
                let dir = Vector::from_vec(convexmod::rng::unit_direction(&mut rng, n));
                let g = b.gauge(&apex, &dir)?;
                if g > 0.0 {
                    let boundary = &apex + &dir / g;
                    worst_boundary = worst_boundary.max(cone_fn.eval(&boundary)?.abs());
                }
                if let (Some(x), Some(y)) = (draw(&mut rng), draw(&mut rng)) {
                    let mid = (&x + &y) * 0.5;
                    let gap =
                        cone_fn.eval(&mid)? - 0.5 * (cone_fn.eval(&x)? + cone_fn.eval(&y)?);
                    worst_convexity = worst_convexity.max(gap);
                }
            }
            let pass = (apex_value + scale).abs() < 1e-9
                && worst_boundary < 1e-9
                && worst_convexity < 1e-9;
            println!(
                "{}",
                json!({
                    "apex_value": apex_value,
                    "max_abs_boundary_value": worst_boundary,
                    "max_midpoint_convexity_gap": worst_convexity,
                    "samples": samples,
                    "seed": seed,
                    "pass": pass,
                })
            );
            Ok(if pass { 0 } else { 1 })
        }
        MaCmd::Equality { body, apex, seed } => {
            let b = load_body(&body)?;
            let mut opts = FOpts::for_dim(b.dim());
            opts.seed = seed;
            let e = cone::equality_case_check(&b, &vec_from(&apex), opts)?;
            println!(
                "{}",
                json!({ "lhs": e.lhs, "rhs": e.rhs, "ratio": e.ratio, "seed": seed })
            );
            Ok(0)
        }
        MaCmd::Seminorm {
            body,
            apex,
            alpha,
            pairs,
            seed,
        } => {
            let b = load_body(&body)?;
            let apex = vec_from(&apex);
            let cone_fn = cone::ConeFunction::new(b.clone(), apex.clone(), 1.0)?;
            let sampled = cone::SampledFunction::from_cone(&cone_fn)?;
            let sampler = cone::PairSampler { pairs, seed };
            let (value, modulus_desc) = match alpha {
                Some(alpha) => (
                    cone::seminorm(&sampled, &cone::Modulus::Holder(alpha), sampler)?,
                    format!("holder({alpha})"),
                ),
                None => {
                    let (_, inradius) = b.chebyshev()?;
                    let d_a = b.distance_to_boundary(&apex)?;
                    let lo = (0.3 * d_a).min(inradius * 0.5);
                    let mut grid: Vec<f64> = (0..10)
                        .map(|i| {
                            let t = i as f64 / 9.0;
                            (lo.ln() + t * (inradius.ln() - lo.ln())).exp()
                        })
                        .collect();
                    grid.push(d_a);
                    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
                    let mut opts = CurveOpts::for_dim(b.dim());
                    opts.omega = opts.omega.with_seed(seed);
                    opts.with_bounds = false;
                    let curve = modulus::omega_curve(&b, &grid, &opts)?;
                    (
                        cone::seminorm(
                            &sampled,
                            &cone::Modulus::Curve {
                                curve: &curve,
                                inradius,
                            },
                            sampler,
                        )?,
                        "omega-curve".to_string(),
                    )
                }
            };
            let f = cone_fn.subgradient_image(FOpts::for_dim(b.dim()))?;
            let bound = f.volume.powf(1.0 / b.dim() as f64);
            println!(
                "{}",
                json!({
                    "seminorm": value,
                    "modulus": modulus_desc,
                    "subgradient_mass_root": bound,
                    "pairs": pairs,
                    "seed": seed,
                })
            );
            Ok(0)
        }
    }
}
