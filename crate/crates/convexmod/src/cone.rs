//! Cone functions u_a (the extremizers of the sharp estimate), their exact
//! subgradient images, bar-point constructions, and sampled seminorms.

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::modulus::{f_omega, FOpts, ModulusCurve, PolarBody, PolarRep};
use crate::rng;
use rand::Rng;
use std::sync::Arc;

/// The convex function with value -scale at the apex, 0 on the boundary,
/// linear on segments from the boundary to the apex.
#[derive(Debug, Clone)]
pub struct ConeFunction {
    pub body: ConvexBody,
    pub apex: Vector,
    pub scale: f64,
}

impl ConeFunction {
    pub fn new(body: ConvexBody, apex: Vector, scale: f64) -> Result<Self> {
        if !body.is_interior(&apex) {
            return Err(Error::PointNotInterior);
        }
        if scale < 0.0 {
            return Err(Error::DomainError("scale must be nonnegative".into()));
        }
        Ok(ConeFunction { body, apex, scale })
    }

    /// scale * (gauge_{Omega-apex}(x - apex) - 1), in [-scale, 0] on the
    /// closure.
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        let g = self.body.gauge(&self.apex, &(x - &self.apex))?;
        if g > 1.0 + 1e-9 {
            return Err(Error::PointOutsideDomain);
        }
        Ok(self.scale * (g.min(1.0) - 1.0))
    }

    /// The subgradient image scale * (Omega - apex)* with volume
    /// scale^n f(apex).
    pub fn subgradient_image(&self, opts: FOpts) -> Result<PolarBody> {
        let pb = f_omega(&self.body, &self.apex, opts)?;
        let n = self.body.dim();
        let factor = self.scale.powi(n as i32);
        Ok(PolarBody {
            rep: match pb.rep {
                PolarRep::Exact(v) => PolarRep::Exact(crate::polytope::VPolytope {
                    vertices: v.vertices.into_iter().map(|p| p * self.scale).collect(),
                }),
                PolarRep::Radial {
                    parent,
                    base,
                    scale,
                } => PolarRep::Radial {
                    parent,
                    base,
                    scale: scale * self.scale,
                },
            },
            volume: pb.volume * factor,
            base: pb.base,
            volume_error: pb.volume_error * factor,
        })
    }
}

/// Step-1 construction: push `b` to the boundary along the ray from `a`,
/// then reflect. Contracts: |a_bar - b_bar| = |a - b| and
/// d(a_bar) <= |a - b|.
pub struct BarPoint {
    pub a_bar: Vector,
    pub b_bar: Vector,
    pub theta: f64,
}

pub fn bar_point(body: &ConvexBody, a: &Vector, b: &Vector) -> Result<BarPoint> {
    if !body.is_interior(a) || !body.is_interior(b) {
        return Err(Error::PointNotInterior);
    }
    let v = b - a;
    if v.norm() < 1e-15 {
        return Err(Error::CollinearDegeneracy);
    }
    let g = body.gauge(a, &v)?;
    if g <= 0.0 {
        return Err(Error::CollinearDegeneracy);
    }
    let b_bar = a + &v / g;
    if (&b_bar - a).norm() < 1e-12 {
        return Err(Error::CollinearDegeneracy);
    }
    // b = (1 - theta) a + theta b_bar with theta = gauge.
    let theta = g;
    let a_bar = a * theta + &b_bar * (1.0 - theta);
    Ok(BarPoint { a_bar, b_bar, theta })
}

/// A vanishing-on-the-boundary convex test function given by an evaluator.
#[derive(Clone)]
pub struct SampledFunction {
    pub evaluator: Arc<dyn Fn(&Vector) -> f64 + Send + Sync>,
    pub domain: ConvexBody,
    /// Pairs always included in the seminorm sup (the extremal pairs
    /// for cone functions are apex / nearest-boundary).
    pub special_pairs: Vec<(Vector, Vector)>,
}

impl SampledFunction {
    pub fn from_cone(cone: &ConeFunction) -> Result<Self> {
        let d = cone.body.distance_to_boundary(&cone.apex)?;
        let nu = cone
            .body
            .normal_set(&cone.apex, 1e-6)?
            .first()
            .cloned()
            .ok_or_else(|| Error::DomainError("empty normal set".into()))?;
        let nearest = &cone.apex + &nu * d;
        let c = cone.clone();
        Ok(SampledFunction {
            evaluator: Arc::new(move |x| c.eval(x).unwrap_or(0.0)),
            domain: cone.body.clone(),
            special_pairs: vec![(cone.apex.clone(), nearest)],
        })
    }
}

#[derive(Debug, Clone)]
pub enum Modulus<'a> {
    Holder(f64),
    Curve { curve: &'a ModulusCurve, inradius: f64 },
}

impl Modulus<'_> {
    fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Modulus::Holder(alpha) => Ok(t.powf(*alpha)),
            Modulus::Curve { curve, inradius } => curve.eval(t, *inradius),
        }
    }

    fn range(&self) -> Option<(f64, f64)> {
        match self {
            Modulus::Holder(_) => None,
            Modulus::Curve { curve, inradius } => {
                let lo = curve.deltas[0];
                let hi = *curve.deltas.last().unwrap();
                let top = if hi >= inradius * (1.0 - 1e-9) {
                    f64::INFINITY
                } else {
                    hi
                };
                Some((lo, top))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PairSampler {
    pub pairs: usize,
    pub seed: u64,
}

/// Sampled lower estimate of sup |u(x) - u(y)| / m(|x - y|) over interior
/// pairs, always including the structured pairs.
pub fn seminorm(f: &SampledFunction, modulus: &Modulus, sampler: PairSampler) -> Result<f64> {
    if sampler.pairs < 1000 {
        return Err(Error::DomainError("need at least 10^3 pairs".into()));
    }
    let body = &f.domain;
    let n = body.dim();
    let (center, _) = body.chebyshev()?;
    let r = body.circumradius_bound()? + center.norm();
    let range = modulus.range();
    let mut best: f64 = 0.0;
    for (x, y) in &f.special_pairs {
        let t = (x - y).norm();
        let m = modulus.eval(t)?;
        if m > 0.0 {
            best = best.max(((f.evaluator)(x) - (f.evaluator)(y)).abs() / m);
        }
    }
    let mut rng = rng::stream(sampler.seed, 0x9EAA);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    let max_attempts = sampler.pairs * 200;
    let draw_interior = |rng: &mut rand_chacha::ChaCha8Rng| -> Option<Vector> {
        for _ in 0..500 {
            let p = Vector::from_iterator(n, (0..n).map(|_| rng.gen_range(-r..r)));
            if body.is_interior(&p) {
                return Some(p);
            }
        }
        None
    };
    while accepted < sampler.pairs && attempts < max_attempts {
        attempts += 1;
        let (x, y) = match (draw_interior(&mut rng), draw_interior(&mut rng)) {
            (Some(x), Some(y)) => (x, y),
            _ => break,
        };
        let t = (&x - &y).norm();
        if t < 1e-12 {
            continue;
        }
        if let Some((lo, hi)) = range {
            if t < lo || t > hi {
                continue;
            }
        }
        let m = modulus.eval(t)?;
        if m > 0.0 {
            best = best.max(((f.evaluator)(&x) - (f.evaluator)(&y)).abs() / m);
            accepted += 1;
        }
    }
    if accepted == 0 && f.special_pairs.is_empty() {
        if let Some((lo, hi)) = range {
            return Err(Error::EmptyCurveRange {
                distance: f64::NAN,
                lo,
                hi,
            });
        }
    }
    Ok(best)
}

/// Equality-case check of the sharp estimate at the extremizer u_a: the
/// apex/nearest-boundary increment (= 1 by construction) against
/// f(a)^{-1/n} |subgradient image|^{1/n}, the two volume factors coming
/// from distinct computations so the ratio exposes path inconsistencies.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct EqualityCase {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

pub fn equality_case_check(body: &ConvexBody, a: &Vector, opts: FOpts) -> Result<EqualityCase> {
    let n = body.dim();
    let cone = ConeFunction::new(body.clone(), a.clone(), 1.0)?;
    let d = body.distance_to_boundary(a)?;
    let nu = body
        .normal_set(a, 1e-6)?
        .first()
        .cloned()
        .ok_or_else(|| Error::DomainError("empty normal set".into()))?;
    let nearest = a + &nu * d;
    let u_apex = cone.eval(a)?;
    let u_boundary = cone.eval(&nearest)?;
    let lhs = (u_apex - u_boundary).abs();
    let f_primary = f_omega(body, a, opts)?;
    let f_secondary = match &f_primary.rep {
        PolarRep::Exact(v) => v.volume()?,
        PolarRep::Radial { .. } => {
            let refined = FOpts {
                tol: opts.tol * 0.1,
                seed: opts.seed.wrapping_add(1),
            };
            f_omega(body, a, refined)?.volume
        }
    };
    let inv = 1.0 / n as f64;
    let rhs = f_primary.volume.powf(-inv) * f_secondary.powf(inv);
    Ok(EqualityCase {
        lhs,
        rhs,
        ratio: lhs / rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Ellipsoid;
    use crate::linalg::{vec_from, Matrix};
    use crate::polytope::HPolytope;

    fn disk() -> ConvexBody {
        ConvexBody::Ellipsoid(Ellipsoid::ball(2, 1.0))
    }

    fn square() -> ConvexBody {
        ConvexBody::HPoly(
            HPolytope::new(
                Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
                vec_from(&[1.0, 1.0, 1.0, 1.0]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn cone_eval_examples() {
        let u = ConeFunction::new(disk(), Vector::zeros(2), 1.0).unwrap();
        assert!((u.eval(&vec_from(&[0.5, 0.0])).unwrap() + 0.5).abs() < 1e-12);
        assert!((u.eval(&Vector::zeros(2)).unwrap() + 1.0).abs() < 1e-12);

        let u = ConeFunction::new(square(), vec_from(&[0.5, 0.0]), 1.0).unwrap();
        assert!((u.eval(&vec_from(&[0.9, 0.0])).unwrap() + 0.2).abs() < 1e-12);
    }

    #[test]
    fn subgradient_image_scales_by_power_of_scale() {
        let apex = Vector::zeros(2);
        let base = ConeFunction::new(square(), apex.clone(), 1.0)
            .unwrap()
            .subgradient_image(FOpts::for_dim(2))
            .unwrap();
        let doubled = ConeFunction::new(square(), apex, 2.0)
            .unwrap()
            .subgradient_image(FOpts::for_dim(2))
            .unwrap();
        assert!((base.volume - 2.0).abs() < 1e-12);
        assert!((doubled.volume - 8.0).abs() < 1e-12);
    }

    #[test]
    fn bar_point_on_the_disk() {
        let bp = bar_point(&disk(), &Vector::zeros(2), &vec_from(&[0.5, 0.0])).unwrap();
        assert!((&bp.b_bar - &vec_from(&[1.0, 0.0])).norm() < 1e-9);
        assert!((bp.theta - 0.5).abs() < 1e-9);
        assert!((&bp.a_bar - &vec_from(&[0.5, 0.0])).norm() < 1e-9);
        // Contract: |a_bar - b_bar| = |a - b|.
        assert!(((&bp.a_bar - &bp.b_bar).norm() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bar_point_on_the_square() {
        let bp = bar_point(&square(), &Vector::zeros(2), &vec_from(&[0.0, 0.5])).unwrap();
        assert!((&bp.b_bar - &vec_from(&[0.0, 1.0])).norm() < 1e-12);
        assert!((bp.theta - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_seminorm_of_radial_cone() {
        let cone = ConeFunction::new(disk(), Vector::zeros(2), 1.0).unwrap();
        let f = SampledFunction::from_cone(&cone).unwrap();
        let s = seminorm(&f, &Modulus::Holder(1.0), PairSampler { pairs: 2000, seed: 3 }).unwrap();
        assert!(s <= 1.0 + 1e-9, "s = {s}");
        assert!(s > 0.99, "s = {s}"); // apex pair attains slope 1
    }

    #[test]
    fn seminorm_is_homogeneous_in_scale() {
        let c1 = ConeFunction::new(square(), vec_from(&[0.2, 0.1]), 1.0).unwrap();
        let c2 = ConeFunction::new(square(), vec_from(&[0.2, 0.1]), 0.5).unwrap();
        let f1 = SampledFunction::from_cone(&c1).unwrap();
        let f2 = SampledFunction::from_cone(&c2).unwrap();
        let sampler = PairSampler { pairs: 1500, seed: 11 };
        let s1 = seminorm(&f1, &Modulus::Holder(0.5), sampler).unwrap();
        let s2 = seminorm(&f2, &Modulus::Holder(0.5), sampler).unwrap();
        assert!((s2 - 0.5 * s1).abs() < 1e-12);
    }

    #[test]
    fn equality_case_on_square_and_disk() {
        let e = equality_case_check(&square(), &vec_from(&[0.0, -0.5]), FOpts::for_dim(2)).unwrap();
        assert!((e.ratio - 1.0).abs() < 1e-9, "square ratio {}", e.ratio);
        let e = equality_case_check(&disk(), &vec_from(&[0.0, 0.5]), FOpts::for_dim(2)).unwrap();
        assert!((e.ratio - 1.0).abs() < 1e-6, "disk ratio {}", e.ratio);
    }

    #[test]
    fn cone_midpoint_convexity_sampled() {
        let cone = ConeFunction::new(square(), vec_from(&[0.3, -0.2]), 1.0).unwrap();
        let mut rng = crate::rng::stream(5, 0);
        for _ in 0..500 {
            let x = vec_from(&[rng.gen_range(-0.99..0.99), rng.gen_range(-0.99..0.99)]);
            let y = vec_from(&[rng.gen_range(-0.99..0.99), rng.gen_range(-0.99..0.99)]);
            let mid = (&x + &y) * 0.5;
            let lhs = cone.eval(&mid).unwrap();
            let rhs = 0.5 * (cone.eval(&x).unwrap() + cone.eval(&y).unwrap());
            assert!(lhs <= rhs + 1e-9, "convexity violated: {lhs} > {rhs}");
        }
    }
}
