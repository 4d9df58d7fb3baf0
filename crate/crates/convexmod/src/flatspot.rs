//! Flat-spot certificates: a boundary flat spot is equivalent to
//! omega(delta) >= A delta^{1/n} near zero, and the certified constant A
//! bounds the radius of an (n-1)-ball contained in a supporting
//! hyperplane's contact set. The radius bound is not sharp.

use crate::body::{ConvexBody, PolytopeRep};
use crate::error::{Error, Result};
use crate::fitting::fit_loglog;
use crate::linalg::{orthonormal_complement, to_chart, Vector};
use crate::lp;
use crate::modulus::ModulusCurve;
use crate::oracles::unit_ball_volume;
use serde::Serialize;

/// Ratios decaying faster than this exponent count as "no flat spot".
const DECAY_THRESHOLD: f64 = 0.05;
/// Constants below this never flag a flat spot.
const A_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct FlatSpotCertificate {
    /// min over the grid of omega(delta) / delta^{1/n}: the constant that
    /// certifies omega >= A delta^{1/n} on the grid.
    pub a: f64,
    /// Fitted excess exponent of omega/delta^{1/n} (positive = decaying
    /// ratio, so no flat spot in the limit).
    pub decay_exponent: f64,
    /// A carried to delta -> 0: zero when the ratio trends to zero.
    pub a_limit: f64,
    pub flat_spot: bool,
    /// Circumradius bound R used in the radius formula.
    pub bounding_radius: f64,
    /// A^n |B^{n-2}| / (2^{n-1} n R^{n-2}).
    pub predicted_radius: f64,
    /// Largest facet inradius (polytopes), the witness flat disk.
    pub witness_ball_radius: Option<f64>,
    pub witness_facet: Option<usize>,
}

pub fn flat_spot_certificate(
    body: &ConvexBody,
    curve: &ModulusCurve,
) -> Result<FlatSpotCertificate> {
    let n = body.dim();
    let lo = curve.deltas[0];
    let hi = *curve.deltas.last().unwrap();
    let decades = (hi / lo).log10();
    if decades < 2.0 - 1e-9 {
        return Err(Error::CurveTooNarrow {
            decades,
            needed: 2.0,
        });
    }
    let ratios: Vec<f64> = curve
        .deltas
        .iter()
        .zip(&curve.omega)
        .map(|(d, w)| w / d.powf(1.0 / n as f64))
        .collect();
    let a = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let fit = fit_loglog(&curve.deltas, &ratios)?;
    let decay_exponent = fit.alpha;
    let a_limit = if decay_exponent > DECAY_THRESHOLD { 0.0 } else { a };
    let flat_spot = a_limit >= A_THRESHOLD;
    let r = bounding_radius(body)?;
    let predicted_radius = a_limit.powi(n as i32) * unit_ball_volume(n.saturating_sub(2))
        / (2f64.powi(n as i32 - 1) * n as f64 * r.powi(n as i32 - 2));
    let (witness_ball_radius, witness_facet) = match facet_inradii(body) {
        Ok(list) => {
            let best = list
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap());
            match best {
                Some((i, r)) => (Some(*r), Some(i)),
                None => (None, None),
            }
        }
        Err(_) => (None, None),
    };
    Ok(FlatSpotCertificate {
        a,
        decay_exponent,
        a_limit,
        flat_spot,
        bounding_radius: r,
        predicted_radius,
        witness_ball_radius,
        witness_facet,
    })
}

/// Circumradius about the body center (vertex centroid for polytopes,
/// Chebyshev center otherwise).
fn bounding_radius(body: &ConvexBody) -> Result<f64> {
    match body.as_polytope() {
        Some(PolytopeRep::H(h)) => {
            let verts = h.vertices()?;
            let c = verts.iter().fold(Vector::zeros(h.dim()), |acc, v| acc + v)
                / verts.len() as f64;
            Ok(verts.iter().map(|v| (v - &c).norm()).fold(0.0, f64::max))
        }
        Some(PolytopeRep::V(v)) => {
            let c = v.centroid();
            Ok(v.vertices.iter().map(|p| (p - &c).norm()).fold(0.0, f64::max))
        }
        None => {
            let (c, _) = body.chebyshev()?;
            let mut r: f64 = 0.0;
            for theta in crate::body::direction_fan(body.dim(), 512) {
                r = r.max(body.support_raw(&theta)? - c.dot(&theta));
            }
            Ok(r)
        }
    }
}

/// Inradius of every facet, computed in the facet chart by the Chebyshev
/// linear program.
fn facet_inradii(body: &ConvexBody) -> Result<Vec<f64>> {
    let v = match body.as_polytope() {
        Some(PolytopeRep::H(h)) => h.to_v()?,
        Some(PolytopeRep::V(v)) => v.clone(),
        None => return Err(Error::DomainError("facet witness needs a polytope".into())),
    };
    let facets = v.facets()?;
    let mut out = Vec::with_capacity(facets.len());
    for f in &facets {
        let basis = orthonormal_complement(&f.normal);
        let anchor = &f.normal * f.offset;
        let pts: Vec<Vector> = f
            .on_facet
            .iter()
            .map(|&i| to_chart(&basis, &(&v.vertices[i] - &anchor)))
            .collect();
        if pts.len() < basis.len() + 1 {
            out.push(0.0);
            continue;
        }
        if basis.len() == 1 {
            let lo = pts.iter().map(|p| p[0]).fold(f64::MAX, f64::min);
            let hi = pts.iter().map(|p| p[0]).fold(f64::MIN, f64::max);
            out.push(0.5 * (hi - lo).max(0.0));
            continue;
        }
        let chart_poly = match crate::polytope::VPolytope::new_with_dim(pts, basis.len()) {
            Ok(p) => p,
            Err(_) => {
                out.push(0.0);
                continue;
            }
        };
        let h = chart_poly.to_h()?;
        let interior = h.interior_point()?;
        let (_, r) = lp::chebyshev_center(&h.normals, &h.offsets, &interior)?;
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vec_from, Matrix};
    use crate::polytope::HPolytope;

    fn synthetic_curve(deltas: Vec<f64>, omega: Vec<f64>) -> ModulusCurve {
        let k = deltas.len();
        ModulusCurve {
            deltas,
            omega,
            lower_bound: vec![f64::NAN; k],
            upper_bound: vec![f64::NAN; k],
            argmax: vec![vec![0.0, 0.0]; k],
            samples_used: vec![1; k],
            tolerance: vec![0.0; k],
            seed: 0,
            warnings: Vec::new(),
        }
    }

    fn square_body() -> ConvexBody {
        ConvexBody::HPoly(
            HPolytope::new(
                Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]),
                vec_from(&[1.0, 1.0, 1.0, 1.0]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn square_certificate_has_flat_spot_with_valid_witness() {
        // omega(delta) = sqrt(delta (2 - delta) / 2) on a 3-decade grid.
        let deltas: Vec<f64> = (0..25)
            .map(|i| 10f64.powf(-4.0 + 3.0 * i as f64 / 24.0))
            .collect();
        let omega: Vec<f64> = deltas
            .iter()
            .map(|d| (d * (2.0 - d) / 2.0).sqrt())
            .collect();
        let cert =
            flat_spot_certificate(&square_body(), &synthetic_curve(deltas, omega)).unwrap();
        assert!(cert.flat_spot);
        assert!(cert.a >= 0.9, "a = {}", cert.a);
        assert!((cert.bounding_radius - 2f64.sqrt()).abs() < 1e-9);
        // n = 2: predicted = A^2 |B^0| / (2 * 2 * R^0) = A^2 / 4.
        assert!((cert.predicted_radius - cert.a_limit * cert.a_limit / 4.0).abs() < 1e-12);
        let witness = cert.witness_ball_radius.unwrap();
        assert!((witness - 1.0).abs() < 1e-9);
        assert!(witness >= cert.predicted_radius);
    }

    #[test]
    fn decaying_ratio_is_not_a_flat_spot() {
        // omega = delta^{3/4}: ratio delta^{1/4} -> 0.
        let deltas: Vec<f64> = (0..25)
            .map(|i| 10f64.powf(-3.0 + 2.0 * i as f64 / 24.0))
            .collect();
        let omega: Vec<f64> = deltas.iter().map(|d| d.powf(0.75)).collect();
        let cert =
            flat_spot_certificate(&square_body(), &synthetic_curve(deltas, omega)).unwrap();
        assert!(!cert.flat_spot);
        assert!(cert.a_limit < 1e-3);
        assert!((cert.decay_exponent - 0.25).abs() < 1e-6);
    }

    #[test]
    fn narrow_curve_rejected() {
        let deltas: Vec<f64> = (0..10).map(|i| 0.01 + 0.001 * i as f64).collect();
        let omega: Vec<f64> = deltas.iter().map(|d| d.sqrt()).collect();
        assert!(matches!(
            flat_spot_certificate(&square_body(), &synthetic_curve(deltas, omega)),
            Err(Error::CurveTooNarrow { .. })
        ));
    }
}
