//! Log-log power-law fits for scaling exponents.

use crate::error::{Error, Result};
use crate::modulus::ModulusCurve;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PowerLawFit {
    /// Slope of log y against log x.
    pub alpha: f64,
    /// exp(intercept): y ~ c x^alpha.
    pub c: f64,
    /// Coefficient of determination of the log-log line.
    pub r2: f64,
}

/// Least-squares line through (ln x, ln y).
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() || xs.len() < 5 {
        return Err(Error::InsufficientPoints {
            needed: 5,
            got: xs.len().min(ys.len()),
        });
    }
    if xs.iter().chain(ys.iter()).any(|&v| v <= 0.0 || !v.is_finite()) {
        return Err(Error::DomainError(
            "power-law fit needs positive finite data".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::DomainError("degenerate abscissa in fit".into()));
    }
    let alpha = sxy / sxx;
    let intercept = my - alpha * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let p = intercept + alpha * x;
            (y - p) * (y - p)
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(PowerLawFit {
        alpha,
        c: intercept.exp(),
        r2,
    })
}

/// Fit omega(delta) ~ c delta^alpha over the grid points inside `window`.
pub fn fit_scaling_exponent(
    curve: &ModulusCurve,
    window: (f64, f64),
) -> Result<PowerLawFit> {
    let (lo, hi) = window;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (d, w) in curve.deltas.iter().zip(&curve.omega) {
        if *d >= lo * (1.0 - 1e-12) && *d <= hi * (1.0 + 1e-12) {
            xs.push(*d);
            ys.push(*w);
        }
    }
    fit_loglog(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_recovered() {
        let xs: Vec<f64> = (1..=20).map(|i| 1e-3 * 1.5f64.powi(i)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x.powf(0.75)).collect();
        let fit = fit_loglog(&xs, &ys).unwrap();
        assert!((fit.alpha - 0.75).abs() < 1e-12);
        assert!((fit.c - 2.5).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points_rejected() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 2.0, 3.0, 4.0];
        assert!(matches!(
            fit_loglog(&xs, &ys),
            Err(Error::InsufficientPoints { .. })
        ));
    }
}
