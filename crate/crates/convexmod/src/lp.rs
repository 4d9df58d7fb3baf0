//! Dense tableau simplex for the small linear programs the geometry needs:
//! support functions of H-polytopes and Chebyshev centers.
//!
//! Problems arrive as `maximize c.x subject to A x <= b` with a known
//! strictly feasible point, so phase 1 is never required: translating by
//! the feasible point makes the slack basis feasible.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 100_000;

pub struct LpSolution {
    pub x: Vector,
    pub value: f64,
}

/// Maximize `c.x` over `{x : A x <= b}` starting from the strictly feasible
/// `interior` point. Bland's rule, so termination is guaranteed.
pub fn maximize(a: &Matrix, b: &Vector, c: &Vector, interior: &Vector) -> Result<LpSolution> {
    let m = a.nrows();
    let n = a.ncols();
    let shifted = b - a * interior;
    if shifted.iter().any(|&v| v <= 0.0) {
        return Err(Error::LpInfeasible);
    }

    // Variables: y+ (n), y- (n), slacks (m); tableau m x (2n + m + 1).
    let cols = 2 * n + m;
    let mut t = Matrix::zeros(m, cols + 1);
    for i in 0..m {
        for j in 0..n {
            t[(i, j)] = a[(i, j)];
            t[(i, n + j)] = -a[(i, j)];
        }
        t[(i, 2 * n + i)] = 1.0;
        t[(i, cols)] = shifted[i];
    }
    let mut obj = vec![0.0; cols + 1];
    for j in 0..n {
        obj[j] = -c[j];
        obj[n + j] = c[j];
    }
    let mut basis: Vec<usize> = (2 * n..2 * n + m).collect();

    for _ in 0..MAX_ITERS {
        // Bland: the lowest-index column with a negative objective entry.
        let entering = match (0..cols).find(|&j| obj[j] < -COST_TOL) {
            Some(j) => j,
            None => {
                // Optimal: read off y = y+ - y-.
                let mut y = Vector::zeros(n);
                for (i, &bi) in basis.iter().enumerate() {
                    if bi < n {
                        y[bi] += t[(i, cols)];
                    } else if bi < 2 * n {
                        y[bi - n] -= t[(i, cols)];
                    }
                }
                let x = interior + &y;
                let value = c.dot(&x);
                return Ok(LpSolution { x, value });
            }
        };
        // Ratio test with Bland tie-break on the leaving basis index.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let aij = t[(i, entering)];
            if aij > PIVOT_TOL {
                let ratio = t[(i, cols)] / aij;
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_TOL
                            || (ratio < lr + PIVOT_TOL && basis[i] < basis[li])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (row, _) = match leave {
            Some(v) => v,
            None => {
                let mut dir = vec![0.0; n];
                if entering < n {
                    dir[entering] = 1.0;
                } else if entering < 2 * n {
                    dir[entering - n] = -1.0;
                }
                return Err(Error::UnboundedBody { direction: dir });
            }
        };
        // Pivot.
        let piv = t[(row, entering)];
        for j in 0..=cols {
            t[(row, j)] /= piv;
        }
        for i in 0..m {
            if i != row {
                let factor = t[(i, entering)];
                if factor != 0.0 {
                    for j in 0..=cols {
                        t[(i, j)] -= factor * t[(row, j)];
                    }
                }
            }
        }
        let factor = obj[entering];
        if factor != 0.0 {
            for j in 0..=cols {
                obj[j] -= factor * t[(row, j)];
            }
        }
        basis[row] = entering;
    }
    Err(Error::DomainError("simplex iteration cap exceeded".into()))
}

/// Chebyshev center of `{x : A x <= b}` with unit-norm rows assumed:
/// maximize r subject to `A x + r <= b`. Returns (center, inradius).
pub fn chebyshev_center(a: &Matrix, b: &Vector, interior: &Vector) -> Result<(Vector, f64)> {
    let m = a.nrows();
    let n = a.ncols();
    let mut a_ext = Matrix::zeros(m + 1, n + 1);
    for i in 0..m {
        for j in 0..n {
            a_ext[(i, j)] = a[(i, j)];
        }
        a_ext[(i, n)] = 1.0;
    }
    a_ext[(m, n)] = -1.0; // r >= 0
    let mut b_ext = Vector::zeros(m + 1);
    for i in 0..m {
        b_ext[i] = b[i];
    }
    let mut c = Vector::zeros(n + 1);
    c[n] = 1.0;
    // (interior, r) strictly feasible for a small enough r > -margin.
    let margin = (b - a * interior).min();
    let mut start = Vector::zeros(n + 1);
    for j in 0..n {
        start[j] = interior[j];
    }
    start[n] = -0.5 * margin.min(1.0); // strictly inside r >= 0? no: allow r slightly negative start
    // r >= 0 row demands -r <= 0, so start r must be > 0 strictly for strict feasibility;
    // use half the margin instead, which keeps A x + r < b strict.
    start[n] = 0.5 * margin;
    if margin <= 0.0 {
        return Err(Error::LpInfeasible);
    }
    let sol = maximize(&a_ext, &b_ext, &c, &start)?;
    let center = Vector::from_iterator(n, (0..n).map(|j| sol.x[j]));
    Ok((center, sol.x[n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from;

    fn square() -> (Matrix, Vector) {
        let a = Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]);
        let b = vec_from(&[1.0, 1.0, 1.0, 1.0]);
        (a, b)
    }

    #[test]
    fn support_of_square_is_l1_norm_of_direction() {
        let (a, b) = square();
        let origin = vec_from(&[0.0, 0.0]);
        for (dx, dy) in [(1.0, 0.5), (-0.3, 0.9), (0.7, -0.7), (1.0, 0.0)] {
            let c = vec_from(&[dx, dy]);
            let sol = maximize(&a, &b, &c, &origin).unwrap();
            let expect = dx.abs() + dy.abs();
            assert!((sol.value - expect).abs() < 1e-9, "{} vs {}", sol.value, expect);
        }
    }

    #[test]
    fn chebyshev_center_of_shifted_square() {
        let (a, mut b) = square();
        b[0] = 3.0; // square [-1,3] x [-1,1]; center (1, 0), inradius 1
        let start = vec_from(&[0.1, 0.2]);
        let (center, r) = chebyshev_center(&a, &b, &start).unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!((center[1] - 0.0).abs() < 1e-9);
        assert!(center[0] > -0.0001 && center[0] < 2.0001); // any point of the center segment
    }

    #[test]
    fn unbounded_direction_detected() {
        // Half-plane x <= 1 in R^2: unbounded in +y.
        let a = Matrix::from_row_slice(1, 2, &[1.0, 0.0]);
        let b = vec_from(&[1.0]);
        let c = vec_from(&[0.0, 1.0]);
        let origin = vec_from(&[0.0, 0.0]);
        match maximize(&a, &b, &c, &origin) {
            Err(Error::UnboundedBody { .. }) => {}
            other => panic!("expected unbounded, got {:?}", other.map(|s| s.value)),
        }
    }
}
