//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Build a vector from a slice.
pub fn vec_from(coords: &[f64]) -> Vector {
    Vector::from_column_slice(coords)
}

/// Deterministic orthonormal basis of the hyperplane orthogonal to `nu`
/// (`nu` must be a unit vector). Returns `n - 1` column vectors.
///
/// Gram-Schmidt over the identity columns, dropping the column most
/// parallel to `nu` so the construction never degenerates.
pub fn orthonormal_complement(nu: &Vector) -> Vec<Vector> {
    let n = nu.len();
    let drop = (0..n)
        .max_by(|&i, &j| nu[i].abs().partial_cmp(&nu[j].abs()).unwrap())
        .unwrap();
    let mut basis: Vec<Vector> = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == drop {
            continue;
        }
        let mut v = Vector::zeros(n);
        v[j] = 1.0;
        v -= nu * nu.dot(&v);
        for b in &basis {
            let b: &Vector = b;
            v -= b * b.dot(&v);
        }
        let norm = v.norm();
        debug_assert!(norm > 1e-8, "complement basis degenerated");
        basis.push(v / norm);
    }
    basis
}

/// Stack column vectors into an n x k matrix.
pub fn columns_to_matrix(cols: &[Vector]) -> Matrix {
    let n = cols[0].len();
    Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// Coordinates of `v` in the chart spanned by orthonormal `basis`.
pub fn to_chart(basis: &[Vector], v: &Vector) -> Vector {
    Vector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(v)))
}

/// Embed chart coordinates `z` back into the ambient space.
pub fn from_chart(basis: &[Vector], z: &Vector) -> Vector {
    let mut v = Vector::zeros(basis[0].len());
    for (b, &zi) in basis.iter().zip(z.iter()) {
        v += b * zi;
    }
    v
}

/// Normal of the hyperplane through the rows of `pts` (k = n points in R^n),
/// i.e. a unit vector orthogonal to all differences `pts[i] - pts[0]`.
/// Returns `None` when the points are affinely dependent.
///
/// Generalized cross product: cofactor expansion of the (n-1) x n
/// difference matrix, exact for n <= 4.
pub fn hyperplane_normal(pts: &[Vector]) -> Option<Vector> {
    let n = pts[0].len();
    debug_assert_eq!(pts.len(), n);
    let diffs = Matrix::from_fn(n - 1, n, |i, j| pts[i + 1][j] - pts[0][j]);
    let mut normal = Vector::zeros(n);
    for j in 0..n {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            let cc = if c < j { c } else { c + 1 };
            diffs[(r, cc)]
        });
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        normal[j] = sign * minor.determinant();
    }
    let norm = normal.norm();
    // Scale-invariant degeneracy test: the cofactor norm is the
    // parallelepiped volume of the difference rows.
    let row_scale: f64 = (0..n - 1)
        .map(|i| diffs.row(i).norm())
        .product();
    if norm <= 1e-10 * row_scale.max(1e-300) {
        return None;
    }
    Some(normal / norm)
}

/// Lexicographic comparison of two vectors, used for deterministic tie-breaks.
pub fn lex_less(a: &Vector, b: &Vector) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Rank of the affine hull of a point set (dimension of the spanned flat).
pub fn affine_rank(points: &[Vector], tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let n = points[0].len();
    let m = Matrix::from_fn(points.len() - 1, n, |i, j| points[i + 1][j] - points[0][j]);
    let scale = m.amax().max(1.0);
    m.svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > tol * scale)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_orthonormal() {
        for dir in [
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.6, -0.8, 0.0],
            vec![0.5, 0.5, 0.5, 0.5],
        ] {
            let nu = vec_from(&dir);
            let basis = orthonormal_complement(&nu);
            assert_eq!(basis.len(), nu.len() - 1);
            for (i, b) in basis.iter().enumerate() {
                assert!(b.dot(&nu).abs() < 1e-12);
                for b2 in &basis[i + 1..] {
                    assert!(b.dot(b2).abs() < 1e-12);
                }
                assert!((b.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hyperplane_normal_of_triangle_in_r3() {
        let pts = vec![
            vec_from(&[1.0, 0.0, 0.0]),
            vec_from(&[0.0, 1.0, 0.0]),
            vec_from(&[0.0, 0.0, 1.0]),
        ];
        let n = hyperplane_normal(&pts).unwrap();
        let expect = 1.0 / 3f64.sqrt();
        assert!((n[0].abs() - expect).abs() < 1e-12);
        assert!((n[1].abs() - expect).abs() < 1e-12);
        assert!((n[2].abs() - expect).abs() < 1e-12);
    }

    #[test]
    fn degenerate_points_have_no_normal() {
        let pts = vec![
            vec_from(&[0.0, 0.0, 0.0]),
            vec_from(&[1.0, 0.0, 0.0]),
            vec_from(&[2.0, 0.0, 0.0]),
        ];
        assert!(hyperplane_normal(&pts).is_none());
    }
}
