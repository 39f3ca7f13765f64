//! Small dense linear-algebra helpers on top of `nalgebra`.
//!
//! Everything here works with `DMatrix<f64>` in the matrix-unit basis of
//! gl(n); flattened indices are row-major, `flat(a, b) = a*n + b`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;
pub type Vec64 = DVector<f64>;

/// Row-major flat index of the matrix unit e_{ab} in gl(n).
#[inline]
pub fn flat(a: usize, b: usize, n: usize) -> usize {
    a * n + b
}

/// Flatten a matrix into a vector in the matrix-unit basis (row-major).
pub fn vec_rowmajor(m: &Mat) -> Vec64 {
    let n = m.nrows();
    Vec64::from_fn(n * n, |i, _| m[(i / n, i % n)])
}

/// Conjugate by the antidiagonal flip: reverses both row and column order.
pub fn flip_both(m: &Mat) -> Mat {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)])
}

/// Projection onto traceless matrices: S − (tr S / n)·I.
pub fn traceless(m: &Mat) -> Mat {
    let n = m.nrows();
    let shift = m.trace() / n as f64;
    let mut out = m.clone();
    for i in 0..n {
        out[(i, i)] -= shift;
    }
    out
}

/// Strictly upper-triangular part.
pub fn strictly_upper(m: &Mat) -> Mat {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| if j > i { m[(i, j)] } else { 0.0 })
}

/// Upper-triangular part including the diagonal.
pub fn upper(m: &Mat) -> Mat {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| if j >= i { m[(i, j)] } else { 0.0 })
}

/// Frobenius norm of the strictly lower-triangular part.
pub fn lower_residual(m: &Mat) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..i {
            s += m[(i, j)] * m[(i, j)];
        }
    }
    s.sqrt()
}

/// ‖M − Mᵀ‖_F, the deviation from symmetry.
pub fn symmetry_residual(m: &Mat) -> f64 {
    (m - m.transpose()).norm()
}

/// Matrix exponential (scaling-and-squaring Padé via nalgebra).
pub fn expm(m: &Mat) -> Mat {
    m.exp()
}

/// Exponential of a symmetric matrix through its spectral decomposition.
///
/// Exact up to the eigensolver; preferred for flow generators where the
/// entries of exp(tX) span many orders of magnitude.
pub fn expm_symmetric(m: &Mat) -> Mat {
    let eig = m.clone().symmetric_eigen();
    let exp_vals = eig.eigenvalues.map(f64::exp);
    &eig.eigenvectors * Mat::from_diagonal(&exp_vals) * eig.eigenvectors.transpose()
}

/// QR with the sign convention that R has positive diagonal.
pub fn qr_positive(m: &Mat) -> Result<(Mat, Mat)> {
    let n = m.nrows();
    let qr = m.clone().qr();
    let mut q = qr.q();
    let mut r = qr.r();
    let scale = m.norm().max(1.0);
    for i in 0..n {
        let d = r[(i, i)];
        if d.abs() < 1e-13 * scale {
            return Err(Error::numerical(format!(
                "QR breakdown: diagonal entry {i} of R is {d:.3e}"
            )));
        }
        if d < 0.0 {
            for j in 0..n {
                r[(i, j)] = -r[(i, j)];
                q[(j, i)] = -q[(j, i)];
            }
        }
    }
    Ok((q, r))
}

/// Lower Cholesky factor L with L·Lᵀ = M, or an input error if M is not SPD.
pub fn cholesky_lower(m: &Mat) -> Result<Mat> {
    if symmetry_residual(m) > 1e-9 * m.norm().max(1.0) {
        return Err(Error::invalid("matrix is not symmetric"));
    }
    let sym = 0.5 * (m + m.transpose());
    sym.cholesky()
        .map(|c| c.l())
        .ok_or_else(|| Error::invalid("matrix is not positive definite"))
}

/// Inverse with a typed error on singular input.
pub fn inverse(m: &Mat) -> Result<Mat> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::invalid("matrix is singular"))
}

/// Numerical rank with threshold `rel_tol · σ_max`.
///
/// Errors out when a singular value sits inside the ambiguity window
/// (within a factor 10 of the threshold on either side), since a rank
/// decision there would be noise.
pub fn rank_with_gap(m: &Mat, rel_tol: f64) -> Result<usize> {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return Ok(0);
    }
    let thr = rel_tol * smax;
    let mut rank = 0;
    for &s in svd.singular_values.iter() {
        if s > thr {
            rank += 1;
        }
        if s > thr / 10.0 && s < thr * 10.0 {
            return Err(Error::numerical(format!(
                "rank ambiguity: singular value {s:.3e} within a factor 10 of threshold {thr:.3e}"
            )));
        }
    }
    Ok(rank)
}

/// Kronecker product arranged for row-major flattening: the result maps
/// `vec(X) ↦ vec(A X Bᵀ)` with `vec` row-major.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flip_both_maps_lower_to_upper() {
        let l = Mat::from_row_slice(3, 3, &[1., 0., 0., 2., 3., 0., 4., 5., 6.]);
        let u = flip_both(&l);
        assert_eq!(lower_residual(&u), 0.0);
        assert_eq!(u[(0, 0)], 6.0);
        assert_eq!(u[(2, 2)], 1.0);
    }

    #[test]
    fn expm_matches_nilpotent_closed_form() {
        let x = Mat::from_row_slice(2, 2, &[0., 1., 0., 0.]);
        let e = expm(&x);
        assert_relative_eq!(e[(0, 1)], 1.0, epsilon = 1e-14);
        assert_relative_eq!(e[(0, 0)], 1.0, epsilon = 1e-14);
        assert_relative_eq!(e[(1, 0)], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn expm_symmetric_agrees_with_pade() {
        let x = Mat::from_row_slice(2, 2, &[0.3, 0.7, 0.7, -0.3]);
        let a = expm(&x);
        let b = expm_symmetric(&x);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn kron_implements_two_sided_conjugation() {
        let a = Mat::from_row_slice(2, 2, &[1., 2., 0., 1.]);
        let x = Mat::from_row_slice(2, 2, &[3., -1., 4., 2.]);
        let b = Mat::from_row_slice(2, 2, &[0., 1., 1., 1.]);
        let lhs = kron(&a, &b) * vec_rowmajor(&x);
        let rhs = vec_rowmajor(&(&a * &x * b.transpose()));
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn rank_gap_detection() {
        let m = Mat::from_diagonal(&Vec64::from_vec(vec![1.0, 1e-8]));
        assert!(rank_with_gap(&m, 1e-8).is_err());
        let m = Mat::from_diagonal(&Vec64::from_vec(vec![1.0, 1e-12]));
        assert_eq!(rank_with_gap(&m, 1e-8).unwrap(), 1);
    }
}
