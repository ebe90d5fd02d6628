//! Dense complex least-squares, rank and null-space helpers on top of
//! nalgebra's SVD.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Minimum-norm least-squares solution of `m x = rhs` with the given
/// rank-decision threshold. Returns `(x, residual, rank)`.
pub fn lstsq(
    m: &DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    rank_tol: f64,
) -> (DVector<Complex64>, f64, usize) {
    if m.ncols() == 0 {
        return (DVector::zeros(0), rhs.norm(), 0);
    }
    let svd = m.clone().svd(true, true);
    let rank = svd.rank(rank_tol);
    let x = svd
        .solve(rhs, rank_tol)
        .expect("SVD solve with computed factors");
    let residual = (m * &x - rhs).norm();
    (x, residual, rank)
}

/// Numerical rank at the threshold.
pub fn rank(m: &DMatrix<Complex64>, sv_tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    svd.rank(sv_tol)
}

/// Number of columns minus numerical rank at the threshold.
pub fn nullity(m: &DMatrix<Complex64>, sv_tol: f64) -> usize {
    m.ncols() - rank(m, sv_tol)
}

/// Orthonormal basis of the numerical null space of `m`.
///
/// The matrix is padded with zero rows up to square so the thin SVD carries
/// all right singular vectors; null vectors are the conjugated rows of `V^H`
/// whose singular value falls below the threshold.
pub fn null_space(m: &DMatrix<Complex64>, sv_tol: f64) -> Vec<DVector<Complex64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("SVD with right singular vectors");
    let mut basis = Vec::new();
    for i in 0..v_t.nrows() {
        let sv = if i < svd.singular_values.len() {
            svd.singular_values[i]
        } else {
            0.0
        };
        if sv <= sv_tol {
            let vec = DVector::from_iterator(cols, v_t.row(i).iter().map(|c| c.conj()));
            basis.push(vec);
        }
    }
    basis
}
