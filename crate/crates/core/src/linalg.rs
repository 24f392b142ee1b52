//! Complex matrix helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for equality of complex matrices.
pub const EQ_TOL: f64 = 1e-9;
/// Relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn scalar(value: Complex64) -> CMatrix {
    CMatrix::from_element(1, 1, value)
}

/// `a ⊗ b` with `a` as the outer factor.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise equality within `tol`; shapes must agree.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Numerical rank with a relative singular-value threshold.
pub fn rank(m: &CMatrix) -> usize {
    let sv = singular_values(m);
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * top.max(1.0)).count()
}

pub fn is_invertible(m: &CMatrix) -> bool {
    m.is_square() && rank(m) == m.nrows()
}

pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    if m.nrows() == 0 && m.ncols() == 0 {
        return Some(m.clone());
    }
    if !is_invertible(m) {
        return None;
    }
    m.clone().try_inverse()
}

/// Orthonormal basis of the null space, one vector per column.
pub fn nullspace(m: &CMatrix) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(n);
    }
    // Pad to at least square so the SVD exposes all of the domain.
    let padded = if m.nrows() < n {
        let mut p = zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = RANK_TOL * top.max(1.0);
    let null_rows: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= threshold)
        .collect();
    let mut basis = zeros(n, null_rows.len());
    for (j, &i) in null_rows.iter().enumerate() {
        let row = v_t.row(i).adjoint();
        basis.set_column(j, &row);
    }
    basis
}

/// Columns of `m` stacked into a vector (column-major).
pub fn vectorize(m: &CMatrix) -> Vec<Complex64> {
    m.iter().copied().collect()
}

pub fn unvectorize(v: &[Complex64], rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v)
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    singular_values(m).into_iter().fold(0.0, f64::max)
}

/// Permutation matrix sending basis vector `j` to `perm[j]`.
pub fn permutation_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut p = zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        p[(i, j)] = c(1.0, 0.0);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_block_diag_shapes() {
        let a = identity(2);
        let b = CMatrix::from_element(3, 1, c(1.0, 0.0));
        assert_eq!(kron(&a, &b).shape(), (6, 2));
        assert_eq!(block_diag(&[a, b]).shape(), (5, 3));
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = CMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let ns = nullspace(&m);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&m * &ns)) < 1e-12);
    }

    #[test]
    fn rank_and_inverse() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        assert_eq!(rank(&m), 1);
        assert!(inverse(&m).is_none());
        let inv = inverse(&identity(3)).unwrap();
        assert!(approx_eq(&inv, &identity(3), EQ_TOL));
        assert!(inverse(&zeros(0, 0)).is_some());
    }
}
