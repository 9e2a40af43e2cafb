//! Row-stacking vectorization and Kronecker assembly.
//!
//! With `vec` stacking rows, `vec(A X B) = (A ⊗ Bᵀ) vec(X)`. The convention is
//! fixed; column stacking would transpose every assembled operator.

use nalgebra::{DMatrix, DVector};

/// Concatenates the rows of `x`: entry `(i, j)` lands at `i * ncols + j`.
pub fn vec_rows(x: &DMatrix<f64>) -> DVector<f64> {
    let (p, q) = x.shape();
    DVector::from_fn(p * q, |k, _| x[(k / q, k % q)])
}

/// Inverse of [`vec_rows`] for a `rows x cols` matrix.
pub fn unvec_rows(v: &DVector<f64>, rows: usize, cols: usize) -> DMatrix<f64> {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    DMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Kronecker product: block `(i, j)` is `a[(i, j)] * b`.
pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// The operator on `vec_rows(X)` equivalent to `X ↦ A X B`, i.e. `A ⊗ Bᵀ`.
pub fn assemble_two_sided(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    kron(a, &b.transpose())
}

/// The operator on `vec_rows(X)` equivalent to `X ↦ A X + X B`, i.e.
/// `A ⊗ I_n + I_m ⊗ Bᵀ`.
pub fn assemble_sum(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(a.is_square() && b.is_square(), "assemble_sum needs square factors");
    let m = a.nrows();
    let n = b.nrows();
    kron(a, &DMatrix::identity(n, n)) + kron(&DMatrix::identity(m, m), &b.transpose())
}
