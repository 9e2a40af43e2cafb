//! Dense solve and eigen helpers shared by the full and reduced paths.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative imaginary-part threshold below which an eigenvalue counts as real.
pub const REALNESS_TOL: f64 = 1e-8;

const SCHUR_MAX_ITER: usize = 10_000;

/// LU solve with a pivot-ratio singularity check.
pub fn lu_solve(m: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let n = m.nrows();
    if !m.is_square() || b.len() != n {
        return Err(Error::ShapeError(format!(
            "cannot solve {}x{} system with rhs of length {}",
            m.nrows(),
            m.ncols(),
            b.len()
        )));
    }
    if n == 0 {
        return Ok(DVector::zeros(0));
    }
    let lu = m.clone().lu();
    let u = lu.u();
    let pivots = u.diagonal();
    let max = pivots.amax();
    let min = pivots.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    if !(max > 0.0) || min <= (n as f64) * f64::EPSILON * max {
        return Err(Error::SingularSystem(format!(
            "pivot ratio {:.3e} on a {n}x{n} system",
            if max > 0.0 { min / max } else { 0.0 }
        )));
    }
    lu.solve(b)
        .ok_or_else(|| Error::SingularSystem(format!("{n}x{n} system")))
}

/// Solves `m X = rhs` for a matrix right side.
pub fn lu_solve_matrix(m: &DMatrix<f64>, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::zeros(rhs.nrows(), rhs.ncols());
    for j in 0..rhs.ncols() {
        let col = lu_solve(m, &rhs.column(j).into_owned())?;
        out.set_column(j, &col);
    }
    Ok(out)
}

/// All eigenvalues of a real square matrix via the real Schur form.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::ShapeError(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or(Error::EigenSolverFailed)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// True when the imaginary part is negligible relative to the magnitude.
pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= REALNESS_TOL * z.norm()
}

/// Real parts of the eigenvalues that pass [`is_real`] and are positive,
/// sorted ascending.
pub fn real_positive_ascending(values: &[Complex64]) -> Vec<f64> {
    let mut out: Vec<f64> = values
        .iter()
        .filter(|z| is_real(**z) && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

/// Eigenvector for a (real) eigenvalue estimate by shifted inverse iteration.
pub fn inverse_iteration(m: &DMatrix<f64>, lambda: f64) -> Result<DVector<f64>> {
    let n = m.nrows();
    let scale = m.amax().max(lambda.abs()).max(1.0);
    let mut shift = lambda + 1e-10 * scale;
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i * 7 + 3) % 11) as f64);
    v /= v.norm();
    let mut shifted = m.clone();
    for attempt in 0..4 {
        shifted.copy_from(m);
        for i in 0..n {
            shifted[(i, i)] -= shift;
        }
        let lu = shifted.clone().lu();
        let mut ok = true;
        for _ in 0..3 {
            match lu.solve(&v) {
                Some(next) if next.iter().all(|x| x.is_finite()) && next.norm() > 0.0 => {
                    v = &next / next.norm();
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(v);
        }
        shift = lambda + 1e-10 * scale * 10f64.powi(attempt + 1);
    }
    Err(Error::SingularSystem("inverse iteration failed".into()))
}

/// `|| m v - lambda v || / (|lambda| ||v||)`, or the absolute residual when
/// `lambda` is zero.
pub fn eigen_residual(m: &DMatrix<f64>, lambda: f64, v: &DVector<f64>) -> f64 {
    let r = (m * v - v * lambda).norm();
    let denom = lambda.abs() * v.norm();
    if denom > 0.0 {
        r / denom
    } else {
        r
    }
}
