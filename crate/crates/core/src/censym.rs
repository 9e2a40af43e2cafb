//! Centrosymmetric structure: classification, the half-size block split and
//! the reduced solve / eigen paths built on it.
//!
//! A centrosymmetric `X` commutes with the exchange matrix `J`, so in the
//! orthogonal basis of mirror-symmetric and mirror-antisymmetric vectors it is
//! block diagonal. The reduced path works on the two diagonal blocks only.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Default classification tolerance, relative to the largest entry magnitude.
pub const CLASSIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureClass {
    Centro,
    SkewCentro,
    Neither,
}

/// Anti-diagonal identity of size `n`.
pub fn exchange_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { 1.0 } else { 0.0 }))
}

/// Classifies `x` by comparing each entry with its point reflection
/// `x[N-1-i, N-1-j]`.
///
/// `tol` is relative to the largest entry magnitude. The zero matrix is
/// reported as [`StructureClass::Centro`].
pub fn classify(x: &DMatrix<f64>, tol: f64) -> Result<StructureClass> {
    if !x.is_square() {
        return Err(Error::ShapeError(format!("{}x{} is not square", x.nrows(), x.ncols())));
    }
    let n = x.nrows();
    let threshold = tol * x.amax();
    let mut centro = true;
    let mut skew = true;
    for i in 0..n {
        for j in 0..n {
            let a = x[(i, j)];
            let r = x[(n - 1 - i, n - 1 - j)];
            centro &= (r - a).abs() <= threshold;
            skew &= (r + a).abs() <= threshold;
            if !centro && !skew {
                return Ok(StructureClass::Neither);
            }
        }
    }
    Ok(if centro {
        StructureClass::Centro
    } else {
        StructureClass::SkewCentro
    })
}

/// Orthogonal basis whose first `ceil(n/2)` columns are mirror-symmetric and
/// whose remaining `floor(n/2)` columns are mirror-antisymmetric.
pub fn build_symmetry_basis(n: usize) -> Result<DMatrix<f64>> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    let half = n / 2;
    let sym = n - half;
    let mut q = DMatrix::zeros(n, n);
    for p in 0..half {
        q[(p, p)] = FRAC_1_SQRT_2;
        q[(n - 1 - p, p)] = FRAC_1_SQRT_2;
        q[(p, sym + p)] = FRAC_1_SQRT_2;
        q[(n - 1 - p, sym + p)] = -FRAC_1_SQRT_2;
    }
    if n % 2 == 1 {
        q[(half, half)] = 1.0;
    }
    Ok(q)
}

/// The two diagonal blocks of `Qᵀ X Q` for the basis of
/// [`build_symmetry_basis`].
#[derive(Debug, Clone)]
pub struct SymmetrySplit {
    size: usize,
    /// Symmetric-subspace block, `ceil(N/2)` square.
    pub sym: DMatrix<f64>,
    /// Antisymmetric-subspace block, `floor(N/2)` square.
    pub anti: DMatrix<f64>,
    /// Largest magnitude in the off-diagonal coupling blocks.
    pub offblock_norm: f64,
}

impl SymmetrySplit {
    /// Size `N` of the original matrix.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Explicit orthogonal basis `Q`.
    pub fn basis(&self) -> DMatrix<f64> {
        build_symmetry_basis(self.size).expect("split size is at least 1")
    }

    /// Number of stored block entries.
    pub fn stored_entries(&self) -> usize {
        self.sym.len() + self.anti.len()
    }

    /// Coordinates of `f` in the symmetric and antisymmetric subspaces.
    pub fn project(&self, f: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        project(f)
    }

    /// Inverse of [`SymmetrySplit::project`].
    pub fn lift(&self, sym: &DVector<f64>, anti: &DVector<f64>) -> DVector<f64> {
        lift(sym, anti, self.size)
    }
}

/// Coordinates of `f` in the symmetric and antisymmetric subspaces of the
/// basis from [`build_symmetry_basis`].
pub fn project(f: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
    let n = f.len();
    let half = n / 2;
    let mut s = DVector::zeros(n - half);
    let mut t = DVector::zeros(half);
    for p in 0..half {
        let (a, b) = (f[p], f[n - 1 - p]);
        s[p] = (a + b) * FRAC_1_SQRT_2;
        t[p] = (a - b) * FRAC_1_SQRT_2;
    }
    if n % 2 == 1 {
        s[half] = f[half];
    }
    (s, t)
}

/// Recombines subspace coordinates into a length-`n` vector.
pub fn lift(s: &DVector<f64>, t: &DVector<f64>, n: usize) -> DVector<f64> {
    let half = n / 2;
    let mut w = DVector::zeros(n);
    for p in 0..half {
        w[p] = (s[p] + t[p]) * FRAC_1_SQRT_2;
        w[n - 1 - p] = (s[p] - t[p]) * FRAC_1_SQRT_2;
    }
    if n % 2 == 1 {
        w[half] = s[half];
    }
    w
}

/// Forms the diagonal and off-diagonal blocks of `Qᵀ X Q` by index
/// arithmetic, in `O(N²)` without materializing `Q`.
fn split_blocks(x: &DMatrix<f64>) -> SymmetrySplit {
    let n = x.nrows();
    let half = n / 2;
    let odd = n % 2 == 1;
    let c = half;
    let mut sym = DMatrix::zeros(n - half, n - half);
    let mut anti = DMatrix::zeros(half, half);
    let mut off = 0.0_f64;
    for p in 0..half {
        let pr = n - 1 - p;
        for q in 0..half {
            let qr = n - 1 - q;
            let (a, b, c_, d) = (x[(p, q)], x[(p, qr)], x[(pr, q)], x[(pr, qr)]);
            sym[(p, q)] = 0.5 * (a + b + c_ + d);
            anti[(p, q)] = 0.5 * (a - b - c_ + d);
            off = off
                .max((0.5 * (a - b + c_ - d)).abs())
                .max((0.5 * (a + b - c_ - d)).abs());
        }
        if odd {
            sym[(p, c)] = (x[(p, c)] + x[(pr, c)]) * FRAC_1_SQRT_2;
            sym[(c, p)] = (x[(c, p)] + x[(c, pr)]) * FRAC_1_SQRT_2;
            off = off
                .max(((x[(p, c)] - x[(pr, c)]) * FRAC_1_SQRT_2).abs())
                .max(((x[(c, p)] - x[(c, pr)]) * FRAC_1_SQRT_2).abs());
        }
    }
    if odd {
        sym[(c, c)] = x[(c, c)];
    }
    SymmetrySplit {
        size: n,
        sym,
        anti,
        offblock_norm: off,
    }
}

/// Splits a centrosymmetric matrix into its two half-size diagonal blocks.
pub fn split_centro(x: &DMatrix<f64>) -> Result<SymmetrySplit> {
    if classify(x, CLASSIFY_TOL)? != StructureClass::Centro {
        return Err(Error::NotCentrosymmetric);
    }
    if x.nrows() == 0 {
        return Err(Error::InvalidSize(0));
    }
    Ok(split_blocks(x))
}

/// Solves `X w = f` through the two half-size block systems.
pub fn reduced_solve(x: &DMatrix<f64>, f: &DVector<f64>) -> Result<DVector<f64>> {
    let split = split_centro(x)?;
    solve_split(&split, f)
}

/// Block solve on an existing split.
pub fn solve_split(split: &SymmetrySplit, f: &DVector<f64>) -> Result<DVector<f64>> {
    if f.len() != split.size {
        return Err(Error::ShapeError(format!(
            "rhs length {} does not match matrix size {}",
            f.len(),
            split.size
        )));
    }
    let (fs, ft) = split.project(f);
    let ys = linalg::lu_solve(&split.sym, &fs)?;
    let yt = linalg::lu_solve(&split.anti, &ft)?;
    Ok(split.lift(&ys, &yt))
}

/// Mirror parity of an eigenvector produced by the reduced path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    /// Present for real eigenvalues only.
    pub vector: Option<DVector<f64>>,
    pub parity: Parity,
}

/// Eigenvalues of both blocks, tagged by parity.
pub fn split_eigenvalues(split: &SymmetrySplit) -> Result<Vec<(Complex64, Parity)>> {
    let mut out: Vec<(Complex64, Parity)> = linalg::eigenvalues(&split.sym)?
        .into_iter()
        .map(|z| (z, Parity::Symmetric))
        .collect();
    out.extend(
        linalg::eigenvalues(&split.anti)?
            .into_iter()
            .map(|z| (z, Parity::Antisymmetric)),
    );
    Ok(out)
}

/// Eigenvector of the full matrix for a real eigenvalue of one block.
pub fn lifted_eigenvector(split: &SymmetrySplit, value: f64, parity: Parity) -> Result<DVector<f64>> {
    let n = split.size;
    let (block, zero_len) = match parity {
        Parity::Symmetric => (&split.sym, n / 2),
        Parity::Antisymmetric => (&split.anti, n - n / 2),
    };
    let y = linalg::inverse_iteration(block, value)?;
    let z = DVector::zeros(zero_len);
    Ok(match parity {
        Parity::Symmetric => split.lift(&y, &z),
        Parity::Antisymmetric => split.lift(&z, &y),
    })
}

/// Eigenpairs of a centrosymmetric matrix from its two blocks.
pub fn reduced_eig(x: &DMatrix<f64>) -> Result<Vec<EigenPair>> {
    let split = split_centro(x)?;
    split_eigenvalues(&split)?
        .into_iter()
        .map(|(value, parity)| {
            let vector = if linalg::is_real(value) {
                Some(lifted_eigenvector(&split, value.re, parity)?)
            } else {
                None
            };
            Ok(EigenPair { value, vector, parity })
        })
        .collect()
}

/// Cubic-cost ratio of the reduced path to the full path for an even split,
/// `2 (N/2)³ / N³`.
pub fn flop_ratio_model(n: usize) -> f64 {
    let half = (n / 2) as f64;
    2.0 * half.powi(3) / (n as f64).powi(3)
}

/// Entries kept by the reduced path: `ceil(N/2)² + floor(N/2)²`.
pub fn reduced_storage(n: usize) -> usize {
    let half = n / 2;
    (n - half).pow(2) + half.pow(2)
}
