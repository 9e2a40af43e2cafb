//! DQ and HDQ weighting coefficient matrices.
//!
//! Full-grid matrices are built on every node of a [`Grid`]; the
//! boundary-modified operators act on interior values only, with the two
//! boundary conditions of each edge folded into the weights so that the
//! assembled plate system needs no extra boundary equations.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Basis behind the weights: algebraic polynomials (DQ) or harmonic
/// functions (HDQ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    PolynomialDq,
    HarmonicHdq,
}

/// Boundary condition applied at both ends of one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BcKind {
    /// `w = 0` and `w'' = 0`.
    SimplySupported,
    /// `w = 0` and `w' = 0`.
    Clamped,
}

/// Boundary-modified interior operators for first through fourth
/// derivatives along one direction.
#[derive(Debug, Clone)]
pub struct DirectionalWeights {
    pub a1: DMatrix<f64>,
    pub a2: DMatrix<f64>,
    pub a3: DMatrix<f64>,
    pub a4: DMatrix<f64>,
    pub basis: Basis,
    pub bc: BcKind,
    pub grid: Grid,
}

impl DirectionalWeights {
    /// Interior point count `n`.
    pub fn len(&self) -> usize {
        self.a1.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.a1.nrows() == 0
    }
}

fn fill_diagonal_from_rows(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)]).sum();
        a[(i, i)] = -off;
    }
}

/// Polynomial DQ first-derivative weights on arbitrary distinct nodes.
pub fn dq_first_order_nodes(x: &[f64]) -> Result<DMatrix<f64>> {
    let n = x.len();
    let m: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&k| k != i).map(|k| x[i] - x[k]).product())
        .collect();
    if m.iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::DegenerateGrid("duplicate nodes".into()));
    }
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[(i, j)] = m[i] / ((x[i] - x[j]) * m[j]);
            }
        }
    }
    fill_diagonal_from_rows(&mut a);
    Ok(a)
}

/// Polynomial DQ first-derivative matrix on the full grid.
pub fn dq_first_order_full(grid: &Grid) -> Result<DMatrix<f64>> {
    dq_first_order_nodes(grid.nodes())
}

const SINE_FLOOR: f64 = 1e-12;

/// Harmonic DQ first-derivative weights on arbitrary nodes in `[0, 1]`.
///
/// Uses the half-angle sine products `sin(pi (x_i - x_k) / 2)`; the basis has
/// period 2 on the unit interval.
pub fn hdq_first_order_nodes(x: &[f64]) -> Result<DMatrix<f64>> {
    let n = x.len();
    let half_sin = |d: f64| (FRAC_PI_2 * d).sin();
    for i in 0..n {
        for k in i + 1..n {
            if !(half_sin(x[i] - x[k]).abs() > SINE_FLOOR) {
                return Err(Error::DegenerateGrid(format!(
                    "sine factor vanishes for nodes {} and {}",
                    x[i], x[k]
                )));
            }
        }
    }
    let p: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&k| k != i).map(|k| half_sin(x[i] - x[k])).product())
        .collect();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[(i, j)] = FRAC_PI_2 * p[i] / (p[j] * half_sin(x[i] - x[j]));
            }
        }
    }
    fill_diagonal_from_rows(&mut a);
    Ok(a)
}

/// Harmonic DQ first-derivative matrix on the full grid.
pub fn hdq_first_order_full(grid: &Grid) -> Result<DMatrix<f64>> {
    hdq_first_order_nodes(grid.nodes())
}

/// First-order weights for the requested basis.
pub fn first_order_full(grid: &Grid, basis: Basis) -> Result<DMatrix<f64>> {
    match basis {
        Basis::PolynomialDq => dq_first_order_full(grid),
        Basis::HarmonicHdq => hdq_first_order_full(grid),
    }
}

/// Weights for derivative order 2..=4 as a power of the first-order matrix.
pub fn higher_order_full(a1: &DMatrix<f64>, order: usize) -> Result<DMatrix<f64>> {
    if !(2..=4).contains(&order) {
        return Err(Error::InvalidOrder(order));
    }
    if !a1.is_square() {
        return Err(Error::ShapeError(format!(
            "first-order matrix is {}x{}",
            a1.nrows(),
            a1.ncols()
        )));
    }
    let mut out = a1 * a1;
    for _ in 2..order {
        out = &out * a1;
    }
    Ok(out)
}

fn interior(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows() - 2;
    m.view((1, 1), (n, n)).into_owned()
}

/// Folds `w = 0` and `w'' = 0` at both ends into interior blocks of the
/// full-grid first-order matrix, returning `[A, B, C, D]` for orders 1..=4.
///
/// `w = 0` drops the boundary columns; orders 3 and 4 are built on the
/// interior second-derivative block because `w''` vanishes at the ends.
/// No minimum interior size is enforced here.
pub fn simply_supported_blocks(a1_full: &DMatrix<f64>) -> [DMatrix<f64>; 4] {
    let a = interior(a1_full);
    let b = interior(&(a1_full * a1_full));
    let c = &a * &b;
    let d = &b * &b;
    [a, b, c, d]
}

/// Values and first four derivatives of the clamped shape factor at `x`.
///
/// The factor vanishes with zero slope at both ends: `x²(1-x)²` for the
/// polynomial basis, `sin²(πx)` for the harmonic basis.
fn clamped_factor(basis: Basis, x: f64) -> [f64; 5] {
    match basis {
        Basis::PolynomialDq => {
            let x2 = x * x;
            [
                x2 * (1.0 - x) * (1.0 - x),
                2.0 * x - 6.0 * x2 + 4.0 * x2 * x,
                2.0 - 12.0 * x + 12.0 * x2,
                -12.0 + 24.0 * x,
                24.0,
            ]
        }
        Basis::HarmonicHdq => {
            let (s, c) = (2.0 * PI * x).sin_cos();
            let p = PI;
            [
                (p * x).sin().powi(2),
                p * s,
                2.0 * p * p * c,
                -4.0 * p.powi(3) * s,
                -8.0 * p.powi(4) * c,
            ]
        }
    }
}

/// Clamped interior operators `[A, B, C, D]` for orders 1..=4.
///
/// Interior values are interpolated as `φ(x) r(x)`, where `φ` is the clamped
/// shape factor and `r` interpolates `w_i / φ(x_i)` on the interior nodes
/// with the same basis. The interpolant satisfies `w = w' = 0` at both ends
/// by construction, and Leibniz's rule gives
/// `Dₖ = Σⱼ C(k, j) diag(φ⁽ᵏ⁻ʲ⁾) Eʲ diag(1/φ)` with `E` the first-order
/// weights on the interior nodes.
pub fn clamped_blocks(interior_nodes: &[f64], basis: Basis) -> Result<[DMatrix<f64>; 4]> {
    let n = interior_nodes.len();
    let e = match basis {
        Basis::PolynomialDq => dq_first_order_nodes(interior_nodes)?,
        Basis::HarmonicHdq => hdq_first_order_nodes(interior_nodes)?,
    };
    let factor: Vec<[f64; 5]> = interior_nodes.iter().map(|&x| clamped_factor(basis, x)).collect();
    if factor.iter().any(|f| !(f[0] > 0.0)) {
        return Err(Error::DegenerateGrid("interior node on the boundary".into()));
    }
    let mut powers = vec![DMatrix::<f64>::identity(n, n)];
    for j in 1..=4 {
        powers.push(&powers[j - 1] * &e);
    }
    const BINOM: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    let block = |k: usize| {
        let mut m = DMatrix::zeros(n, n);
        for j in 0..=k {
            let mut term = powers[j].clone();
            for (i, f) in factor.iter().enumerate() {
                term.row_mut(i).scale_mut(BINOM[k][j] * f[k - j]);
            }
            m += term;
        }
        for (col, f) in factor.iter().enumerate() {
            m.column_mut(col).scale_mut(1.0 / f[0]);
        }
        m
    };
    Ok([block(1), block(2), block(3), block(4)])
}

/// Builds the boundary-modified interior operators for one direction.
pub fn apply_boundary_conditions(
    grid: &Grid,
    basis: Basis,
    bc: BcKind,
) -> Result<DirectionalWeights> {
    let n = grid.interior_len();
    if n < 3 {
        return Err(Error::InsufficientInteriorPoints(n));
    }
    let [a1, a2, a3, a4] = match bc {
        BcKind::SimplySupported => simply_supported_blocks(&first_order_full(grid, basis)?),
        BcKind::Clamped => clamped_blocks(grid.interior_nodes(), basis)?,
    };
    Ok(DirectionalWeights {
        a1,
        a2,
        a3,
        a4,
        basis,
        bc,
        grid: grid.clone(),
    })
}
