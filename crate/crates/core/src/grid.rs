//! Collocation grids on the unit interval.
//!
//! Every grid carries both endpoints; the interior nodes are the unknowns of
//! the boundary-modified quadrature operators.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default tolerance for [`is_symmetric`]. Nodes are closed-form values, so
/// only rounding noise is expected.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Ordered nodes on `[0, 1]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
}

impl Grid {
    /// Validates an explicit node list: at least 3 nodes, strictly
    /// increasing, first node 0 and last node 1.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::InvalidGridSize(nodes.len()));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("nodes must be finite".into()));
        }
        if nodes[0] != 0.0 || nodes[nodes.len() - 1] != 1.0 {
            return Err(Error::InvalidGrid("endpoints must be exactly 0 and 1".into()));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("nodes must be strictly increasing".into()));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Total node count, endpoints included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of interior nodes, `len() - 2`.
    pub fn interior_len(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn interior_nodes(&self) -> &[f64] {
        &self.nodes[1..self.nodes.len() - 1]
    }
}

/// Equally spaced nodes `i / (n_total - 1)`.
pub fn uniform_nodes(n_total: usize) -> Result<Grid> {
    if n_total < 3 {
        return Err(Error::InvalidGridSize(n_total));
    }
    let h = (n_total - 1) as f64;
    let mut nodes: Vec<f64> = (0..n_total).map(|i| i as f64 / h).collect();
    nodes[n_total - 1] = 1.0;
    Ok(Grid { nodes })
}

/// Chebyshev–Gauss–Lobatto nodes mapped to `[0, 1]`:
/// `(1 - cos(i pi / (n_total - 1))) / 2`.
///
/// Mirror pairs are computed from the smaller index and reflected, so the
/// grid is symmetric to the last bit.
pub fn chebyshev_gauss_lobatto_nodes(n_total: usize) -> Result<Grid> {
    if n_total < 3 {
        return Err(Error::InvalidGridSize(n_total));
    }
    let h = (n_total - 1) as f64;
    let mut nodes = vec![0.0; n_total];
    for i in 0..n_total {
        let j = n_total - 1 - i;
        if i <= j {
            // sin^2 form avoids cancellation near the left endpoint
            let s = (i as f64 * PI / (2.0 * h)).sin();
            nodes[i] = s * s;
        } else {
            nodes[i] = 1.0 - nodes[j];
        }
    }
    if n_total % 2 == 1 {
        nodes[n_total / 2] = 0.5;
    }
    nodes[0] = 0.0;
    nodes[n_total - 1] = 1.0;
    Ok(Grid { nodes })
}

/// True when `x_i + x_{N-1-i}` equals 1 within `tol` for every node.
pub fn is_symmetric(grid: &Grid, tol: f64) -> bool {
    let x = grid.nodes();
    let n = x.len();
    (0..n).all(|i| (x[i] + x[n - 1 - i] - 1.0).abs() <= tol)
}
