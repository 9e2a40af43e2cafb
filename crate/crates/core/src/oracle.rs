//! Closed-form Navier solutions for simply supported orthotropic plates.
//!
//! Pure series and formula evaluations; nothing here touches the quadrature
//! or plate solvers.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::stiffness::Stiffness;

/// Default number of terms per direction for the static series.
pub const DEFAULT_TERMS: usize = 101;

#[derive(Debug, Clone, Copy)]
pub struct NavierConfig {
    stiffness: Stiffness,
    beta: f64,
    terms: usize,
}

impl NavierConfig {
    /// Requires `D16 = D26 = 0`, `beta > 0` and `terms >= 25`.
    pub fn new(stiffness: Stiffness, beta: f64, terms: usize) -> Result<Self> {
        if !stiffness.is_orthotropic() {
            return Err(Error::InvalidStiffness(
                "Navier series needs D16 = D26 = 0".into(),
            ));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidGeometry(format!("beta must be positive, got {beta}")));
        }
        if terms < 25 {
            return Err(Error::InvalidAnalysis(format!(
                "series truncation must be at least 25, got {terms}"
            )));
        }
        Ok(Self { stiffness, beta, terms })
    }

    pub fn stiffness(&self) -> &Stiffness {
        &self.stiffness
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// `D11 m⁴ + 2 (D12 + 2 D66) m² n² β² + D22 n⁴ β⁴`.
    fn modal_stiffness(&self, m: f64, n: f64) -> f64 {
        let s = &self.stiffness;
        let b2 = self.beta * self.beta;
        s.d11 * m.powi(4) + 2.0 * (s.d12 + 2.0 * s.d66) * m * m * n * n * b2 + s.d22 * n.powi(4) * b2 * b2
    }
}

/// Center deflection under uniform pressure `q`, summing odd modes up to
/// `cfg.terms()` in each direction.
pub fn navier_static_center(cfg: &NavierConfig, q: f64, a: f64) -> f64 {
    let mut sum = 0.0;
    for m in (1..=cfg.terms).step_by(2) {
        // sin(m pi / 2) for odd m
        let sm = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        for n in (1..=cfg.terms).step_by(2) {
            let sn = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let (mf, nf) = (m as f64, n as f64);
            sum += sm * sn / (mf * nf * cfg.modal_stiffness(mf, nf));
        }
    }
    16.0 * q * a.powi(4) / PI.powi(6) * sum
}

/// Natural frequency `ω_mn` (rad/time) of mode `(m, n)`.
pub fn navier_frequency(cfg: &NavierConfig, m: usize, n: usize, rho_h: f64, a: f64) -> f64 {
    let k = cfg.modal_stiffness(m as f64, n as f64);
    PI * PI / (a * a) * (k / rho_h).sqrt()
}

/// Critical biaxial compression `N̄ = N_x = N_y`, minimized over
/// `1 <= m, n <= search_limit`.
pub fn navier_buckling(cfg: &NavierConfig, a: f64, search_limit: usize) -> f64 {
    let b2 = cfg.beta * cfg.beta;
    let mut best = f64::INFINITY;
    for m in 1..=search_limit {
        for n in 1..=search_limit {
            let (mf, nf) = (m as f64, n as f64);
            let load = PI * PI * cfg.modal_stiffness(mf, nf) / (a * a * (mf * mf + nf * nf * b2));
            best = best.min(load);
        }
    }
    best
}
