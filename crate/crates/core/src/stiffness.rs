use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bending stiffnesses of a mid-plane symmetric laminate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stiffness {
    pub d11: f64,
    pub d12: f64,
    pub d16: f64,
    pub d22: f64,
    pub d26: f64,
    pub d66: f64,
}

impl Stiffness {
    /// Validates positivity of the diagonal terms and positive definiteness
    /// of the 3x3 bending matrix.
    pub fn new(d11: f64, d12: f64, d16: f64, d22: f64, d26: f64, d66: f64) -> Result<Self> {
        let s = Self { d11, d12, d16, d22, d26, d66 };
        s.validate()?;
        Ok(s)
    }

    /// Isotropic plate with flexural rigidity `d` and Poisson ratio `nu`.
    pub fn isotropic(d: f64, nu: f64) -> Result<Self> {
        Self::new(d, nu * d, 0.0, d, 0.0, (1.0 - nu) * d / 2.0)
    }

    /// Orthotropic plate (`D16 = D26 = 0`).
    pub fn orthotropic(d11: f64, d12: f64, d22: f64, d66: f64) -> Result<Self> {
        Self::new(d11, d12, 0.0, d22, 0.0, d66)
    }

    pub fn bending_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.d11, self.d12, self.d16, //
            self.d12, self.d22, self.d26, //
            self.d16, self.d26, self.d66,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("d11", self.d11),
            ("d12", self.d12),
            ("d16", self.d16),
            ("d22", self.d22),
            ("d26", self.d26),
            ("d66", self.d66),
        ];
        if let Some((name, _)) = named.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidStiffness(format!("{name} must be finite")));
        }
        for (name, v) in [("d11", self.d11), ("d22", self.d22), ("d66", self.d66)] {
            if v <= 0.0 {
                return Err(Error::InvalidStiffness(format!("{name} must be positive, got {v}")));
            }
        }
        if self.bending_matrix().cholesky().is_none() {
            return Err(Error::InvalidStiffness(
                "bending stiffness matrix is not positive definite".into(),
            ));
        }
        Ok(())
    }

    pub fn is_orthotropic(&self) -> bool {
        self.d16 == 0.0 && self.d26 == 0.0
    }
}
