//! Differential quadrature (DQ) and harmonic differential quadrature (HDQ)
//! solvers for static deflection, free vibration and buckling of mid-plane
//! symmetric anisotropic rectangular plates.
//!
//! Derivatives are written in matrix form on the interior grid, assembled
//! with Kronecker products, and solved either densely or through the
//! centrosymmetric split, which halves storage and quarters cubic cost.

pub mod censym;
pub mod cli;
pub mod error;
pub mod grid;
pub mod kron;
pub mod linalg;
pub mod oracle;
pub mod plate;
pub mod quadrature;
pub mod stiffness;

pub use error::{Error, Result};
pub use grid::Grid;
pub use plate::{AnalysisKind, AssembledSystem, PlateGeometry, SolutionReport, SolvePath};
pub use quadrature::{Basis, BcKind, DirectionalWeights};
pub use stiffness::Stiffness;
