//! JSON problem configuration.
//!
//! ```json
//! {
//!   "analysis": "static",
//!   "basis": "dq",
//!   "grid": { "family": "lobatto", "n_total_x": 13, "n_total_y": 13 },
//!   "bc": { "x": "ss", "y": "ss" },
//!   "stiffness": { "d11": 1, "d12": 0.3, "d16": 0, "d22": 1, "d26": 0, "d66": 0.35 },
//!   "geometry": { "a": 1, "beta": 1, "rho_h": 1 },
//!   "load": { "q": 1 },
//!   "path": "auto"
//! }
//! ```
//!
//! Unknown keys are rejected. A `"custom"` grid family takes explicit
//! `nodes_x` / `nodes_y` arrays instead of node counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{self, Grid};
use crate::plate::{AnalysisKind, PlateGeometry, SolvePath};
use crate::quadrature::{Basis, BcKind};
use crate::stiffness::Stiffness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalysisName {
    Static,
    Vibration,
    Buckling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisName {
    Dq,
    Hdq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFamily {
    Uniform,
    Lobatto,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BcName {
    Ss,
    Clamped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathName {
    Full,
    Reduced,
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub family: GridFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_total_x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_total_y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_y: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcConfig {
    pub x: BcName,
    pub y: BcName,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StiffnessConfig {
    pub d11: f64,
    pub d12: f64,
    pub d16: f64,
    pub d22: f64,
    pub d26: f64,
    pub d66: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub a: f64,
    pub beta: f64,
    pub rho_h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub analysis: AnalysisName,
    pub basis: BasisName,
    pub grid: GridConfig,
    pub bc: BcConfig,
    pub stiffness: StiffnessConfig,
    pub geometry: GeometryConfig,
    pub load: LoadConfig,
    #[serde(default)]
    pub path: PathName,
}

/// Validation failure tied to a dotted config field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// A validated configuration, converted to solver types.
#[derive(Debug, Clone)]
pub struct Problem {
    pub basis: Basis,
    pub grid_x: Grid,
    pub grid_y: Grid,
    pub bc_x: BcKind,
    pub bc_y: BcKind,
    pub stiffness: Stiffness,
    pub geometry: PlateGeometry,
    pub analysis: AnalysisKind,
    pub path: SolvePath,
}

pub fn parse_config(text: &str) -> Result<ProblemConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::new("", format!("invalid config: {e}")))
}

/// Pretty JSON echo; parses back to an identical config.
pub fn echo_config(cfg: &ProblemConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("config serializes")
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::new(field, format!("must be positive and finite, got {v}")))
    }
}

fn build_grid(
    family: GridFamily,
    count: Option<usize>,
    nodes: &Option<Vec<f64>>,
    axis: &str,
) -> Result<Grid, ConfigError> {
    let count_field = format!("grid.n_total_{axis}");
    let nodes_field = format!("grid.nodes_{axis}");
    let generated = |f: fn(usize) -> crate::Result<Grid>| {
        if nodes.is_some() {
            return Err(ConfigError::new(&nodes_field, "only allowed with family \"custom\""));
        }
        let n = count.ok_or_else(|| ConfigError::new(&count_field, "required"))?;
        if n < 5 {
            return Err(ConfigError::new(
                &count_field,
                format!("need at least 5 nodes (3 interior), got {n}"),
            ));
        }
        f(n).map_err(|e| ConfigError::new(&count_field, e.to_string()))
    };
    match family {
        GridFamily::Uniform => generated(grid::uniform_nodes),
        GridFamily::Lobatto => generated(grid::chebyshev_gauss_lobatto_nodes),
        GridFamily::Custom => {
            if count.is_some() {
                return Err(ConfigError::new(&count_field, "not allowed with family \"custom\""));
            }
            let nodes = nodes.as_ref().ok_or_else(|| ConfigError::new(&nodes_field, "required"))?;
            if nodes.len() < 5 {
                return Err(ConfigError::new(
                    &nodes_field,
                    format!("need at least 5 nodes (3 interior), got {}", nodes.len()),
                ));
            }
            Grid::from_nodes(nodes.clone()).map_err(|e| ConfigError::new(&nodes_field, e.to_string()))
        }
    }
}

impl ProblemConfig {
    /// Checks every field and converts to solver inputs.
    pub fn validate(&self) -> Result<Problem, ConfigError> {
        let g = &self.grid;
        let grid_x = build_grid(g.family, g.n_total_x, &g.nodes_x, "x")?;
        let grid_y = build_grid(g.family, g.n_total_y, &g.nodes_y, "y")?;

        let s = &self.stiffness;
        for (name, v) in [
            ("d11", s.d11),
            ("d12", s.d12),
            ("d16", s.d16),
            ("d22", s.d22),
            ("d26", s.d26),
            ("d66", s.d66),
        ] {
            if !v.is_finite() {
                return Err(ConfigError::new(format!("stiffness.{name}"), "must be finite"));
            }
        }
        positive("stiffness.d11", s.d11)?;
        positive("stiffness.d22", s.d22)?;
        positive("stiffness.d66", s.d66)?;
        let stiffness = Stiffness::new(s.d11, s.d12, s.d16, s.d22, s.d26, s.d66)
            .map_err(|e| ConfigError::new("stiffness", e.to_string()))?;

        let geo = &self.geometry;
        let geometry = PlateGeometry {
            a: positive("geometry.a", geo.a)?,
            beta: positive("geometry.beta", geo.beta)?,
            rho_h: positive("geometry.rho_h", geo.rho_h)?,
        };

        let count = |load: &LoadConfig| -> Result<usize, ConfigError> {
            if load.q.is_some() {
                return Err(ConfigError::new("load.q", "only allowed for static analysis"));
            }
            match load.count {
                Some(c) if c >= 1 => Ok(c),
                Some(c) => Err(ConfigError::new("load.count", format!("must be at least 1, got {c}"))),
                None => Err(ConfigError::new("load.count", "required")),
            }
        };
        let analysis = match self.analysis {
            AnalysisName::Static => {
                if self.load.count.is_some() {
                    return Err(ConfigError::new("load.count", "not allowed for static analysis"));
                }
                let q = self.load.q.ok_or_else(|| ConfigError::new("load.q", "required"))?;
                if !q.is_finite() {
                    return Err(ConfigError::new("load.q", "must be finite"));
                }
                AnalysisKind::Static { q }
            }
            AnalysisName::Vibration => AnalysisKind::Vibration { count: count(&self.load)? },
            AnalysisName::Buckling => AnalysisKind::Buckling { count: count(&self.load)? },
        };
        if let AnalysisKind::Vibration { count } | AnalysisKind::Buckling { count } = analysis {
            let dof = grid_x.interior_len() * grid_y.interior_len();
            if count > dof {
                return Err(ConfigError::new(
                    "load.count",
                    format!("exceeds the {dof} interior unknowns"),
                ));
            }
        }

        let bc = |b: BcName| match b {
            BcName::Ss => BcKind::SimplySupported,
            BcName::Clamped => BcKind::Clamped,
        };
        Ok(Problem {
            basis: match self.basis {
                BasisName::Dq => Basis::PolynomialDq,
                BasisName::Hdq => Basis::HarmonicHdq,
            },
            grid_x,
            grid_y,
            bc_x: bc(self.bc.x),
            bc_y: bc(self.bc.y),
            stiffness,
            geometry,
            analysis,
            path: match self.path {
                PathName::Full => SolvePath::Full,
                PathName::Reduced => SolvePath::Reduced,
                PathName::Auto => SolvePath::Auto,
            },
        })
    }

    /// Copy with both node counts set to `n_total`; `None` for custom grids.
    pub fn with_size(&self, n_total: usize) -> Option<ProblemConfig> {
        if self.grid.family == GridFamily::Custom {
            return None;
        }
        let mut out = self.clone();
        out.grid.n_total_x = Some(n_total);
        out.grid.n_total_y = Some(n_total);
        Some(out)
    }
}
