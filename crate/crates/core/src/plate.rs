//! Anisotropic plate operator assembly and the static, vibration and
//! buckling solves.
//!
//! Unknowns are interior deflections `ŵ` (an `n x m` matrix, rows along x)
//! flattened with [`crate::kron::vec_rows`]. With unit grids in both directions the
//! nondimensional stiffness operator is
//!
//! ```text
//! K = D11 (Dx ⊗ I) + 4 D16 β (Cx ⊗ Ay) + 2 β² (D12 + 2 D66) (Bx ⊗ By)
//!   + 4 D26 β³ (Ax ⊗ Cy) + D22 β⁴ (I ⊗ Dy)
//! ```
//!
//! and the in-plane load operator is `G = Bx ⊗ I + β² (I ⊗ By)`. The three
//! analyses solve `K w = q a⁴ 1`, `K w = ω̄² w` with `ω̄² = ρh a⁴ ω²`, and
//! `K w = N̄ a² (-G) w`.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::censym::{self, StructureClass, SymmetrySplit, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::kron::{kron, unvec_rows};
use crate::linalg;
use crate::quadrature::DirectionalWeights;
pub use crate::stiffness::Stiffness;

/// Plate size and mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateGeometry {
    /// Side length along x.
    pub a: f64,
    /// Aspect ratio `a / b`.
    pub beta: f64,
    /// Mass per unit area.
    pub rho_h: f64,
}

impl PlateGeometry {
    pub fn new(a: f64, beta: f64, rho_h: f64) -> Result<Self> {
        let g = Self { a, beta, rho_h };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("beta", self.beta), ("rho_h", self.rho_h)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidGeometry(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AnalysisKind {
    /// Uniform transverse pressure.
    Static { q: f64 },
    /// Lowest natural frequencies.
    Vibration { count: usize },
    /// Lowest critical loads under equal biaxial compression.
    Buckling { count: usize },
}

/// Which linear-algebra route a solve takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolvePath {
    Full,
    Reduced,
    /// Reduced when the operators are centrosymmetric, otherwise full.
    Auto,
}

/// Assembled interior operators.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub k: DMatrix<f64>,
    pub g: DMatrix<f64>,
    /// Interior points along x.
    pub n: usize,
    /// Interior points along y.
    pub m: usize,
    pub structure: StructureClass,
    pub geometric_structure: StructureClass,
    pub grid_x: Grid,
    pub grid_y: Grid,
}

impl AssembledSystem {
    pub fn dof(&self) -> usize {
        self.n * self.m
    }

    /// Both operators split into symmetric/antisymmetric blocks.
    pub fn supports_reduction(&self) -> bool {
        self.structure == StructureClass::Centro && self.geometric_structure == StructureClass::Centro
    }

    fn resolve(&self, path: SolvePath) -> Result<SolvePath> {
        match path {
            SolvePath::Full => Ok(SolvePath::Full),
            SolvePath::Reduced if self.structure == StructureClass::Centro => Ok(SolvePath::Reduced),
            SolvePath::Reduced => Err(Error::ReducedPathUnavailable),
            SolvePath::Auto if self.structure == StructureClass::Centro => Ok(SolvePath::Reduced),
            SolvePath::Auto => Ok(SolvePath::Full),
        }
    }

    fn resolve_generalized(&self, path: SolvePath) -> Result<SolvePath> {
        match path {
            SolvePath::Full => Ok(SolvePath::Full),
            SolvePath::Reduced if self.supports_reduction() => Ok(SolvePath::Reduced),
            SolvePath::Reduced => Err(Error::ReducedPathUnavailable),
            SolvePath::Auto if self.supports_reduction() => Ok(SolvePath::Reduced),
            SolvePath::Auto => Ok(SolvePath::Full),
        }
    }
}

/// Static deflection, interior and padded to the full grid.
#[derive(Debug, Clone)]
pub struct Deflection {
    pub interior: DMatrix<f64>,
    pub full: DMatrix<f64>,
}

impl Deflection {
    /// Full-grid value at the node nearest the plate center.
    pub fn center(&self) -> f64 {
        let (r, c) = self.full.shape();
        self.full[(r / 2, c / 2)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    /// Physical circular frequency.
    pub omega: f64,
    /// Nondimensional `ω̄ = sqrt(ρh a⁴) ω`.
    pub omega_bar: f64,
}

impl Frequency {
    pub fn omega_bar_sq(&self) -> f64 {
        self.omega_bar * self.omega_bar
    }
}

#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub analysis: AnalysisKind,
    pub deflection: Option<Deflection>,
    pub frequencies: Vec<Frequency>,
    pub critical_loads: Vec<f64>,
    /// Always `Full` or `Reduced`.
    pub path: SolvePath,
    /// Relative residual: `|K w - f| / |f|` for static solves, the worst
    /// relative eigen-residual otherwise.
    pub residual_norm: f64,
    pub wall_time: Duration,
}

fn check_interior(w: &DirectionalWeights) -> Result<()> {
    if w.len() < 3 {
        return Err(Error::InsufficientInteriorPoints(w.len()));
    }
    Ok(())
}

/// Assembles `K` and `G` from the x and y weights.
pub fn assemble(
    wx: &DirectionalWeights,
    wy: &DirectionalWeights,
    s: &Stiffness,
    geom: &PlateGeometry,
) -> Result<AssembledSystem> {
    if wx.basis != wy.basis {
        return Err(Error::BasisMismatch);
    }
    check_interior(wx)?;
    check_interior(wy)?;
    s.validate()?;
    geom.validate()?;

    let (n, m) = (wx.len(), wy.len());
    let ix = DMatrix::<f64>::identity(n, n);
    let iy = DMatrix::<f64>::identity(m, m);
    let b = geom.beta;
    let b2 = b * b;

    let mut k = kron(&wx.a4, &iy) * s.d11;
    k += kron(&wx.a2, &wy.a2) * (2.0 * b2 * (s.d12 + 2.0 * s.d66));
    k += kron(&ix, &wy.a4) * (s.d22 * b2 * b2);
    if s.d16 != 0.0 {
        k += kron(&wx.a3, &wy.a1) * (4.0 * s.d16 * b);
    }
    if s.d26 != 0.0 {
        k += kron(&wx.a1, &wy.a3) * (4.0 * s.d26 * b2 * b);
    }
    let g = kron(&wx.a2, &iy) + kron(&ix, &wy.a2) * b2;

    let structure = censym::classify(&k, CLASSIFY_TOL)?;
    let geometric_structure = censym::classify(&g, CLASSIFY_TOL)?;
    Ok(AssembledSystem {
        k,
        g,
        n,
        m,
        structure,
        geometric_structure,
        grid_x: wx.grid.clone(),
        grid_y: wy.grid.clone(),
    })
}

/// Applies the stiffness operator in matrix form, `ŵ ↦ D11 Dx ŵ + ... +
/// D22 β⁴ ŵ Dyᵀ`, without any Kronecker assembly.
pub fn apply_matrix_form(
    wx: &DirectionalWeights,
    wy: &DirectionalWeights,
    s: &Stiffness,
    geom: &PlateGeometry,
    w_hat: &DMatrix<f64>,
) -> DMatrix<f64> {
    let b = geom.beta;
    let b2 = b * b;
    &wx.a4 * w_hat * s.d11
        + &wx.a3 * w_hat * wy.a1.transpose() * (4.0 * s.d16 * b)
        + &wx.a2 * w_hat * wy.a2.transpose() * (2.0 * b2 * (s.d12 + 2.0 * s.d66))
        + &wx.a1 * w_hat * wy.a3.transpose() * (4.0 * s.d26 * b2 * b)
        + w_hat * wy.a4.transpose() * (s.d22 * b2 * b2)
}

/// Embeds interior values in a zero boundary ring.
pub fn reconstruct_full_field(interior: &DMatrix<f64>, grid_x: &Grid, grid_y: &Grid) -> Result<DMatrix<f64>> {
    let (n, m) = interior.shape();
    if n != grid_x.interior_len() || m != grid_y.interior_len() {
        return Err(Error::ShapeError(format!(
            "interior field is {n}x{m} but grids have {}x{} interior nodes",
            grid_x.interior_len(),
            grid_y.interior_len()
        )));
    }
    let mut full = DMatrix::zeros(grid_x.len(), grid_y.len());
    full.view_mut((1, 1), (n, m)).copy_from(interior);
    Ok(full)
}

/// Static deflection under uniform pressure `q`.
pub fn solve_static(sys: &AssembledSystem, q: f64, geom: &PlateGeometry, path: SolvePath) -> Result<SolutionReport> {
    if !q.is_finite() {
        return Err(Error::InvalidAnalysis("pressure must be finite".into()));
    }
    let path = sys.resolve(path)?;
    let start = Instant::now();
    let f = DVector::from_element(sys.dof(), q * geom.a.powi(4));
    let w = match path {
        SolvePath::Reduced => censym::solve_split(&split_of(&sys.k)?, &f)?,
        _ => linalg::lu_solve(&sys.k, &f)?,
    };
    let wall_time = start.elapsed();

    let f_norm = f.norm();
    let r = (&sys.k * &w - &f).norm();
    let residual_norm = if f_norm > 0.0 { r / f_norm } else { r };
    let interior = unvec_rows(&w, sys.n, sys.m);
    let full = reconstruct_full_field(&interior, &sys.grid_x, &sys.grid_y)?;
    Ok(SolutionReport {
        analysis: AnalysisKind::Static { q },
        deflection: Some(Deflection { interior, full }),
        frequencies: Vec::new(),
        critical_loads: Vec::new(),
        path,
        residual_norm,
        wall_time,
    })
}

fn split_of(x: &DMatrix<f64>) -> Result<SymmetrySplit> {
    censym::split_centro(x).map_err(|e| match e {
        Error::NotCentrosymmetric => Error::ReducedPathUnavailable,
        other => other,
    })
}

fn check_count(sys: &AssembledSystem, count: usize) -> Result<()> {
    if count == 0 || count > sys.dof() {
        return Err(Error::InvalidAnalysis(format!(
            "count must be in 1..={}, got {count}",
            sys.dof()
        )));
    }
    Ok(())
}

/// Lowest `count` real positive eigenpairs of a dense matrix.
fn lowest_full(mat: &DMatrix<f64>, count: usize) -> Result<Vec<(f64, DVector<f64>)>> {
    let values = linalg::real_positive_ascending(&linalg::eigenvalues(mat)?);
    if values.len() < count {
        return Err(Error::ComplexSpectrum { requested: count, found: values.len() });
    }
    values[..count]
        .iter()
        .map(|&v| Ok((v, linalg::inverse_iteration(mat, v)?)))
        .collect()
}

/// Lowest `count` real positive eigenpairs from the symmetric and
/// antisymmetric blocks, with vectors lifted to the full space.
fn lowest_reduced(
    sym: &DMatrix<f64>,
    anti: &DMatrix<f64>,
    size: usize,
    count: usize,
) -> Result<Vec<(f64, DVector<f64>)>> {
    let mut tagged: Vec<(f64, bool)> = linalg::real_positive_ascending(&linalg::eigenvalues(sym)?)
        .into_iter()
        .map(|v| (v, true))
        .collect();
    tagged.extend(
        linalg::real_positive_ascending(&linalg::eigenvalues(anti)?)
            .into_iter()
            .map(|v| (v, false)),
    );
    if tagged.len() < count {
        return Err(Error::ComplexSpectrum { requested: count, found: tagged.len() });
    }
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
    tagged[..count]
        .iter()
        .map(|&(v, is_sym)| {
            let vec = if is_sym {
                let y = linalg::inverse_iteration(sym, v)?;
                censym::lift(&y, &DVector::zeros(anti.nrows()), size)
            } else {
                let y = linalg::inverse_iteration(anti, v)?;
                censym::lift(&DVector::zeros(sym.nrows()), &y, size)
            };
            Ok((v, vec))
        })
        .collect()
}

/// `|K v - λ M v| / (|λ| |M v|)`; `mass = None` means identity.
fn generalized_residual(k: &DMatrix<f64>, mass: Option<&DMatrix<f64>>, lambda: f64, v: &DVector<f64>) -> f64 {
    let mv = match mass {
        Some(m) => m * v,
        None => v.clone(),
    };
    let r = (k * v - &mv * lambda).norm();
    let d = lambda.abs() * mv.norm();
    if d > 0.0 {
        r / d
    } else {
        r
    }
}

/// Lowest `count` natural frequencies.
pub fn solve_vibration(
    sys: &AssembledSystem,
    geom: &PlateGeometry,
    count: usize,
    path: SolvePath,
) -> Result<SolutionReport> {
    check_count(sys, count)?;
    let path = sys.resolve(path)?;
    let start = Instant::now();
    let pairs = match path {
        SolvePath::Reduced => {
            let sp = split_of(&sys.k)?;
            lowest_reduced(&sp.sym, &sp.anti, sys.dof(), count)?
        }
        _ => lowest_full(&sys.k, count)?,
    };
    let wall_time = start.elapsed();

    let residual_norm = pairs
        .iter()
        .map(|(l, v)| generalized_residual(&sys.k, None, *l, v))
        .fold(0.0, f64::max);
    let scale = (geom.rho_h * geom.a.powi(4)).sqrt();
    let frequencies = pairs
        .iter()
        .map(|(l, _)| {
            let omega_bar = l.sqrt();
            Frequency { omega: omega_bar / scale, omega_bar }
        })
        .collect();
    Ok(SolutionReport {
        analysis: AnalysisKind::Vibration { count },
        deflection: None,
        frequencies,
        critical_loads: Vec::new(),
        path,
        residual_norm,
        wall_time,
    })
}

fn geometric_inverse_product(neg_g: &DMatrix<f64>, k: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    linalg::lu_solve_matrix(neg_g, k).map_err(|e| match e {
        Error::SingularSystem(_) => Error::SingularGeometricOperator,
        other => other,
    })
}

/// Lowest `count` critical loads `N̄` for equal biaxial compression.
pub fn solve_buckling(
    sys: &AssembledSystem,
    geom: &PlateGeometry,
    count: usize,
    path: SolvePath,
) -> Result<SolutionReport> {
    check_count(sys, count)?;
    let path = sys.resolve_generalized(path)?;
    let start = Instant::now();
    let neg_g = -&sys.g;
    let pairs = match path {
        SolvePath::Reduced => {
            let ks = split_of(&sys.k)?;
            let gs = split_of(&neg_g)?;
            let sym = geometric_inverse_product(&gs.sym, &ks.sym)?;
            let anti = geometric_inverse_product(&gs.anti, &ks.anti)?;
            lowest_reduced(&sym, &anti, sys.dof(), count)?
        }
        _ => lowest_full(&geometric_inverse_product(&neg_g, &sys.k)?, count)?,
    };
    let wall_time = start.elapsed();

    let residual_norm = pairs
        .iter()
        .map(|(l, v)| generalized_residual(&sys.k, Some(&neg_g), *l, v))
        .fold(0.0, f64::max);
    let a2 = geom.a * geom.a;
    Ok(SolutionReport {
        analysis: AnalysisKind::Buckling { count },
        deflection: None,
        frequencies: Vec::new(),
        critical_loads: pairs.iter().map(|(l, _)| l / a2).collect(),
        path,
        residual_norm,
        wall_time,
    })
}

/// Dispatches on the analysis kind.
pub fn solve(sys: &AssembledSystem, analysis: AnalysisKind, geom: &PlateGeometry, path: SolvePath) -> Result<SolutionReport> {
    match analysis {
        AnalysisKind::Static { q } => solve_static(sys, q, geom, path),
        AnalysisKind::Vibration { count } => solve_vibration(sys, geom, count, path),
        AnalysisKind::Buckling { count } => solve_buckling(sys, geom, count, path),
    }
}
