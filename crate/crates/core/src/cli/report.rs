//! Text, CSV and JSON renderings of a solve.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde_json::json;

use super::config::{echo_config, ProblemConfig};
use crate::plate::{AnalysisKind, AssembledSystem, SolutionReport, SolvePath};

pub const CONFIG_BEGIN: &str = "--- config ---";
pub const CONFIG_END: &str = "--- end config ---";

/// 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn path_name(p: SolvePath) -> &'static str {
    match p {
        SolvePath::Full => "full",
        SolvePath::Reduced => "reduced",
        SolvePath::Auto => "auto",
    }
}

/// One row per x-node, comma-separated y-values.
pub fn field_csv(field: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in field.row_iter() {
        let line: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn text_report(cfg: &ProblemConfig, sys: &AssembledSystem, report: &SolutionReport) -> String {
    let mut s = String::new();
    s.push_str("dqplate solve report\n");
    s.push_str(CONFIG_BEGIN);
    s.push('\n');
    s.push_str(&echo_config(cfg));
    s.push('\n');
    s.push_str(CONFIG_END);
    s.push('\n');
    let _ = writeln!(s, "interior grid: {} x {} ({} unknowns)", sys.n, sys.m, sys.dof());
    let _ = writeln!(s, "stiffness operator structure: {:?}", sys.structure);
    let _ = writeln!(s, "path: {}", path_name(report.path));
    match report.analysis {
        AnalysisKind::Static { q } => {
            let _ = writeln!(s, "analysis: static, q = {}", fmt_num(q));
            if let Some(d) = &report.deflection {
                let _ = writeln!(s, "center deflection: {}", fmt_num(d.center()));
                let _ = writeln!(s, "max |deflection|: {}", fmt_num(d.full.amax()));
            }
        }
        AnalysisKind::Vibration { count } => {
            let _ = writeln!(s, "analysis: vibration, {count} frequencies");
            let _ = writeln!(s, "{:>4}  {:>24}  {:>24}  {:>24}", "mode", "omega_bar^2", "omega_bar", "omega");
            for (i, f) in report.frequencies.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>24}  {:>24}  {:>24}",
                    i + 1,
                    fmt_num(f.omega_bar_sq()),
                    fmt_num(f.omega_bar),
                    fmt_num(f.omega)
                );
            }
        }
        AnalysisKind::Buckling { count } => {
            let _ = writeln!(s, "analysis: buckling, {count} loads");
            let _ = writeln!(s, "{:>4}  {:>24}", "mode", "critical N");
            for (i, n) in report.critical_loads.iter().enumerate() {
                let _ = writeln!(s, "{:>4}  {:>24}", i + 1, fmt_num(*n));
            }
        }
    }
    let _ = writeln!(s, "residual: {}", fmt_num(report.residual_norm));
    let _ = writeln!(s, "wall time: {:.6} s", report.wall_time.as_secs_f64());
    s
}

/// The config block echoed by [`text_report`].
pub fn extract_config(report: &str) -> Option<&str> {
    let start = report.find(CONFIG_BEGIN)? + CONFIG_BEGIN.len();
    let end = report[start..].find(CONFIG_END)? + start;
    Some(report[start..end].trim())
}

pub fn results_json(cfg: &ProblemConfig, sys: &AssembledSystem, report: &SolutionReport) -> serde_json::Value {
    let mut v = json!({
        "config": cfg,
        "dof": sys.dof(),
        "structure": sys.structure,
        "path": path_name(report.path),
        "residual_norm": report.residual_norm,
        "wall_time_s": report.wall_time.as_secs_f64(),
    });
    let obj = v.as_object_mut().expect("object literal");
    match report.analysis {
        AnalysisKind::Static { .. } => {
            if let Some(d) = &report.deflection {
                obj.insert("center_deflection".into(), json!(d.center()));
                let rows: Vec<Vec<f64>> = d.full.row_iter().map(|r| r.iter().copied().collect()).collect();
                obj.insert("field".into(), json!(rows));
            }
        }
        AnalysisKind::Vibration { .. } => {
            let sq: Vec<f64> = report.frequencies.iter().map(|f| f.omega_bar_sq()).collect();
            let om: Vec<f64> = report.frequencies.iter().map(|f| f.omega).collect();
            obj.insert("omega_bar_sq".into(), json!(sq));
            obj.insert("omega".into(), json!(om));
        }
        AnalysisKind::Buckling { .. } => {
            obj.insert("critical_loads".into(), json!(report.critical_loads));
        }
    }
    v
}
