//! Full versus reduced timing sweep.

use std::fmt::Write as _;
use std::time::Duration;

use super::config::{ConfigError, ProblemConfig};
use super::report::fmt_num;
use super::{build_system, CliError};
use crate::censym::flop_ratio_model;
use crate::error::Error;
use crate::plate::{self, SolutionReport, SolvePath};

/// Largest allowed path disagreement.
pub const MAX_REL_DIFF: f64 = 1e-8;

const REPEATS: usize = 3;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n_total: usize,
    pub dof: usize,
    pub t_full: Duration,
    pub t_reduced: Duration,
    pub ratio_model: f64,
    pub max_rel_diff: f64,
}

impl BenchRow {
    pub fn ratio_measured(&self) -> f64 {
        self.t_reduced.as_secs_f64() / self.t_full.as_secs_f64()
    }
}

pub const BENCH_HEADER: &str = "n_total,dof,t_full,t_reduced,ratio_measured,ratio_model,max_rel_diff";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(BENCH_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.n_total,
            r.dof,
            fmt_num(r.t_full.as_secs_f64()),
            fmt_num(r.t_reduced.as_secs_f64()),
            fmt_num(r.ratio_measured()),
            fmt_num(r.ratio_model),
            fmt_num(r.max_rel_diff)
        );
    }
    s
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let d = a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

fn values(r: &SolutionReport) -> Vec<f64> {
    if let Some(d) = &r.deflection {
        d.interior.iter().copied().collect()
    } else if !r.frequencies.is_empty() {
        r.frequencies.iter().map(|f| f.omega_bar_sq()).collect()
    } else {
        r.critical_loads.clone()
    }
}

fn timed(
    sys: &plate::AssembledSystem,
    problem: &super::config::Problem,
    path: SolvePath,
) -> Result<SolutionReport, Error> {
    let mut best: Option<SolutionReport> = None;
    for _ in 0..REPEATS {
        let r = plate::solve(sys, problem.analysis, &problem.geometry, path)?;
        if best.as_ref().is_none_or(|b| r.wall_time < b.wall_time) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one repeat"))
}

/// Runs the sweep; timings are serialized, one size at a time.
pub fn run_bench(cfg: &ProblemConfig, min: usize, max: usize, step: usize) -> Result<Vec<BenchRow>, CliError> {
    if min < 5 {
        return Err(ConfigError { field: "--min".into(), message: format!("must be at least 5, got {min}") }.into());
    }
    if max < min {
        return Err(ConfigError { field: "--max".into(), message: format!("must be at least --min ({min}), got {max}") }.into());
    }
    if step == 0 {
        return Err(ConfigError { field: "--step".into(), message: "must be positive".into() }.into());
    }
    let Some(_) = cfg.with_size(min) else {
        // fixed custom grids cannot be swept; still gate on structure first
        let problem = cfg.validate()?;
        let sys = build_system(&problem)?;
        if !sys.supports_reduction() {
            return Err(Error::ReducedPathUnavailable.into());
        }
        return Err(ConfigError {
            field: "grid.family".into(),
            message: "bench sweeps need a generated grid family".into(),
        }
        .into());
    };

    let mut rows = Vec::new();
    for n_total in (min..=max).step_by(step) {
        let sized = cfg.with_size(n_total).expect("generated family");
        let problem = sized.validate()?;
        let sys = build_system(&problem)?;
        if !sys.supports_reduction() {
            return Err(Error::ReducedPathUnavailable.into());
        }
        let full = timed(&sys, &problem, SolvePath::Full)?;
        let reduced = timed(&sys, &problem, SolvePath::Reduced)?;
        let dof = sys.dof();
        rows.push(BenchRow {
            n_total,
            dof,
            t_full: full.wall_time,
            t_reduced: reduced.wall_time,
            ratio_model: flop_ratio_model(dof + dof % 2),
            max_rel_diff: rel_diff(&values(&full), &values(&reduced)),
        });
    }
    Ok(rows)
}
