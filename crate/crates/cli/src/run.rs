//! Dispatch of a [`RunConfig`] to the library and assembly of its report.

use serde_json::{json, Value};

use spherepd::conjecture_lab::{bounds_audit, default_audit_grid, sweep, InequalityId, SweepConfig};
use spherepd::decomposition::{f_ell_coeffs, lemma23_coeffs, verify_lemma23};
use spherepd::kernels::{kernel_eval, Dimension, KernelSpec};
use spherepd::pd_tester::{
    bochner_test_with, converse_check, default_tol, gegenbauer_coefficients_with, gram_oracle, schoenberg_test,
    PdStatus, PdVerdict, Space,
};
use spherepd::Error;

use crate::config::{Command, RunConfig, SpaceKind};

/// How a run ended; maps onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Finding,
    NonConvergence,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Finding => 1,
            Outcome::NonConvergence => 2,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Numerical(_) => 2,
            Failure::Config(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::Overflow(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

pub struct Report {
    /// CSV body without the header.
    pub csv: String,
    pub json: Value,
    /// Additional files as `(suffix, contents)`, written next to the main output.
    pub extra: Vec<(&'static str, String)>,
    /// One line for the error stream.
    pub summary: String,
    pub outcome: Outcome,
}

fn kernel(cfg: &RunConfig) -> Result<KernelSpec, Failure> {
    let k = cfg
        .kernel
        .as_ref()
        .ok_or_else(|| Failure::Config(format!("{} needs a kernel", cfg.command.name())))?;
    k.resolve().map_err(Failure::Config)
}

fn dimension(cfg: &RunConfig) -> Result<Dimension, Failure> {
    let d = cfg
        .dimension
        .ok_or_else(|| Failure::Config(format!("{} needs a dimension", cfg.command.name())))?;
    Ok(Dimension::new(d)?)
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Failure::Config(format!("{name} must be positive, got {v}")))
    }
}

fn verdict_outcome(v: &PdVerdict) -> Outcome {
    match v.status {
        PdStatus::NotPd => Outcome::Finding,
        PdStatus::Inconclusive => Outcome::NonConvergence,
        PdStatus::Pd | PdStatus::Psd => Outcome::Pass,
    }
}

fn status_name(s: PdStatus) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn verdict_csv(v: &PdVerdict) -> String {
    let m = &v.margins;
    format!(
        "status,tol,count,min_value,max_value,negative,positive,positive_even,positive_odd\n{},{:e},{},{:e},{:e},{},{},{},{}\n",
        status_name(v.status), v.tol, m.count, m.min_value, m.max_value, m.negative, m.positive, m.positive_even, m.positive_odd
    )
}

pub fn run(cfg: &RunConfig) -> Result<Report, Failure> {
    let nmax = cfg.numeric.nmax;
    match &cfg.command {
        Command::Eval { t } => {
            let g = kernel(cfg)?;
            let mut csv = String::from("t,value\n");
            let mut rows = Vec::new();
            for &x in t {
                let v = kernel_eval(&g, x)?;
                csv.push_str(&format!("{x:e},{v:e}\n"));
                rows.push(json!({ "t": x, "value": v }));
            }
            Ok(Report {
                csv,
                json: json!(rows),
                extra: vec![],
                summary: format!("{} values", t.len()),
                outcome: Outcome::Pass,
            })
        }
        Command::Coeffs => {
            let g = kernel(cfg)?;
            let s = gegenbauer_coefficients_with(&g, dimension(cfg)?, nmax, &cfg.quad_options(1e-13))?;
            let ok = s.converged.iter().all(|&c| c);
            Ok(Report {
                csv: s.to_csv(),
                json: serde_json::to_value(&s).expect("serializes"),
                extra: vec![],
                summary: format!(
                    "{} coefficients, weighted sum {:e}",
                    s.coefficients.len(),
                    s.weighted_partial_sum
                ),
                outcome: if ok { Outcome::Pass } else { Outcome::NonConvergence },
            })
        }
        Command::Schoenberg => {
            let g = kernel(cfg)?;
            let s = gegenbauer_coefficients_with(&g, dimension(cfg)?, nmax, &cfg.quad_options(1e-13))?;
            let tol = cfg.numeric.tol.unwrap_or_else(|| default_tol(&s, g.value(0.0)));
            let v = schoenberg_test(&s, tol);
            Ok(Report {
                csv: verdict_csv(&v),
                json: serde_json::to_value(&v).expect("serializes"),
                extra: vec![("coefficients.csv", s.to_csv())],
                summary: format!("verdict {}", status_name(v.status)),
                outcome: verdict_outcome(&v),
            })
        }
        Command::Bochner { xi_max, xi_count } => {
            positive("xi_max", *xi_max)?;
            if *xi_count < 2 {
                return Err(Failure::Config("xi_count must be at least 2".into()));
            }
            let g = kernel(cfg)?;
            let grid: Vec<f64> = (0..*xi_count)
                .map(|k| xi_max * k as f64 / (*xi_count - 1) as f64)
                .collect();
            let tol = cfg
                .numeric
                .tol
                .unwrap_or(1e-10 * g.value(0.0).abs().max(f64::MIN_POSITIVE));
            let opts = cfg.quad_options((tol * 1e-2).max(1e-15));
            let v = bochner_test_with(&g, dimension(cfg)?, &grid, tol, &opts)?;
            Ok(Report {
                csv: verdict_csv(&v),
                json: serde_json::to_value(&v).expect("serializes"),
                extra: vec![],
                summary: format!("verdict {}", status_name(v.status)),
                outcome: verdict_outcome(&v),
            })
        }
        Command::Gram { space, points, trials } => {
            let g = kernel(cfg)?;
            let d = cfg
                .dimension
                .ok_or_else(|| Failure::Config("gram needs a dimension".into()))?;
            let space = match space {
                SpaceKind::Sphere => Space::Sphere(d),
                SpaceKind::Euclidean => Space::Euclidean(d),
            };
            let tol = cfg.numeric.tol.unwrap_or(1e-8);
            let r = gram_oracle(&g, space, *points, *trials, cfg.numeric.seed, tol)?;
            let mut csv = String::from("trial,min_eigenvalue\n");
            for (k, v) in r.per_trial.iter().enumerate() {
                csv.push_str(&format!("{k},{v:e}\n"));
            }
            Ok(Report {
                csv,
                json: serde_json::to_value(&r).expect("serializes"),
                extra: vec![],
                summary: format!(
                    "verdict {}, min eigenvalue {:e}",
                    status_name(r.verdict.status),
                    r.min_eigenvalue
                ),
                outcome: verdict_outcome(&r.verdict),
            })
        }
        Command::Decompose { n, lambda, grid_points } => {
            let c = lemma23_coeffs(*n, *lambda)?;
            let grid: Vec<f64> = (0..*grid_points)
                .map(|k| std::f64::consts::PI * k as f64 / (*grid_points).max(2).saturating_sub(1) as f64)
                .collect();
            let residual = verify_lemma23(*n, *lambda, &grid)?;
            let min = c.iter().map(|(_, a)| a).fold(f64::INFINITY, f64::min);
            let ok = min > 0.0 && residual <= 1e-9;
            Ok(Report {
                csv: format!("n,lambda,j,a\n{}", c.csv_rows()),
                json: json!({ "coefficients": c, "identity_residual": residual }),
                extra: vec![],
                summary: format!("min coefficient {min:e}, identity residual {residual:e}"),
                outcome: if ok { Outcome::Pass } else { Outcome::Finding },
            })
        }
        Command::FEll { lambda, ell } => {
            let t = f_ell_coeffs(*lambda, *ell)?;
            let mut csv = String::from("j,k,alpha\n");
            for (j, row) in t.alpha.iter().enumerate() {
                for (k, a) in row.iter().enumerate() {
                    if *a != 0 {
                        csv.push_str(&format!("{j},{k},{a}\n"));
                    }
                }
            }
            let rows: Vec<Vec<String>> = t
                .alpha
                .iter()
                .map(|r| r.iter().map(|a| a.to_string()).collect())
                .collect();
            Ok(Report {
                csv,
                json: json!({ "lambda": t.lambda, "ell": t.ell, "alpha": rows }),
                extra: vec![],
                summary: format!("{} rows", t.alpha.len()),
                outcome: Outcome::Pass,
            })
        }
        Command::ConjectureSweep {
            delta,
            n_min,
            n_max,
            theta,
        } => {
            let d = cfg
                .dimension
                .ok_or_else(|| Failure::Config("conjecture-sweep needs a dimension".into()))?;
            let r = sweep(&SweepConfig {
                d,
                delta: *delta,
                n_range: (*n_min, *n_max),
                theta_grid: theta.clone(),
            })?;
            let summary: Value = serde_json::from_str(&r.summary_json()).expect("valid json");
            Ok(Report {
                csv: r.to_csv(),
                json: json!({ "summary": summary, "cells": r.cells }),
                extra: vec![("summary.json", r.summary_json()), ("plot.csv", r.plot_csv())],
                summary: format!(
                    "{} cells, {} failures, min {:e}",
                    r.cells.len(),
                    r.failures.len(),
                    r.min_value
                ),
                outcome: if r.failures.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Finding
                },
            })
        }
        Command::BoundsAudit { id, grid } => {
            let id: InequalityId = id.parse()?;
            let grid = grid.clone().unwrap_or_else(|| default_audit_grid(id));
            let r = bounds_audit(id, &grid)?;
            Ok(Report {
                csv: r.to_csv(),
                json: serde_json::to_value(&r).expect("serializes"),
                extra: vec![],
                summary: format!(
                    "{:?}: {} checked, {} skipped, all pass {}, min margin {:e}",
                    id,
                    r.checked(),
                    r.skipped,
                    r.all_pass,
                    r.min_margin()
                ),
                outcome: if r.all_pass { Outcome::Pass } else { Outcome::Finding },
            })
        }
        Command::Converse { x, n } => {
            positive("x", *x)?;
            let g = kernel(cfg)?;
            let t = converse_check(&g, dimension(cfg)?, *x, n)?;
            Ok(Report {
                csv: t.to_csv(),
                json: serde_json::to_value(&t).expect("serializes"),
                extra: vec![],
                summary: format!("target {:e}, monotone {}", t.target, t.monotone),
                outcome: if t.monotone { Outcome::Pass } else { Outcome::Finding },
            })
        }
    }
}
