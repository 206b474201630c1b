//! Run configurations and the reproducibility header.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use spherepd::kernels::KernelSpec;
use spherepd::quadrature::QuadOptions;

use crate::kernel_arg::parse_kernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Sphere,
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numeric {
    /// Decision or quadrature tolerance; each command has its own default.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default = "default_nmax")]
    pub nmax: usize,
    #[serde(default)]
    pub seed: u64,
    /// Refinement budget per quadrature call.
    #[serde(default = "default_max_evals")]
    pub max_evals: usize,
}

fn default_nmax() -> usize {
    100
}

fn default_max_evals() -> usize {
    1_000_000
}

impl Default for Numeric {
    fn default() -> Self {
        Self {
            tol: None,
            nmax: default_nmax(),
            seed: 0,
            max_evals: default_max_evals(),
        }
    }
}

/// Overrides for the quadrature engine; unset keys keep each command's default.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quad {
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_evals: Option<usize>,
    #[serde(default)]
    pub grading_depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default)]
    pub format: Format,
    /// Not serialized: the same run written to two places hashes identically.
    #[serde(default, skip_serializing)]
    pub path: Option<PathBuf>,
}

/// A kernel in the mini-language or as a structured table tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelArg {
    Text(String),
    Spec(KernelSpec),
}

impl KernelArg {
    pub fn resolve(&self) -> Result<KernelSpec, String> {
        match self {
            KernelArg::Text(s) => parse_kernel(s),
            KernelArg::Spec(k) => Ok(k.clone()),
        }
    }
}

/// Command-specific parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Eval {
        t: Vec<f64>,
    },
    Coeffs,
    Schoenberg,
    Bochner {
        xi_max: f64,
        xi_count: usize,
    },
    Gram {
        space: SpaceKind,
        points: usize,
        trials: usize,
    },
    Decompose {
        n: usize,
        lambda: u32,
        #[serde(default = "default_grid_points")]
        grid_points: usize,
    },
    FEll {
        lambda: u32,
        ell: u32,
    },
    ConjectureSweep {
        delta: f64,
        n_min: usize,
        n_max: usize,
        theta: Vec<f64>,
    },
    BoundsAudit {
        id: String,
        /// `(n, θ)` points; the inequality's default grid when absent.
        #[serde(default)]
        grid: Option<Vec<(usize, f64)>>,
    },
    Converse {
        x: f64,
        n: Vec<usize>,
    },
}

fn default_grid_points() -> usize {
    101
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Coeffs => "coeffs",
            Command::Schoenberg => "schoenberg",
            Command::Bochner { .. } => "bochner",
            Command::Gram { .. } => "gram",
            Command::Decompose { .. } => "decompose",
            Command::FEll { .. } => "f-ell",
            Command::ConjectureSweep { .. } => "conjecture-sweep",
            Command::BoundsAudit { .. } => "bounds-audit",
            Command::Converse { .. } => "converse",
        }
    }
}

/// Everything that determines a run's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub kernel: Option<KernelArg>,
    #[serde(default)]
    pub dimension: Option<u32>,
    #[serde(default)]
    pub numeric: Numeric,
    #[serde(default)]
    pub quad: Quad,
    #[serde(default)]
    pub output: Output,
}

impl RunConfig {
    /// Quadrature options: `default_tol` unless `quad.tol` is set, with the
    /// evaluation budget from `quad.max_evals` or `numeric.max_evals`.
    pub fn quad_options(&self, default_tol: f64) -> QuadOptions {
        let base = QuadOptions::default();
        QuadOptions {
            abs_tol: self.quad.tol.unwrap_or(default_tol),
            max_evals: self.quad.max_evals.unwrap_or(self.numeric.max_evals),
            grading_depth: self.quad.grading_depth.unwrap_or(base.grading_depth),
            ..base
        }
    }

    /// Compact JSON, the form embedded in output headers.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Reads a TOML or JSON configuration, chosen by the first non-blank
    /// character.
    pub fn parse(text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| format!("config: {e}"))
        } else {
            toml::from_str(text).map_err(|e| format!("config: {e}"))
        }
    }

    /// Recovers the configuration embedded in a report written by this tool.
    pub fn from_report(text: &str) -> Result<Self, String> {
        if let Some(line) = text.lines().find_map(|l| l.strip_prefix("# config: ")) {
            return Self::parse(line);
        }
        let v: serde_json::Value = serde_json::from_str(text).map_err(|_| "no embedded config found".to_string())?;
        let cfg = v
            .pointer("/meta/config")
            .ok_or_else(|| "no embedded config found".to_string())?;
        serde_json::from_value(cfg.clone()).map_err(|e| format!("embedded config: {e}"))
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `# key: value` lines opening every CSV report.
pub fn csv_header(cfg: &RunConfig) -> String {
    format!(
        "# spherepd {VERSION}\n# command: {}\n# config_sha256: {}\n# seed: {}\n# config: {}\n",
        cfg.command.name(),
        cfg.sha256(),
        cfg.numeric.seed,
        cfg.canonical_json()
    )
}

/// The `meta` object wrapping every JSON report.
pub fn json_meta(cfg: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "version": VERSION,
        "command": cfg.command.name(),
        "config_sha256": cfg.sha256(),
        "seed": cfg.numeric.seed,
        "config": cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunConfig {
        RunConfig {
            command: Command::ConjectureSweep {
                delta: 2.0,
                n_min: 0,
                n_max: 5,
                theta: vec![0.5, 1.0],
            },
            kernel: None,
            dimension: Some(3),
            numeric: Numeric::default(),
            quad: Quad::default(),
            output: Output::default(),
        }
    }

    #[test]
    fn toml_and_json_agree() {
        let toml_text = r#"
dimension = 3

[command]
name = "conjecture-sweep"
delta = 2.0
n_min = 0
n_max = 5
theta = [0.5, 1.0]
"#;
        let a = RunConfig::parse(toml_text).unwrap();
        assert_eq!(a, sample());
        let b = RunConfig::parse(&sample().canonical_json()).unwrap();
        assert_eq!(b, sample());
    }

    #[test]
    fn structured_kernel_and_sections() {
        let text = r#"
dimension = 3

[command]
name = "schoenberg"

[kernel]
kind = "scaled"
theta = 0.5

[kernel.inner]
kind = "truncated_power"
theta = 2.0
delta = 2.0

[quad]
tol = 1e-12
grading_depth = 60

[output]
format = "json"
path = "out.json"
"#;
        let cfg = RunConfig::parse(text).unwrap();
        let k = cfg.kernel.as_ref().unwrap().resolve().unwrap();
        assert_eq!(k.support_end, 1.0);
        assert_eq!(cfg.output.format, Format::Json);
        assert_eq!(cfg.output.path, Some(PathBuf::from("out.json")));
        let opts = cfg.quad_options(1e-10);
        assert_eq!(
            (opts.abs_tol, opts.grading_depth, opts.max_evals),
            (1e-12, 60, 1_000_000)
        );
        // the path stays out of the hash
        let mut other = cfg.clone();
        other.output.path = None;
        assert_eq!(cfg.sha256(), other.sha256());
        let back = RunConfig::parse(&cfg.canonical_json()).unwrap();
        assert_eq!(back.kernel, cfg.kernel);
    }

    #[test]
    fn header_round_trip() {
        let cfg = sample();
        let text = format!("{}n,theta\n", csv_header(&cfg));
        assert_eq!(RunConfig::from_report(&text).unwrap(), cfg);
        let json = serde_json::json!({ "meta": json_meta(&cfg), "report": {} }).to_string();
        assert_eq!(RunConfig::from_report(&json).unwrap(), cfg);
        assert_eq!(cfg.sha256().len(), 64);
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(RunConfig::parse("dimension = 3\nbogus = 1\n[command]\nname = \"coeffs\"\n").is_err());
        assert!(RunConfig::parse("[command]\nname = \"nope\"\n").is_err());
    }
}
