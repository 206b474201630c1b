mod config;
mod kernel_arg;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{csv_header, json_meta, Command, Format, KernelArg, Numeric, Output, Quad, RunConfig, SpaceKind};
use run::{Failure, Outcome, Report};

#[derive(Parser)]
#[command(
    name = "spherepd",
    version,
    about = "Positive definiteness of kernels on spheres and Euclidean spaces"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Kernel, e.g. `trunc-power:theta=1,delta=2` or `indicator:theta=0.5,sinc=3`.
    #[arg(long, global = true)]
    kernel: Option<String>,
    /// Dimension d of the sphere S^d or of R^d.
    #[arg(long = "d", global = true)]
    dimension: Option<u32>,
    /// Highest Gegenbauer degree [default: 100].
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Decision tolerance for sign verdicts; each command has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random point sets [default: 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Output file; extra artifacts are written next to it. Standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for parallel sweeps and audits.
    #[arg(long, global = true, env = "SPHEREPD_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Sphere,
    Euclidean,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the kernel at the given angles.
    Eval {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Gegenbauer (Schoenberg) coefficients up to --nmax.
    Coeffs,
    /// Positive definiteness on S^d from the coefficient signs.
    Schoenberg,
    /// Positive definiteness on R^d from the Hankel transform on a frequency grid.
    Bochner {
        #[arg(long, default_value_t = 50.0)]
        xi_max: f64,
        #[arg(long, default_value_t = 501)]
        xi_count: usize,
    },
    /// Minimum Gram eigenvalue over random point sets.
    Gram {
        #[arg(long, value_enum, default_value = "sphere")]
        space: SpaceArg,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Half-angle expansion coefficients and identity residual.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: u32,
        #[arg(long, default_value_t = 101)]
        grid_points: usize,
    },
    /// Integer coefficients of the ℓ-fold derivative expansion.
    FEll {
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Sign of the normalized integral over an (n, θ) grid.
    ConjectureSweep {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Comma separated θ values.
        #[arg(long, value_delimiter = ',', required = true)]
        theta: Vec<f64>,
    },
    /// Audit one of the explicit-constant inequalities on a grid.
    BoundsAudit {
        /// L55, L56, L57, L58, CASE2, CASE3, C1, C3 or LEGENDRE.
        #[arg(long)]
        id: String,
    },
    /// Gap between the finite sums at θ_n = x/n and their limit.
    Converse {
        #[arg(long)]
        x: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Run a TOML or JSON configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Re-run the configuration embedded in a report.
    Replay {
        report: PathBuf,
        /// Compare the regenerated report with the original; exit 1 on any difference.
        #[arg(long)]
        verify: bool,
    },
}

fn build_config(common: &Common, cmd: Cmd) -> Result<RunConfig, Failure> {
    let command = match cmd {
        Cmd::Eval { t } => Command::Eval { t },
        Cmd::Coeffs => Command::Coeffs,
        Cmd::Schoenberg => Command::Schoenberg,
        Cmd::Bochner { xi_max, xi_count } => Command::Bochner { xi_max, xi_count },
        Cmd::Gram { space, points, trials } => Command::Gram {
            space: match space {
                SpaceArg::Sphere => SpaceKind::Sphere,
                SpaceArg::Euclidean => SpaceKind::Euclidean,
            },
            points,
            trials,
        },
        Cmd::Decompose { n, lambda, grid_points } => Command::Decompose { n, lambda, grid_points },
        Cmd::FEll { lambda, ell } => Command::FEll { lambda, ell },
        Cmd::ConjectureSweep {
            delta,
            n_min,
            n_max,
            theta,
        } => Command::ConjectureSweep {
            delta,
            n_min,
            n_max,
            theta,
        },
        Cmd::BoundsAudit { id } => Command::BoundsAudit { id, grid: None },
        Cmd::Converse { x, n } => Command::Converse { x, n },
        Cmd::Run { .. } | Cmd::Replay { .. } => unreachable!("handled by the caller"),
    };
    let defaults = Numeric::default();
    Ok(RunConfig {
        command,
        kernel: common.kernel.clone().map(KernelArg::Text),
        dimension: common.dimension,
        numeric: Numeric {
            tol: common.tol,
            nmax: common.nmax.unwrap_or(defaults.nmax),
            seed: common.seed.unwrap_or(defaults.seed),
            max_evals: defaults.max_evals,
        },
        quad: Quad::default(),
        output: Output {
            format: match common.format {
                Some(FormatArg::Json) => Format::Json,
                _ => Format::Csv,
            },
            path: common.output.clone(),
        },
    })
}

/// Command-line flags given alongside a configuration file override it.
fn apply_overrides(cfg: &mut RunConfig, common: &Common) {
    if let Some(k) = &common.kernel {
        cfg.kernel = Some(KernelArg::Text(k.clone()));
    }
    if common.dimension.is_some() {
        cfg.dimension = common.dimension;
    }
    if let Some(n) = common.nmax {
        cfg.numeric.nmax = n;
    }
    if common.tol.is_some() {
        cfg.numeric.tol = common.tol;
    }
    if let Some(s) = common.seed {
        cfg.numeric.seed = s;
    }
    match common.format {
        Some(FormatArg::Json) => cfg.output.format = Format::Json,
        Some(FormatArg::Csv) => cfg.output.format = Format::Csv,
        None => {}
    }
    if common.output.is_some() {
        cfg.output.path = common.output.clone();
    }
}

fn render(cfg: &RunConfig, report: &Report) -> String {
    match cfg.output.format {
        Format::Csv => format!("{}{}", csv_header(cfg), report.csv),
        Format::Json => {
            let doc = serde_json::json!({ "meta": json_meta(cfg), "report": report.json });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn write_out(path: Option<&Path>, text: &str, extra: &[(&'static str, String)]) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
            for (suffix, body) in extra {
                let q = sibling(p, suffix);
                std::fs::write(&q, body).map_err(|e| Failure::Config(format!("{}: {e}", q.display())))?;
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<Outcome, Failure> {
    if let Some(n) = cli.common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Config(format!("threads: {e}")))?;
    }
    let (cfg, original) = match cli.command {
        Cmd::Run { ref config } => {
            let mut cfg = RunConfig::parse(&read(config)?).map_err(Failure::Config)?;
            apply_overrides(&mut cfg, &cli.common);
            (cfg, None)
        }
        Cmd::Replay { ref report, verify } => {
            let text = read(report)?;
            let mut cfg = RunConfig::from_report(&text).map_err(Failure::Config)?;
            cfg.output.path = cli.common.output.clone();
            (cfg, verify.then_some(text))
        }
        cmd => (build_config(&cli.common, cmd)?, None),
    };

    let report = run::run(&cfg)?;
    let text = render(&cfg, &report);
    write_out(cfg.output.path.as_deref(), &text, &report.extra)?;
    eprintln!(
        "spherepd {}: {} (config {})",
        cfg.command.name(),
        report.summary,
        &cfg.sha256()[..12]
    );

    if let Some(orig) = original {
        if orig != text {
            eprintln!("replay differs from the original report");
            return Ok(Outcome::Finding);
        }
        eprintln!("replay identical");
    }
    Ok(report.outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(f) => {
            eprintln!("spherepd: {f}");
            ExitCode::from(f.code())
        }
    }
}
