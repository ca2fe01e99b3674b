//! Command-line front end for the `mollow` susceptibility library.
//!
//! Exit codes: 0 success, 1 evaluation or check failure, 2 usage error.

pub mod check;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use mollow::contour::{linear_grid, sweep, Method};
use mollow::model::renormalize_dense;
use mollow::triplet::{triplet_roots, triplet_roots_saturation, Regime};
use mollow::{Complex64, Component, DensityScale, DriveParams};
use serde::Serialize;

use config::{Cli, Command, FigureArgs, FileConfig, Format, RootsArgs, RootsFormat, RunConfig};
use output::{Meta, Record};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Saturation above which `roots` appends the asymptotic comparison.
pub const ASYMPTOTE_THRESHOLD: f64 = 10.0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] mollow::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Sweep(args) => {
            let file = args.config.as_deref().map(FileConfig::load).transpose()?;
            let cfg = config::parse_config(&args, file)?;
            let text = run_sweep(&cfg)?;
            emit(cfg.output.as_deref(), &text, stdout)
        }
        Command::Figure(args) => {
            for path in run_figure(&args)? {
                write_stdout(stdout, &format!("{}\n", path.display()))?;
            }
            Ok(())
        }
        Command::Roots(args) => write_stdout(stdout, &run_roots(&args)?),
        Command::Check(args) => {
            let report = check::run_check(&args)?;
            let text = report.to_json();
            emit(args.output.as_deref(), &text, stdout)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::CheckFailed(report.failed().join(", ")))
            }
        }
        Command::Docs(args) => {
            let missing = mollow::docs::missing_bindings();
            if !missing.is_empty() {
                return Err(CliError::CheckFailed(format!(
                    "relations without a binding: {}",
                    missing.join(", ")
                )));
            }
            emit(args.output.as_deref(), &mollow::docs::equation_map(), stdout)
        }
    }
}

fn write_stdout(stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(path) => write_file(path, text),
        None => write_stdout(stdout, text),
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn usage_err(e: mollow::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// A sweep computed at unit decay rate and reported in the caller's units.
struct Evaluation {
    meta: Meta,
    records: Vec<Record>,
}

/// Frequencies are divided by `gamma` before evaluation and the grid is
/// reported as given; χ is in units of `n₀d₀²/(ħγ)` for the bare `gamma`.
#[allow(clippy::too_many_arguments)]
fn evaluate(
    component: Component,
    bare: &DriveParams,
    epsilon: Option<f64>,
    grid: &[f64],
    method: Method,
    scale: DensityScale,
    tol: f64,
) -> CliResult<Evaluation> {
    let g = bare.gamma();
    let unit = DriveParams::new(1.0, bare.delta() / g, bare.rabi() / g).map_err(usage_err)?;
    let internal = match epsilon {
        Some(eps) => renormalize_dense(&unit, eps).map_err(usage_err)?,
        None => unit,
    };
    let scaled: Vec<f64> = grid.iter().map(|w| w / g).collect();
    let result = sweep(component, &internal, &scaled, method, scale, tol)?;
    let mut records = Vec::with_capacity(grid.len());
    for (&omega, sample) in grid.iter().zip(&result.samples) {
        if !(sample.value.re.is_finite() && sample.value.im.is_finite()) {
            return Err(CliError::Eval(mollow::Error::AtPoint {
                omega,
                source: Box::new(mollow::Error::InvalidGrid(format!("non-finite value {}", sample.value))),
            }));
        }
        records.push(Record::new(omega, sample.value));
    }
    let meta = Meta {
        component: component.name().to_string(),
        gamma: g,
        delta: bare.delta(),
        rabi: bare.rabi(),
        saturation: bare.saturation(),
        epsilon,
        effective_gamma: internal.gamma() * g,
        omega_min: grid[0],
        omega_max: grid[grid.len() - 1],
        points: grid.len(),
        method: method.name().to_string(),
        scale: scale.value(),
        tol,
        version: VERSION.to_string(),
        preset: None,
        note: None,
    };
    Ok(Evaluation { meta, records })
}

fn render(format: Format, eval: &Evaluation) -> String {
    match format {
        Format::Csv => output::to_csv(&eval.records),
        Format::Json => output::to_json(&eval.meta, &eval.records),
    }
}

/// Evaluates a resolved sweep and renders it in the configured format.
pub fn run_sweep(cfg: &RunConfig) -> CliResult<String> {
    let rabi = cfg.rabi()?;
    let bare = DriveParams::new(cfg.gamma, cfg.delta, rabi).map_err(usage_err)?;
    let grid = linear_grid(cfg.omega_min, cfg.omega_max, cfg.points).map_err(usage_err)?;
    let mut eval = evaluate(cfg.component, &bare, cfg.epsilon, &grid, cfg.method, cfg.scale, cfg.tol)?;
    if let config::DriveStrength::Saturation(s) = cfg.strength {
        eval.meta.saturation = s;
    }
    Ok(render(cfg.format, &eval))
}

/// File name for one saturation value of a preset, e.g. `fig3_s0.1.csv`.
pub fn figure_file_name(preset: config::Preset, s: f64, format: Format) -> String {
    format!("{}_s{}.{}", preset.name(), s, format.extension())
}

/// Writes one file per saturation value into `--out-dir` and returns their paths.
pub fn run_figure(args: &FigureArgs) -> CliResult<Vec<PathBuf>> {
    if args.s_list.is_empty() {
        return Err(CliError::Usage("--s-list must not be empty".into()));
    }
    let gamma = args.gamma.unwrap_or(1.0);
    let omega_min = args.omega_min.unwrap_or(-8.0 * gamma);
    let omega_max = args.omega_max.unwrap_or(8.0 * gamma);
    let grid = linear_grid(omega_min, omega_max, args.points).map_err(usage_err)?;
    let scale = match (args.scale.scale, args.scale.density_lambda3) {
        (Some(k), _) => DensityScale::new(k),
        (None, Some(n)) => DensityScale::from_density_lambda3(n),
        (None, None) => Ok(DensityScale::UNIT),
    }
    .map_err(usage_err)?;
    std::fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Io {
        path: args.out_dir.clone(),
        source,
    })?;
    let component = args.preset.component();
    let mut written = Vec::with_capacity(args.s_list.len());
    for &s in &args.s_list {
        let bare = DriveParams::from_saturation(gamma, 0.0, s).map_err(usage_err)?;
        let mut eval = evaluate(
            component,
            &bare,
            args.scale.epsilon,
            &grid,
            Method::Residue,
            scale,
            config::DEFAULT_TOL,
        )?;
        eval.meta.saturation = s;
        eval.meta.preset = Some(args.preset.name().to_string());
        eval.meta.note = Some(format!(
            "resonant drive; saturation values {:?} are a preset choice, override with --s-list",
            args.s_list
        ));
        let path = args.out_dir.join(figure_file_name(args.preset, s, args.format));
        write_file(&path, &render(args.format, &eval))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Serialize)]
struct RootRow {
    name: &'static str,
    re: f64,
    im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptote_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptote_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<f64>,
}

#[derive(Debug, Serialize)]
struct RootsReport {
    gamma: f64,
    delta: f64,
    rabi: f64,
    saturation: f64,
    regime: &'static str,
    roots: Vec<RootRow>,
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::SubThreshold => "sub-threshold",
        Regime::Triplet => "triplet",
    }
}

/// Prints the triplet roots; above saturation 10 each root is compared with
/// its asymptote, the deviation being the gap in real parts.
pub fn run_roots(args: &RootsArgs) -> CliResult<String> {
    let gamma = args.drive.gamma.unwrap_or(1.0);
    let delta = args.drive.delta.unwrap_or(0.0);
    let bare = match (args.drive.rabi, args.drive.saturation) {
        (Some(r), None) => DriveParams::new(gamma, delta, r),
        (None, Some(s)) => DriveParams::from_saturation(gamma, delta, s),
        _ => return Err(CliError::Usage("one of --rabi or --saturation is required".into())),
    }
    .map_err(usage_err)?;
    let unit = DriveParams::new(1.0, delta / gamma, bare.rabi() / gamma).map_err(usage_err)?;
    let exact = triplet_roots(&unit);
    let asymptote = (bare.saturation() > ASYMPTOTE_THRESHOLD).then(|| triplet_roots_saturation(&unit));
    let up = |z: Complex64| z * gamma;
    let rows: Vec<RootRow> = ["lambda1", "lambda2", "lambda3"]
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let e = up(exact.as_array()[i]);
            let a = asymptote.map(|a| up(a.as_array()[i]));
            RootRow {
                name,
                re: e.re + 0.0,
                im: e.im + 0.0,
                asymptote_re: a.map(|a| a.re + 0.0),
                asymptote_im: a.map(|a| a.im + 0.0),
                deviation: a.map(|a| (e.re - a.re).abs()),
            }
        })
        .collect();
    let report = RootsReport {
        gamma,
        delta,
        rabi: bare.rabi(),
        saturation: bare.saturation(),
        regime: regime_name(exact.regime),
        roots: rows,
    };
    Ok(match args.format {
        RootsFormat::Json => {
            let mut text = serde_json::to_string_pretty(&report).expect("finite roots serialize");
            text.push('\n');
            text
        }
        RootsFormat::Text => roots_text(&report),
    })
}

fn roots_text(r: &RootsReport) -> String {
    use output::format_float as f;
    let mut out = format!(
        "gamma {}\ndelta {}\nrabi {}\nsaturation {}\nregime {}\n",
        f(r.gamma),
        f(r.delta),
        f(r.rabi),
        f(r.saturation),
        r.regime
    );
    let with_asymptote = r.roots.iter().any(|row| row.deviation.is_some());
    out.push_str(if with_asymptote {
        "root re im asymptote_re asymptote_im deviation\n"
    } else {
        "root re im\n"
    });
    for row in &r.roots {
        out.push_str(&format!("{} {} {}", row.name, f(row.re), f(row.im)));
        if let (Some(ar), Some(ai), Some(d)) = (row.asymptote_re, row.asymptote_im, row.deviation) {
            out.push_str(&format!(" {} {} {}", f(ar), f(ai), f(d)));
        }
        out.push('\n');
    }
    out
}
