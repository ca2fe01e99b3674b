//! Command-line flags, the JSON config file and their merge into a [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mollow::contour::Method;
use mollow::model::rabi_from_saturation;
use mollow::{Component, DensityScale};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "mollow",
    version,
    about = "Nonlinear susceptibility of a strongly driven atomic ensemble"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one susceptibility component over a frequency grid.
    Sweep(SweepArgs),
    /// Reproduce the data behind a figure preset, one file per saturation value.
    Figure(FigureArgs),
    /// Print the Mollow-triplet quasi-energies.
    Roots(RootsArgs),
    /// Run the cross-check suite and print a JSON report.
    Check(CheckArgs),
    /// Print the relation-to-code reference map.
    Docs(DocsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    KerrZ,
    ParametricZ,
    Transverse,
}

impl From<ComponentArg> for Component {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::KerrZ => Component::KerrZ,
            ComponentArg::ParametricZ => Component::ParametricZ,
            ComponentArg::Transverse => Component::Transverse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Residue,
    Quadrature,
    Oracle,
    Weak,
    SatCenter,
    SatSideband,
    SatTransverse,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Residue => Method::Residue,
            MethodArg::Quadrature => Method::Quadrature,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Weak => Method::Weak,
            MethodArg::SatCenter => Method::SaturationCenter,
            MethodArg::SatSideband => Method::SaturationSideband,
            MethodArg::SatTransverse => Method::SaturationTransverse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig3,
    Fig4,
    Fig5,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        }
    }

    pub fn component(&self) -> Component {
        match self {
            Preset::Fig3 => Component::KerrZ,
            Preset::Fig4 => Component::Transverse,
            Preset::Fig5 => Component::ParametricZ,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct DriveArgs {
    /// Natural decay rate; all frequencies are given in the same unit.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Control-field detuning Δ.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Rabi frequency Ω_R.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "saturation")]
    pub rabi: Option<f64>,
    /// Saturation parameter s (alternative to --rabi).
    #[arg(long, allow_negative_numbers = true)]
    pub saturation: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScaleArgs {
    /// Density prefactor multiplying every susceptibility.
    #[arg(long, conflicts_with = "density_lambda3")]
    pub scale: Option<f64>,
    /// Atomic density in units of ƛ³; sets scale = 0.75·n₀ƛ³.
    #[arg(long)]
    pub density_lambda3: Option<f64>,
    /// Permittivity of the host medium; renormalizes γ to √ε·γ.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// JSON file with flag-name keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub component: Option<ComponentArg>,
    #[command(flatten)]
    pub drive: DriveArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Relative tolerance of the quadrature methods.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub preset: Preset,
    /// Saturation values, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 1.0, 10.0, 100.0])]
    pub s_list: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Grid start; defaults to −8γ.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    /// Grid end; defaults to 8γ.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long, default_value_t = 801)]
    pub points: usize,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum RootsFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub drive: DriveArgs,
    #[arg(long, value_enum, default_value_t = RootsFormat::Text)]
    pub format: RootsFormat,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random points for the three-way agreement.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Random points for the determinant identity.
    #[arg(long, default_value_t = 100)]
    pub det_points: usize,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Reverse one numerator term, `component:index`.
    #[arg(long, hide = true)]
    pub flip_term: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct DocsArgs {
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub component: Option<String>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub rabi: Option<f64>,
    pub saturation: Option<f64>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points: Option<usize>,
    pub method: Option<String>,
    pub scale: Option<f64>,
    pub density_lambda3: Option<f64>,
    pub epsilon: Option<f64>,
    pub tol: Option<f64>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }
}

/// How the drive strength was specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriveStrength {
    Rabi(f64),
    Saturation(f64),
}

/// A fully resolved sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub component: Component,
    pub gamma: f64,
    pub delta: f64,
    pub strength: DriveStrength,
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub method: Method,
    pub scale: DensityScale,
    pub epsilon: Option<f64>,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn rabi(&self) -> Result<f64, CliError> {
        match self.strength {
            DriveStrength::Rabi(r) => Ok(r),
            DriveStrength::Saturation(s) => {
                rabi_from_saturation(s, self.gamma, self.delta).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, false).map_err(|_| {
        let allowed: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|v| v.to_possible_value().map(|p| p.get_name().to_string()))
            .collect();
        usage(format!(
            "--{key}: invalid value `{value}` (expected one of {})",
            allowed.join(", ")
        ))
    })
}

/// Picks exactly one of two alternatives; a flag for either replaces the file's pair.
fn either<T: Copy>(
    flags: (Option<T>, Option<T>),
    file: (Option<T>, Option<T>),
    names: (&str, &str),
) -> Result<(Option<T>, Option<T>), CliError> {
    let chosen = if flags.0.is_some() || flags.1.is_some() {
        flags
    } else {
        file
    };
    if chosen.0.is_some() && chosen.1.is_some() {
        return Err(usage(format!("--{} and --{} are mutually exclusive", names.0, names.1)));
    }
    Ok(chosen)
}

/// Merges flags over the optional config file and validates the result.
pub fn parse_config(args: &SweepArgs, file: Option<FileConfig>) -> Result<RunConfig, CliError> {
    let file = file.unwrap_or_default();

    let component = match (args.component, &file.component) {
        (Some(c), _) => c.into(),
        (None, Some(name)) => parse_enum::<ComponentArg>("component", name)?.into(),
        (None, None) => return Err(usage("--component is required")),
    };
    let method = match (args.method, &file.method) {
        (Some(m), _) => m.into(),
        (None, Some(name)) => parse_enum::<MethodArg>("method", name)?.into(),
        (None, None) => Method::Residue,
    };
    let format = match (args.format, &file.format) {
        (Some(f), _) => f,
        (None, Some(name)) => parse_enum::<Format>("format", name)?,
        (None, None) => Format::Csv,
    };

    let gamma = args.drive.gamma.or(file.gamma).unwrap_or(1.0);
    let delta = args.drive.delta.or(file.delta).unwrap_or(0.0);
    let strength = match either(
        (args.drive.rabi, args.drive.saturation),
        (file.rabi, file.saturation),
        ("rabi", "saturation"),
    )? {
        (Some(r), None) => DriveStrength::Rabi(r),
        (None, Some(s)) => DriveStrength::Saturation(s),
        _ => return Err(usage("one of --rabi or --saturation is required")),
    };
    let scale = match either(
        (args.scale.scale, args.scale.density_lambda3),
        (file.scale, file.density_lambda3),
        ("scale", "density-lambda3"),
    )? {
        (Some(k), None) => DensityScale::new(k),
        (None, Some(n)) => DensityScale::from_density_lambda3(n),
        _ => Ok(DensityScale::UNIT),
    }
    .map_err(|e| usage(e.to_string()))?;

    let cfg = RunConfig {
        component,
        gamma,
        delta,
        strength,
        omega_min: args.omega_min.or(file.omega_min).unwrap_or(-8.0),
        omega_max: args.omega_max.or(file.omega_max).unwrap_or(8.0),
        points: args.points.or(file.points).unwrap_or(801),
        method,
        scale,
        epsilon: args.scale.epsilon.or(file.epsilon),
        tol: args.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
        format,
        output: args.output.clone().or(file.output),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.points < 2 {
        return Err(usage(format!("--points must be at least 2 (got {})", cfg.points)));
    }
    if !(cfg.omega_min.is_finite() && cfg.omega_max.is_finite() && cfg.omega_min < cfg.omega_max) {
        return Err(usage(format!(
            "--omega-min must be below --omega-max (got {} and {})",
            cfg.omega_min, cfg.omega_max
        )));
    }
    if !(cfg.tol > 0.0 && cfg.tol <= 1e-3) {
        return Err(usage(format!("--tol must lie in (0, 1e-3] (got {})", cfg.tol)));
    }
    let rabi = cfg.rabi()?;
    mollow::DriveParams::new(cfg.gamma, cfg.delta, rabi).map_err(|e| usage(e.to_string()))?;
    if let Some(eps) = cfg.epsilon {
        let p = mollow::DriveParams::new(cfg.gamma, cfg.delta, rabi).map_err(|e| usage(e.to_string()))?;
        mollow::model::renormalize_dense(&p, eps).map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}
