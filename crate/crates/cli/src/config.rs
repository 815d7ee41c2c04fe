//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use superharm::verifier::{Condition, Exclusion, GridSpec};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "superharm",
    version,
    about = "Positivity scans and identity checks for the fractional superharmonicity inequality"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the special-function and constant equivalence checks.
    Identities(IdentitiesArgs),
    /// Run positivity scans and write reports.
    Verify(RunArgs),
    /// Write CSV data for every figure.
    Figures(RunArgs),
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Directory for `identities.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Scale every Gamma value used by the checks by `1 + EPS`.
    #[arg(long, hide = true, value_name = "EPS")]
    pub perturb_gamma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Log,
    OneD,
    HighD,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    /// Keep the hypergeometric term.
    C,
    /// Replace it by the power bound.
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Cases to run; repeat or separate with commas. `verify` defaults to
    /// all of them.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub case: Vec<CaseArg>,
    /// Dimensions for the high-dimensional scan.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Condition for the high-dimensional scan.
    #[arg(long, value_enum, default_value = "c")]
    pub condition: ConditionArg,
    /// Step along s for every scan (default 1e-3 for the 1-D scan and a
    /// 512-point axis for the high-dimensional scan).
    #[arg(long)]
    pub s_step: Option<f64>,
    /// Step along x for the high-dimensional scan.
    #[arg(long)]
    pub x_step: Option<f64>,
    /// Puncture of the s-axis, as CENTER:HALFWIDTH.
    #[arg(long, value_parser = parse_exclusion)]
    pub exclude: Vec<Exclusion>,
    /// Quadrature tolerance for the oracle spot checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Skip the halved-grid refinement of the high-dimensional scan.
    #[arg(long)]
    pub no_refine: bool,
    /// Directory for reports and CSV data.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Report formats to write.
    #[arg(long, value_enum, default_value = "both")]
    pub format: Format,
}

fn parse_exclusion(s: &str) -> Result<Exclusion, String> {
    let (c, h) = s
        .split_once(':')
        .ok_or_else(|| format!("expected CENTER:HALFWIDTH, got `{s}`"))?;
    let center: f64 = c.trim().parse().map_err(|e| format!("center `{c}`: {e}"))?;
    let half_width: f64 = h
        .trim()
        .parse()
        .map_err(|e| format!("half-width `{h}`: {e}"))?;
    if !(half_width > 0.0 && center.is_finite()) {
        return Err(format!(
            "exclusion `{s}` needs a finite center and positive half-width"
        ));
    }
    Ok(Exclusion { center, half_width })
}

/// Grid step of the 1-D `s` scan.
pub const ONE_D_S_STEP: f64 = 1e-3;
/// Half-width of the puncture at `s = 3/4`.
pub const ONE_D_PUNCTURE: f64 = 1e-3;
/// Interior points per axis of the high-dimensional verification grid.
pub const HIGH_D_POINTS: usize = 512;
/// Interior points per axis of the heat grids written by `figures`.
pub const FIGURE_POINTS: usize = 128;
/// Default quadrature tolerance for oracle spot checks.
pub const ORACLE_TOL: f64 = 1e-10;

/// Validated settings shared by `verify` and `figures`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cases: Vec<CaseArg>,
    pub n_list: Vec<u32>,
    pub condition: Condition,
    pub one_d_grid: GridSpec,
    pub high_d_grid: GridSpec,
    pub tol: f64,
    pub refine: bool,
    pub out: PathBuf,
    pub format: Format,
}

impl RunConfig {
    /// Builds the configuration; `high_d_points` sets the default square
    /// grid when no steps are given.
    pub fn from_args(args: &RunArgs, high_d_points: usize) -> Result<Self, CliError> {
        let cases = if args.case.is_empty() {
            vec![CaseArg::Log, CaseArg::OneD, CaseArg::HighD, CaseArg::Oracle]
        } else {
            let mut c = args.case.clone();
            c.dedup();
            c
        };
        let n_list = if args.n.is_empty() {
            (2..=11).collect()
        } else {
            args.n.clone()
        };
        if let Some(n) = n_list.iter().find(|&&n| n < 2) {
            return Err(CliError::Config(format!(
                "--n {n}: high-dimensional scans need n ≥ 2"
            )));
        }
        let exclusions = if args.exclude.is_empty() {
            vec![Exclusion {
                center: 0.75,
                half_width: ONE_D_PUNCTURE,
            }]
        } else {
            args.exclude.clone()
        };
        let one_d_grid = GridSpec::s_line(args.s_step.unwrap_or(ONE_D_S_STEP), exclusions);
        let mut high_d_grid = GridSpec::unit_square(high_d_points);
        if let Some(step) = args.s_step {
            high_d_grid.s_step = step;
        }
        if let Some(step) = args.x_step {
            high_d_grid.x_step = step;
        }
        let grid_err = |e: superharm::Error| CliError::Config(e.to_string());
        one_d_grid.validate().map_err(grid_err)?;
        high_d_grid.validate().map_err(grid_err)?;
        let tol = args.tol.unwrap_or(ORACLE_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Config(format!("--tol {tol} must be positive")));
        }
        Ok(Self {
            cases,
            n_list,
            condition: match args.condition {
                ConditionArg::C => Condition::Hypergeometric,
                ConditionArg::D => Condition::Power,
            },
            one_d_grid,
            high_d_grid,
            tol,
            refine: !args.no_refine,
            out: args.out.clone(),
            format: args.format,
        })
    }
}
