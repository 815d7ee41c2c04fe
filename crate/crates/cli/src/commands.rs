//! The `identities`, `verify` and `figures` commands.

use serde::Serialize;

use superharm::quadoracle::QuadratureSpec;
use superharm::verifier::log_case::log_case_certificate;
use superharm::verifier::oracle::{spot_check, spot_points, OracleReport};
use superharm::verifier::{
    verify_high_d, verify_one_d, x_star, Condition, CurveSample, GridSpec, HighDOptions, ScanReport,
};
use superharm::ProblemParams;

use crate::config::{
    CaseArg, Cli, Command, IdentitiesArgs, RunConfig, FIGURE_POINTS, HIGH_D_POINTS,
};
use crate::identities::{IdentityCheck, IdentitySuite};
use crate::output::OutputDir;
use crate::{CliError, Status};

/// Plot clamp of the heat grids.
pub const HEAT_CLAMP: f64 = 0.1;
/// Dimension where the hypergeometric condition first fails.
pub const FAILING_N: u32 = 12;
/// Dimension shown to recover under the power condition.
pub const RECOVERED_N: u32 = 127;

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Status {
    let outcome = match cli.command {
        Command::Identities(args) => cmd_identities(&args),
        Command::Verify(args) => {
            RunConfig::from_args(&args, HIGH_D_POINTS).and_then(|cfg| cmd_verify(&cfg))
        }
        Command::Figures(args) => {
            RunConfig::from_args(&args, FIGURE_POINTS).and_then(|cfg| cmd_figures(&cfg))
        }
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.status()
    })
}

#[derive(Serialize)]
struct IdentitySummary<'a> {
    passed: bool,
    checks: &'a [IdentityCheck],
}

/// Runs the identity suite, prints a table and optionally writes
/// `identities.json`.
pub fn cmd_identities(args: &IdentitiesArgs) -> Result<Status, CliError> {
    let suite = match args.perturb_gamma {
        Some(eps) if !eps.is_finite() => {
            return Err(CliError::Config(format!(
                "--perturb-gamma {eps} is not finite"
            )))
        }
        Some(eps) => IdentitySuite::with_gamma_perturbation(eps),
        None => IdentitySuite::new(),
    };
    let checks = suite.run()?;
    println!(
        "{:<36} {:>6} {:>12} {:>10}  result",
        "identity", "points", "max rel err", "tolerance"
    );
    for c in &checks {
        println!(
            "{:<36} {:>6} {:>12.3e} {:>10.0e}  {}",
            c.name,
            c.points,
            c.max_rel_error,
            c.tolerance,
            if c.passed { "ok" } else { "FAIL" }
        );
        if !c.passed {
            eprintln!("identity {} failed at arguments {:?}", c.name, c.worst_args);
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    if let Some(dir) = &args.out {
        OutputDir::create(dir)?.json(
            "identities.json",
            &IdentitySummary {
                passed,
                checks: &checks,
            },
        )?;
    }
    Ok(if passed {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

#[derive(Serialize)]
struct SummaryEntry {
    file: String,
    label: String,
    passed: bool,
    certified: bool,
    min_value: f64,
}

struct Run<'a> {
    cfg: &'a RunConfig,
    out: OutputDir,
    summary: Vec<SummaryEntry>,
    status: Status,
}

impl Run<'_> {
    fn report(&mut self, report: &ScanReport, curve: Option<&CurveSample>) -> Result<(), CliError> {
        let stem = report.file_stem();
        if self.cfg.format.json() {
            self.out.json(&format!("{stem}.json"), report)?;
        }
        if let (Some(c), true) = (curve, self.cfg.format.csv()) {
            self.out.csv(&format!("{stem}.csv"), c)?;
        }
        println!(
            "{:<28} min {:>+.6e} at (s, x) = ({:.6}, {:.6})  {}",
            stem,
            report.min_value,
            report.argmin[0],
            report.argmin[1],
            if report.passed { "PASS" } else { "FAIL" }
        );
        self.record(
            stem,
            report.label.clone(),
            report.passed,
            report.certified,
            report.min_value,
        );
        Ok(())
    }

    fn record(
        &mut self,
        file: String,
        label: String,
        passed: bool,
        certified: bool,
        min_value: f64,
    ) {
        if !passed {
            self.status = self.status.combine(Status::VerificationFailed);
        }
        self.summary.push(SummaryEntry {
            file,
            label,
            passed,
            certified,
            min_value,
        });
    }

    fn oracle(&mut self, report: &OracleReport) -> Result<(), CliError> {
        if self.cfg.format.json() {
            self.out.json("oracle.json", report)?;
        }
        println!(
            "{:<28} min slack {:>+.6e} over {} points  {}",
            "oracle",
            report.min_slack,
            report.samples.len(),
            if report.passed { "PASS" } else { "FAIL" }
        );
        self.record(
            "oracle".into(),
            "spot checks".into(),
            report.passed,
            true,
            report.min_slack,
        );
        Ok(())
    }

    fn case(&mut self, case: CaseArg) -> Result<(), CliError> {
        match case {
            CaseArg::Log => self.report(&log_case_certificate(), None),
            CaseArg::OneD => {
                for scan in verify_one_d(&self.cfg.one_d_grid)? {
                    self.report(&scan.report, Some(&scan.curve))?;
                }
                Ok(())
            }
            CaseArg::HighD => {
                let options = HighDOptions {
                    condition: self.cfg.condition,
                    refine: self.cfg.refine,
                    curve_clamp: None,
                };
                for scan in verify_high_d(&self.cfg.n_list, &self.cfg.high_d_grid, options)? {
                    self.report(&scan.report, None)?;
                }
                Ok(())
            }
            CaseArg::Oracle => {
                let spec = QuadratureSpec::default().with_tol(self.cfg.tol)?;
                self.oracle(&spot_check(&spot_points(), &spec)?)
            }
        }
    }
}

/// Runs the selected cases and writes one report per scan plus
/// `summary.json`. On an engine error the outputs written so far are kept
/// and a failure marker is added.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Status, CliError> {
    let mut run = Run {
        cfg,
        out: OutputDir::create(&cfg.out)?,
        summary: Vec::new(),
        status: Status::Success,
    };
    for &case in &cfg.cases {
        if let Err(e) = run.case(case) {
            run.out.failure(&e)?;
            return Err(e);
        }
    }
    if cfg.format.json() {
        run.out.json("summary.json", &run.summary)?;
    }
    Ok(run.status)
}

fn x_star_curve(step: f64) -> Result<CurveSample, CliError> {
    let mut curve = CurveSample::new(["s", "x_star"]);
    for s in GridSpec::s_line(step, Vec::new()).s_points() {
        curve.push(vec![s, x_star(&ProblemParams::new(1, s)?)])?;
    }
    Ok(curve)
}

/// Writes CSV data for the threshold curve, the four one-dimensional
/// panels and the clamped heat grids.
pub fn cmd_figures(cfg: &RunConfig) -> Result<Status, CliError> {
    let out = OutputDir::create(&cfg.out)?;
    let result = (|| {
        let mut written = vec![out.csv("x_star_n1.csv", &x_star_curve(cfg.one_d_grid.s_step)?)?];
        for scan in verify_one_d(&cfg.one_d_grid)? {
            written.push(out.csv(&format!("{}.csv", scan.report.file_stem()), &scan.curve)?);
        }
        let heat = |n_list: &[u32], condition: Condition| {
            let options = HighDOptions {
                condition,
                refine: false,
                curve_clamp: Some(HEAT_CLAMP),
            };
            verify_high_d(n_list, &cfg.high_d_grid, options)
        };
        let mut scans = heat(&cfg.n_list, Condition::Hypergeometric)?;
        if !cfg.n_list.contains(&FAILING_N) {
            scans.extend(heat(&[FAILING_N], Condition::Hypergeometric)?);
        }
        scans.extend(heat(&[RECOVERED_N], Condition::Power)?);
        for scan in &scans {
            let curve = scan.curve.as_ref().expect("clamp requested");
            written.push(out.csv(&format!("heat_{}.csv", scan.report.file_stem()), curve)?);
        }
        Ok::<_, CliError>(written)
    })();
    match result {
        Ok(written) => {
            for path in written {
                println!("{}", path.display());
            }
            Ok(Status::Success)
        }
        Err(e) => {
            out.failure(&e)?;
            Err(e)
        }
    }
}
