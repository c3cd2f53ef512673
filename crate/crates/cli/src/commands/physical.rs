// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use zeno_core::physical::{
    brownian_schedule, free_particle_variance, gaussian_interaction_variance,
    gaussian_model_schedule, quadratic_overlap_bound, quadratic_validity_time, BrownianModelParams,
    FreeParticleParams, PointerModelParams, HBAR_SI, REPORTED_VALIDITY_TIME,
};
use zeno_core::{EvolutionConfig, OverlapSchedule};

use super::{analytic_regime, regime_line};
use crate::args::{Model, PhysicalArgs};
use crate::config::{CliError, CliResult, FileConfig, RunParams};
use crate::report::{Cell, Report};

/// Inputs of the reference free-particle example whose printed validity time is not reproduced.
const REFERENCE_MASS: f64 = 1e-26;
const REFERENCE_SIGMA: f64 = 1e-10;

/// `v·δ/σ` above which the quadratic overlap form is flagged.
const DISPLACEMENT_WARN: f64 = 0.1;

/// Default step count at which the per-step pointer quantities are reported.
const DEFAULT_POINTER_STEPS: usize = 1000;

fn required(name: &str, flag: Option<f64>, file: Option<f64>) -> CliResult<f64> {
    flag.or(file)
        .ok_or_else(|| CliError::Validation(format!("missing required parameter `{name}`")))
}

fn row(report: &mut Report, quantity: &str, value: Cell, note: &str) {
    report.push_row(vec![Cell::text(quantity), value, Cell::text(note)]);
}

/// Quantity / value / note listing for one physical model.
pub fn physical(args: &PhysicalArgs, file: &FileConfig) -> CliResult<Report> {
    let model = args.model.or(file.model).ok_or_else(|| {
        CliError::Validation(
            "physical needs a model: free-particle, gaussian-pointer or brownian".into(),
        )
    })?;
    let mut report = Report::new("physical", &["quantity", "value", "note"]);
    match model {
        Model::FreeParticle => free_particle(args, file, &mut report)?,
        Model::GaussianPointer => gaussian_pointer(args, file, &mut report)?,
        Model::Brownian => brownian(args, file, &mut report)?,
    }
    Ok(report)
}

fn free_particle(args: &PhysicalArgs, file: &FileConfig, report: &mut Report) -> CliResult<()> {
    let mass = required("mass", args.mass, file.mass)?;
    let sigma = required("sigma", args.sigma, file.sigma)?;
    let hbar = args.hbar.or(file.hbar).unwrap_or(HBAR_SI);
    let p = FreeParticleParams::with_hbar(mass, sigma, hbar)?;
    let variance = free_particle_variance(&p);
    let t = quadratic_validity_time(&p);

    report.param("model", "free-particle");
    report.param("mass", mass);
    report.param("sigma", sigma);
    report.param("hbar", hbar);
    row(
        report,
        "variance_J2",
        Cell::from(variance),
        "Var(H) = ħ⁴/(8 m² σ⁴)",
    );
    row(report, "t_c_s", Cell::from(t.closed_form), "2√2 m σ²/ħ");
    row(
        report,
        "t_c_from_variance_s",
        Cell::from(t.from_variance),
        "ħ/√Var(H)",
    );
    row(
        report,
        "relative_disagreement",
        Cell::from(t.relative_disagreement()),
        "between the two expressions for t_c",
    );
    report.summarize("variance", variance);
    report.summarize("t_c", t.closed_form);
    report.notes.push(format!(
        "quadratic short-time expansion valid for t ≪ t_c = {:.4e} s",
        t.closed_form
    ));

    let reference = (mass / REFERENCE_MASS - 1.0).abs() < 1e-9
        && (sigma / REFERENCE_SIGMA - 1.0).abs() < 1e-9
        && hbar == HBAR_SI;
    if reference {
        let note = format!(
            "previously reported value for these inputs; not reproduced, the formula gives {:.4e} s",
            t.closed_form
        );
        row(
            report,
            "reported_t_c_s",
            Cell::from(REPORTED_VALIDITY_TIME),
            &note,
        );
        report.summarize("reported_t_c", REPORTED_VALIDITY_TIME);
        report.notes.push(format!(
            "note: a value of {REPORTED_VALIDITY_TIME:e} s has been reported for these inputs; \
             it does not follow from 2√2 m σ²/ħ"
        ));
    }
    Ok(())
}

fn regime_rows(schedule: &OverlapSchedule, run: RunParams, report: &mut Report) -> CliResult<()> {
    let config = EvolutionConfig::new(run.omega, run.time, 1)?;
    row(report, "schedule", Cell::text(schedule.describe()), "");
    match schedule {
        OverlapSchedule::PowerLaw { alpha, beta }
        | OverlapSchedule::Exponential { alpha, beta } => {
            row(report, "alpha", Cell::from(*alpha), "");
            row(report, "beta", Cell::from(*beta), "");
        }
        OverlapSchedule::Constant { eta } => row(report, "eta", Cell::from(eta.norm()), ""),
        OverlapSchedule::Explicit { .. } => {}
    }
    let (regime, k) = analytic_regime(schedule)?.expect("model schedules are families");
    let limit = 1.0 - k * config.limit_scale();
    row(report, "regime", Cell::text(regime.to_string()), "");
    row(report, "k", Cell::from(k), "lim p = 1 − k·V·T²");
    row(report, "V", Cell::from(config.variance()), "ω²");
    row(report, "limit_p", Cell::from(limit), "");
    report.summarize("schedule", schedule.describe());
    report.summarize("regime", regime.to_string());
    report.summarize("k", k);
    report.summarize("limit_p", limit);
    report
        .notes
        .push(regime_line(regime, k, config.variance(), run.time));
    Ok(())
}

fn gaussian_pointer(args: &PhysicalArgs, file: &FileConfig, report: &mut Report) -> CliResult<()> {
    let v = required("v", args.v, file.v)?;
    let sigma = required("sigma", args.sigma, file.sigma)?;
    let c = args.c_ratio.or(file.c_ratio).unwrap_or(1.0);
    let mut run = RunParams::merge(&args.run, file);
    if args.run.steps.or(file.steps).is_none() {
        run.steps = DEFAULT_POINTER_STEPS;
    }
    let p = PointerModelParams::new(v, sigma, c, run.time)?;
    let schedule = gaussian_model_schedule(&p)?;

    report.param("model", "gaussian-pointer");
    report.param("v", v);
    report.param("sigma", sigma);
    report.param("c", c);
    report.param("omega", run.omega);
    report.param("T", run.time);
    report.param("n", run.steps);
    regime_rows(&schedule, run, report)?;

    let n = run.steps;
    let v_int = gaussian_interaction_variance(v, sigma);
    let tau = p.interaction_time(n);
    let ratio = p.displacement_ratio(n);
    row(
        report,
        "interaction_variance",
        Cell::from(v_int),
        "v²/(2σ²), ħ = 1",
    );
    row(report, "interaction_time", Cell::from(tau), "c·T/n");
    row(
        report,
        "displacement_ratio",
        Cell::from(ratio),
        "v·δ/σ; the quadratic overlap form needs δ ≪ σ/v",
    );
    row(
        report,
        "overlap_exact",
        Cell::from(p.overlap(n)),
        "exp(−(v·δ)²/σ²)",
    );
    row(
        report,
        "overlap_schedule",
        Cell::from(schedule.family_eta(n).unwrap_or(f64::NAN)),
        "1 − α/n²",
    );
    row(
        report,
        "overlap_bound",
        Cell::from(quadratic_overlap_bound(v_int, tau)),
        "1 − 2·V_int·δ²",
    );
    if ratio >= DISPLACEMENT_WARN {
        report.notes.push(format!(
            "warning: v·δ/σ = {ratio:.3} at n = {n}; the quadratic overlap form assumes δ ≪ σ/v"
        ));
    }
    Ok(())
}

fn brownian(args: &PhysicalArgs, file: &FileConfig, report: &mut Report) -> CliResult<()> {
    let d = required("diffusion", args.diffusion, file.diffusion)?;
    let run = RunParams::merge(&args.run, file);
    let p = BrownianModelParams::new(d, run.time)?;
    let schedule = brownian_schedule(&p)?;

    report.param("model", "brownian");
    report.param("diffusion", d);
    report.param("omega", run.omega);
    report.param("T", run.time);
    regime_rows(&schedule, run, report)
}
