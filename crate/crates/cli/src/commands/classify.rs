// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use serde_json::json;
use zeno_core::analysis::{PROBE_SPREAD_LIMIT, PROBE_TOLERANCE};
use zeno_core::evolution::final_amplitude;
use zeno_core::{numeric_limit_probe, EvolutionConfig, OverlapSchedule, Probe, ZenoError};

use super::{analytic_regime, regime_line, RUN_COLUMNS};
use crate::args::ClassifyArgs;
use crate::config::{CliResult, FileConfig, RunParams, ScheduleParams};
use crate::report::{Cell, Report};

pub const DEFAULT_N_MAX: usize = 1 << 20;

/// Probe rows, then `n = inf` rows for the analytic limit and the numeric one.
///
/// The numeric row's regime is prefixed `numeric:`; a probe that does not
/// settle is reported as `numeric:NonConvergent` rather than failing.
pub fn classify(args: &ClassifyArgs, file: &FileConfig) -> CliResult<Report> {
    let run = RunParams::merge(&args.run, file);
    let schedule = ScheduleParams::merge(&args.schedule, file).build()?;
    let n_max = args.n_max.or(file.n_max).unwrap_or(DEFAULT_N_MAX);
    // steps are irrelevant here; the probe chooses its own grid
    let base = EvolutionConfig::new(run.omega, run.time, 1)?;
    let variance = base.variance();
    let scale = base.limit_scale();

    let analytic = analytic_regime(&schedule)?;
    let numeric = match numeric_limit_probe(&schedule, &base, n_max) {
        Ok(c) => Ok(c),
        Err(ZenoError::NonConvergent { estimate, spread }) => Err((estimate, spread)),
        Err(e) => return Err(e.into()),
    };

    let mut report = Report::new("classify", &RUN_COLUMNS);
    report.param("omega", run.omega);
    report.param("T", run.time);
    report.param("n_max", n_max);
    report.param("schedule", schedule.describe());

    if let Ok(c) = &numeric {
        for probe in &c.diagnostics {
            let p = exact_at(&schedule, run, probe)?;
            report.push_row(vec![
                Cell::from(probe.n),
                Cell::from(probe.eta_n),
                Cell::from(p),
                Cell::from(probe.p_second_order),
                Cell::from(probe.criterion),
                Cell::Empty,
            ]);
        }
    }

    let limit_eta = |s: &OverlapSchedule| match s {
        OverlapSchedule::Constant { eta } => Cell::from(eta.norm()),
        OverlapSchedule::PowerLaw { .. } | OverlapSchedule::Exponential { .. } => Cell::from(1.0),
        OverlapSchedule::Explicit { .. } => Cell::Empty,
    };
    if let Some((regime, k)) = analytic {
        let limit = 1.0 - k * scale;
        report.push_row(vec![
            Cell::text("inf"),
            limit_eta(&schedule),
            Cell::Empty,
            Cell::from(limit),
            Cell::Empty,
            Cell::text(regime.to_string()),
        ]);
        report.summarize(
            "analytic",
            json!({ "regime": regime.to_string(), "k": k, "limit_p": limit }),
        );
        report
            .notes
            .push(regime_line(regime, k, variance, run.time));
    } else {
        report.summarize("analytic", serde_json::Value::Null);
        report
            .notes
            .push("explicit schedule: no closed-form regime, numeric probe only".into());
    }

    match &numeric {
        Ok(c) => {
            let k_raw = c.extrapolated_coefficient.unwrap_or(c.coefficient);
            let limit = 1.0 - k_raw * scale;
            report.push_row(vec![
                Cell::text("inf"),
                limit_eta(&schedule),
                Cell::Empty,
                Cell::from(limit),
                Cell::Empty,
                Cell::text(format!("numeric:{}", c.regime)),
            ]);
            let agrees =
                analytic.map(|(r, k)| r == c.regime && (k - k_raw).abs() <= PROBE_TOLERANCE);
            report.summarize(
                "numeric",
                json!({
                    "regime": c.regime.to_string(),
                    "k": c.coefficient,
                    "extrapolated_k": k_raw,
                    "limit_p": limit,
                    "converged": true,
                }),
            );
            report.summarize("agrees", agrees);
            let verdict = match agrees {
                Some(true) => "agrees",
                Some(false) => "DISAGREES with the analytic label",
                None => "no analytic label to compare",
            };
            report.notes.push(format!(
                "numeric probe (n ≤ {n_max}): {}, extrapolated k = {k_raw:.4e}, lim p ≈ {limit:.6}; {verdict}",
                c.regime
            ));
        }
        Err((estimate, spread)) => {
            report.push_row(vec![
                Cell::text("inf"),
                limit_eta(&schedule),
                Cell::Empty,
                Cell::from(*estimate),
                Cell::Empty,
                Cell::text("numeric:NonConvergent"),
            ]);
            report.summarize(
                "numeric",
                json!({
                    "regime": null,
                    "limit_p": estimate,
                    "spread": spread,
                    "converged": false,
                }),
            );
            report.summarize("agrees", serde_json::Value::Null);
            report.notes.push(format!(
                "numeric probe (n ≤ {n_max}) did not settle: last estimate {estimate}, spread {spread:e} \
                 (limit {:e} in units of VT²); raise --n-max",
                PROBE_SPREAD_LIMIT
            ));
        }
    }
    Ok(report)
}

/// Exact Rabi survival probability at the probe's `n`.
fn exact_at(schedule: &OverlapSchedule, run: RunParams, probe: &Probe) -> CliResult<f64> {
    let config = EvolutionConfig::new(run.omega, run.time, probe.n)?;
    let u = config.unitary();
    let amp = match schedule {
        OverlapSchedule::Explicit { overlaps } => {
            let prefix = OverlapSchedule::explicit(overlaps[..probe.n].to_vec())?;
            final_amplitude(&u, &prefix, probe.n)?
        }
        _ => final_amplitude(&u, schedule, probe.n)?,
    };
    Ok(amp.norm_sqr())
}
