// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use zeno_core::analysis::zeno_sum_prefixes;
use zeno_core::{enumerate_branches, survival_series, EvolutionConfig};

use super::{analytic_regime, regime_line, NUMERIC_ONLY, RUN_COLUMNS};
use crate::args::SimulateArgs;
use crate::config::{CliResult, FileConfig, RunParams, ScheduleParams};
use crate::report::{Cell, Report};

/// Step-by-step run; the last row is the summary and carries the regime.
pub fn simulate(args: &SimulateArgs, file: &FileConfig) -> CliResult<Report> {
    let run = RunParams::merge(&args.run, file);
    let sched = ScheduleParams::merge(&args.schedule, file);
    let oracle = args.oracle || file.oracle.unwrap_or(false);
    let schedule = sched.build()?;
    let config = EvolutionConfig::new(run.omega, run.time, run.steps)?;
    schedule.check_steps(run.steps)?;

    // The cap is checked before the O(n) run so that refusals are immediate.
    let p_oracle = if oracle {
        Some(enumerate_branches(&config.unitary(), &schedule, run.steps)?)
    } else {
        None
    };
    let result = survival_series(&config, &schedule)?;
    let analytic = analytic_regime(&schedule)?;

    let mut columns: Vec<&str> = RUN_COLUMNS.to_vec();
    columns.push("gap");
    let mut report = Report::new("simulate", &columns);
    report.param("omega", run.omega);
    report.param("T", run.time);
    report.param("n", run.steps);
    report.param("schedule", schedule.describe());
    report.param("oracle", oracle);

    let prefixes = zeno_sum_prefixes(&result.overlap_moduli);
    let n = run.steps;
    for (i, &prefix) in prefixes.iter().enumerate() {
        let steps = (i + 1) as f64;
        let last = i + 1 == n;
        let (p2, criterion) = if last {
            (result.p_second_order, result.criterion_value)
        } else {
            (
                result.second_order_series[i],
                (prefix - 0.5 * steps) / (steps * steps),
            )
        };
        let p = result.series[i];
        let regime = match (last, analytic) {
            (false, _) => Cell::Empty,
            (true, Some((r, _))) => Cell::text(r.to_string()),
            (true, None) => Cell::text(NUMERIC_ONLY),
        };
        report.push_row(vec![
            Cell::from(i + 1),
            Cell::from(result.overlap_moduli[i]),
            Cell::from(p),
            Cell::from(p2),
            Cell::from(criterion),
            regime,
            Cell::from((p - p2).abs()),
        ]);
    }

    let gap = (result.p_exact - result.p_second_order).abs();
    report.summarize("p_exact", result.p_exact);
    report.summarize("p_second_order", result.p_second_order);
    report.summarize("criterion", result.criterion_value);
    report.summarize("gap", gap);
    report.summarize("expansion_parameter", config.expansion_parameter());
    report.summarize("perturbative", config.is_perturbative());
    match analytic {
        Some((regime, k)) => {
            report.summarize("regime", regime.to_string());
            report.summarize("limit_p", 1.0 - k * config.limit_scale());
        }
        None => report.summarize("regime", NUMERIC_ONLY),
    }
    report.notes.push(format!(
        "n = {n}: p_exact = {}, p_second_order = {}, criterion = {}",
        result.p_exact, result.p_second_order, result.criterion_value
    ));
    if let Some((regime, k)) = analytic {
        report
            .notes
            .push(regime_line(regime, k, config.variance(), run.time));
    }
    if let Some(po) = p_oracle {
        let diff = (po - result.p_exact).abs();
        report.summarize("p_oracle", po);
        report.summarize("oracle_abs_diff", diff);
        report
            .notes
            .push(format!("oracle: p = {po}, |p_exact − p_oracle| = {diff:e}"));
    }
    Ok(report)
}
