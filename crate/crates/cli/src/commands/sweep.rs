// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use zeno_core::evolution::final_amplitude;
use zeno_core::{criterion_value, second_order_pn, survival_series, EvolutionConfig};

use super::{analytic_regime, NUMERIC_ONLY, RUN_COLUMNS};
use crate::args::{ScheduleKind, SweepArgs};
use crate::config::{thread_count, CliError, CliResult, FileConfig, RunParams, ScheduleParams};
use crate::report::{Cell, Report};

/// Largest number of grid points one sweep may evaluate.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Steps,
    Eta,
    Alpha,
    Beta,
    Omega,
    Time,
}

impl Axis {
    fn parse(name: &str) -> CliResult<Self> {
        Ok(match name {
            "n" | "steps" => Axis::Steps,
            "eta" => Axis::Eta,
            "alpha" => Axis::Alpha,
            "beta" => Axis::Beta,
            "omega" => Axis::Omega,
            "T" | "time" => Axis::Time,
            _ => {
                return Err(CliError::Validation(format!(
                    "unknown grid axis `{name}`; expected one of n, eta, alpha, beta, omega, T"
                )))
            }
        })
    }

    pub fn column(self) -> &'static str {
        match self {
            Axis::Steps => "grid_n",
            Axis::Eta => "grid_eta",
            Axis::Alpha => "grid_alpha",
            Axis::Beta => "grid_beta",
            Axis::Omega => "grid_omega",
            Axis::Time => "grid_T",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub axis: Axis,
    /// Ascending, without duplicates.
    pub values: Vec<f64>,
}

/// Parses `NAME=VALUES` with VALUES one of `a,b,c`, `start:step:stop` or `2^lo..2^hi`.
pub fn parse_axis(spec: &str) -> CliResult<GridAxis> {
    let bad = |why: &str| CliError::Validation(format!("grid `{spec}`: {why}"));
    let (name, values) = spec
        .split_once('=')
        .ok_or_else(|| bad("expected NAME=VALUES"))?;
    let axis = Axis::parse(name.trim())?;
    let values = values.trim();
    let number = |s: &str| -> CliResult<f64> {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad(&format!("`{s}` is not a finite number")))
    };

    let mut out = if let Some((lo, hi)) = values.split_once("..") {
        let exponent = |s: &str| -> CliResult<u32> {
            s.trim()
                .strip_prefix("2^")
                .and_then(|e| e.parse::<u32>().ok())
                .filter(|&e| e < 63)
                .ok_or_else(|| bad("power ranges are written 2^lo..2^hi"))
        };
        let (lo, hi) = (exponent(lo)?, exponent(hi)?);
        (lo..=hi).map(|k| (1u64 << k) as f64).collect()
    } else if values.contains(':') {
        let parts: Vec<&str> = values.split(':').collect();
        let [start, step, stop] = parts[..] else {
            return Err(bad("ranges are written start:step:stop"));
        };
        let (start, step, stop) = (number(start)?, number(step)?, number(stop)?);
        if step <= 0.0 {
            return Err(bad("range step must be positive"));
        }
        let span = (stop - start) / step;
        if span < -1e-9 {
            Vec::new()
        } else {
            // tolerate rounding so that 0:0.1:1 includes 1
            let count = (span + 1e-9).floor() + 1.0;
            if count > MAX_GRID_POINTS as f64 {
                return Err(CliError::Capacity(format!(
                    "grid `{spec}` has {count} points; the cap is {MAX_GRID_POINTS}"
                )));
            }
            (0..count as usize)
                .map(|i| start + i as f64 * step)
                .collect()
        }
    } else if values.is_empty() {
        Vec::new()
    } else {
        values
            .split(',')
            .map(number)
            .collect::<CliResult<Vec<f64>>>()?
    };

    if axis == Axis::Steps {
        if let Some(v) = out.iter().find(|v| v.fract() != 0.0 || **v < 1.0) {
            return Err(bad(&format!("n must be a positive integer, got {v}")));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    if out.is_empty() {
        return Err(bad("the grid is empty"));
    }
    Ok(GridAxis { axis, values: out })
}

/// Row-major product of the axes; the first axis varies slowest.
fn grid_points(axes: &[GridAxis]) -> CliResult<Vec<Vec<f64>>> {
    let total = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
        .filter(|&t| t <= MAX_GRID_POINTS)
        .ok_or_else(|| {
            let sizes: Vec<String> = axes.iter().map(|a| a.values.len().to_string()).collect();
            CliError::Capacity(format!(
                "grid of {} points exceeds the cap of {MAX_GRID_POINTS}",
                sizes.join(" × ")
            ))
        })?;
    let mut points = Vec::with_capacity(total);
    let mut current = Vec::with_capacity(axes.len());
    fn rec(axes: &[GridAxis], current: &mut Vec<f64>, points: &mut Vec<Vec<f64>>) {
        match axes.split_first() {
            None => points.push(current.clone()),
            Some((head, rest)) => {
                for &v in &head.values {
                    current.push(v);
                    rec(rest, current, points);
                    current.pop();
                }
            }
        }
    }
    rec(axes, &mut current, &mut points);
    Ok(points)
}

struct PointOutcome {
    row: Vec<Cell>,
    perturbative: bool,
}

fn evaluate(
    axes: &[GridAxis],
    point: &[f64],
    base_run: RunParams,
    base_sched: &ScheduleParams,
) -> CliResult<PointOutcome> {
    let mut run = base_run;
    let mut sched = base_sched.clone();
    for (axis, &v) in axes.iter().zip(point) {
        match axis.axis {
            Axis::Steps => run.steps = v as usize,
            Axis::Eta => sched.eta = Some(v),
            Axis::Alpha => sched.alpha = Some(v),
            Axis::Beta => sched.beta = Some(v),
            Axis::Omega => run.omega = v,
            Axis::Time => run.time = v,
        }
    }
    let at = |e: CliError| match e {
        CliError::Validation(m) => {
            let coords: Vec<String> = axes
                .iter()
                .zip(point)
                .map(|(a, v)| format!("{}={v}", a.axis.column()))
                .collect();
            CliError::Validation(format!("at grid point {}: {m}", coords.join(", ")))
        }
        other => other,
    };
    let inner = || -> CliResult<PointOutcome> {
        let schedule = sched.build()?;
        let config = EvolutionConfig::new(run.omega, run.time, run.steps)?;
        schedule.check_steps(run.steps)?;
        let (eta_n, p_exact, p2, criterion) = match schedule.family_eta(run.steps) {
            Some(eta) => {
                let amp = final_amplitude(&config.unitary(), &schedule, run.steps)?;
                (
                    eta,
                    amp.norm_sqr(),
                    second_order_pn(eta, &config)?,
                    criterion_value(eta, run.steps)?,
                )
            }
            None => {
                let r = survival_series(&config, &schedule)?;
                let last = *r.overlap_moduli.last().expect("n ≥ 1");
                (last, r.p_exact, r.p_second_order, r.criterion_value)
            }
        };
        let regime = match analytic_regime(&schedule)? {
            Some((r, _)) => r.to_string(),
            None => NUMERIC_ONLY.to_string(),
        };
        let mut row: Vec<Cell> = axes
            .iter()
            .zip(point)
            .map(|(a, &v)| match a.axis {
                Axis::Steps => Cell::from(v as usize),
                _ => Cell::from(v),
            })
            .collect();
        row.extend([
            Cell::from(run.steps),
            Cell::from(eta_n),
            Cell::from(p_exact),
            Cell::from(p2),
            Cell::from(criterion),
            Cell::text(regime),
        ]);
        Ok(PointOutcome {
            row,
            perturbative: config.is_perturbative(),
        })
    };
    inner().map_err(at)
}

/// One row per grid point, in lexicographic order of the grid coordinates.
pub fn sweep(args: &SweepArgs, file: &FileConfig) -> CliResult<Report> {
    let specs: &[String] = if args.grid.is_empty() {
        file.grid.as_deref().unwrap_or(&[])
    } else {
        &args.grid
    };
    if specs.is_empty() {
        return Err(CliError::Validation(
            "sweep needs at least one --grid axis".into(),
        ));
    }
    if specs.len() > 2 {
        return Err(CliError::Validation(format!(
            "sweep takes one or two grid axes, got {}",
            specs.len()
        )));
    }
    let axes = specs
        .iter()
        .map(|s| parse_axis(s))
        .collect::<CliResult<Vec<_>>>()?;
    if axes.len() == 2 && axes[0].axis == axes[1].axis {
        return Err(CliError::Validation(format!(
            "grid axis {} given twice",
            axes[0].axis.column()
        )));
    }

    let run = RunParams::merge(&args.run, file);
    let sched = ScheduleParams::merge(&args.schedule, file);
    for a in &axes {
        let fits = match a.axis {
            Axis::Eta => sched.kind == ScheduleKind::Constant,
            Axis::Alpha | Axis::Beta => {
                matches!(
                    sched.kind,
                    ScheduleKind::PowerLaw | ScheduleKind::Exponential
                )
            }
            _ => true,
        };
        if !fits {
            return Err(CliError::Validation(format!(
                "grid axis {} does not apply to a {} schedule",
                a.axis.column(),
                sched.kind_name()
            )));
        }
    }

    let points = grid_points(&axes)?;
    let threads = thread_count()?;
    let eval = |p: &Vec<f64>| evaluate(&axes, p, run, &sched);
    // Per-point warnings are replaced by the aggregate note below.
    let level = log::max_level();
    log::set_max_level(level.min(log::LevelFilter::Error));
    let outcomes: CliResult<Vec<CliResult<PointOutcome>>> = match threads {
        None | Some(1) => Ok(points.iter().map(eval).collect()),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Runtime(format!("cannot start worker pool: {e}")))
            .map(|pool| pool.install(|| points.par_iter().map(eval).collect())),
    };
    log::set_max_level(level);
    let outcomes = outcomes?;

    let mut columns: Vec<&str> = axes.iter().map(|a| a.axis.column()).collect();
    columns.extend(RUN_COLUMNS);
    let mut report = Report::new("sweep", &columns);
    report.param("omega", run.omega);
    report.param("T", run.time);
    report.param("n", run.steps);
    report.param("schedule", sched.kind_name());
    report.param("grid", specs.to_vec());

    let mut loose = 0usize;
    for outcome in outcomes {
        let o = outcome?;
        loose += usize::from(!o.perturbative);
        report.push_row(o.row);
    }
    report.summarize("points", report.rows.len());
    report.summarize("non_perturbative_points", loose);
    if loose > 0 {
        report.notes.push(format!(
            "{loose} of {} grid points have V·δ² ≥ {}; second-order values there are unreliable",
            report.rows.len(),
            zeno_core::qubit::PERTURBATIVE_WARN_THRESHOLD
        ));
    }
    Ok(report)
}
