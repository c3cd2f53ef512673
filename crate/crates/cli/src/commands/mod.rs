// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

mod classify;
mod physical;
mod recohere;
mod simulate;
mod sweep;

pub use classify::classify;
pub use physical::physical;
pub use recohere::recohere;
pub use simulate::simulate;
pub use sweep::sweep;

use zeno_core::{classify_schedule, OverlapSchedule, Regime, ZenoError};

use crate::config::CliResult;

/// Columns shared by every per-run table.
pub const RUN_COLUMNS: [&str; 6] = [
    "n",
    "eta_n",
    "p_exact",
    "p_second_order",
    "criterion",
    "regime",
];

/// Label written in the `regime` column for schedules without a closed-form regime.
pub const NUMERIC_ONLY: &str = "numeric-only";

/// Analytic regime and coefficient `k`, or `None` for explicit schedules.
pub fn analytic_regime(schedule: &OverlapSchedule) -> CliResult<Option<(Regime, f64)>> {
    match classify_schedule(schedule) {
        Ok(c) => Ok(Some((c.regime, c.coefficient))),
        Err(ZenoError::NumericOnly) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// One-line statement of the limit, e.g. `Zeno, lim p = 1`.
pub fn regime_line(regime: Regime, k: f64, variance: f64, time: f64) -> String {
    let limit = 1.0 - k * variance * time * time;
    match regime {
        Regime::Zeno => "Zeno, lim p = 1".to_string(),
        Regime::FreeEvolution => format!("FreeEvolution, lim p = 1 − VT² = {limit}"),
        Regime::Intermediate => format!("Intermediate, lim p ≈ {limit:.4} (k = {k:.4})"),
    }
}
