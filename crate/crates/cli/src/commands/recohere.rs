// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use zeno_core::recoherence_demo;

use crate::config::{CliError, CliResult};
use crate::report::{Cell, Report};

const RHO_TOLERANCE: f64 = 1e-12;

/// Reduced system state after each stage. The JSON summary holds the stages
/// in their serialized form, which parses back to identical matrices.
pub fn recohere() -> CliResult<Report> {
    let stages = recoherence_demo();
    let mut report = Report::new(
        "recohere",
        &[
            "stage",
            "label",
            "rho00_re",
            "rho00_im",
            "rho01_re",
            "rho01_im",
            "rho10_re",
            "rho10_im",
            "rho11_re",
            "rho11_im",
            "coherence",
        ],
    );
    for (i, stage) in stages.iter().enumerate() {
        stage
            .rho
            .check(RHO_TOLERANCE)
            .map_err(|e| CliError::Runtime(format!("stage `{}`: {e}", stage.label)))?;
        let mut row = vec![Cell::from(i), Cell::text(stage.label.clone())];
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let z = stage.rho.get(r, c);
            row.push(Cell::from(z.re));
            row.push(Cell::from(z.im));
        }
        row.push(Cell::from(stage.coherence));
        report.push_row(row);
        report
            .notes
            .push(format!("{}: |ρ01| = {}", stage.label, stage.coherence));
    }
    let value = serde_json::to_value(&stages)
        .map_err(|e| CliError::Runtime(format!("cannot serialize stages: {e}")))?;
    report.summarize("stages", value);
    Ok(report)
}
