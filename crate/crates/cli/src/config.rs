// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON config files and their merge with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use zeno_core::{Complex64, OverlapSchedule, ZenoError};

use crate::args::{Format, Model, RunArgs, ScheduleArgs, ScheduleKind};

/// Failure of one invocation, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or out-of-range input. Exit code 2.
    Validation(String),
    /// A size cap was exceeded. Exit code 3.
    Capacity(String),
    /// Output could not be written, or an internal consistency check failed. Exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Capacity(m) | CliError::Runtime(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<ZenoError> for CliError {
    fn from(e: ZenoError) -> Self {
        if e.is_capacity() {
            CliError::Capacity(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("write failed: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// One overlap in a config file: a real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum OverlapValue {
    Real(f64),
    Complex([f64; 2]),
}

impl From<OverlapValue> for Complex64 {
    fn from(v: OverlapValue) -> Self {
        match v {
            OverlapValue::Real(re) => Complex64::new(re, 0.0),
            OverlapValue::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// Every key is optional; keys irrelevant to the invoked command are ignored.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub omega: Option<f64>,
    #[serde(alias = "T")]
    pub time: Option<f64>,
    #[serde(alias = "n")]
    pub steps: Option<usize>,
    pub schedule: Option<ScheduleKind>,
    pub eta: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub overlaps: Option<Vec<OverlapValue>>,
    pub oracle: Option<bool>,
    pub n_max: Option<usize>,
    pub grid: Option<Vec<String>>,
    pub model: Option<Model>,
    pub mass: Option<f64>,
    pub sigma: Option<f64>,
    pub hbar: Option<f64>,
    pub v: Option<f64>,
    pub c_ratio: Option<f64>,
    pub diffusion: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read config file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Validation(format!("invalid config file {}: {e}", path.display()))
        })
    }
}

/// Run parameters after the merge, defaults filled in.
#[derive(Debug, Clone, Copy)]
pub struct RunParams {
    pub omega: f64,
    pub time: f64,
    pub steps: usize,
}

impl RunParams {
    pub fn merge(flags: &RunArgs, file: &FileConfig) -> Self {
        RunParams {
            omega: flags.omega.or(file.omega).unwrap_or(1.0),
            time: flags.time.or(file.time).unwrap_or(1.0),
            steps: flags.steps.or(file.steps).unwrap_or(100),
        }
    }
}

/// Schedule parameters after the merge; `None` where neither source set a value.
#[derive(Debug, Clone)]
pub struct ScheduleParams {
    pub kind: ScheduleKind,
    pub eta: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub overlaps: Option<Vec<Complex64>>,
}

impl ScheduleParams {
    pub fn merge(flags: &ScheduleArgs, file: &FileConfig) -> Self {
        ScheduleParams {
            kind: flags
                .schedule
                .or(file.schedule)
                .unwrap_or(ScheduleKind::Constant),
            eta: flags.eta.or(file.eta),
            alpha: flags.alpha.or(file.alpha),
            beta: flags.beta.or(file.beta),
            overlaps: file
                .overlaps
                .as_ref()
                .map(|v| v.iter().copied().map(Complex64::from).collect()),
        }
    }

    pub fn build(&self) -> CliResult<OverlapSchedule> {
        let stray = |what: &str| {
            CliError::Validation(format!(
                "`{what}` does not apply to a {} schedule",
                self.kind_name()
            ))
        };
        if self.overlaps.is_some() && self.kind != ScheduleKind::Explicit {
            return Err(stray("overlaps"));
        }
        let schedule = match self.kind {
            ScheduleKind::Constant => {
                if self.alpha.is_some() {
                    return Err(stray("alpha"));
                }
                if self.beta.is_some() {
                    return Err(stray("beta"));
                }
                OverlapSchedule::constant(self.eta.unwrap_or(1.0))?
            }
            ScheduleKind::PowerLaw | ScheduleKind::Exponential => {
                if self.eta.is_some() {
                    return Err(stray("eta"));
                }
                let (Some(alpha), Some(beta)) = (self.alpha, self.beta) else {
                    return Err(CliError::Validation(format!(
                        "a {} schedule needs both alpha and beta",
                        self.kind_name()
                    )));
                };
                if self.kind == ScheduleKind::PowerLaw {
                    OverlapSchedule::power_law(alpha, beta)?
                } else {
                    OverlapSchedule::exponential(alpha, beta)?
                }
            }
            ScheduleKind::Explicit => {
                if self.eta.is_some() || self.alpha.is_some() || self.beta.is_some() {
                    return Err(CliError::Validation(
                        "an explicit schedule takes only the `overlaps` array".into(),
                    ));
                }
                let overlaps = self.overlaps.clone().ok_or_else(|| {
                    CliError::Validation(
                        "an explicit schedule reads its overlaps from the config file's `overlaps` array".into(),
                    )
                })?;
                OverlapSchedule::explicit(overlaps)?
            }
        };
        Ok(schedule)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ScheduleKind::Constant => "constant",
            ScheduleKind::PowerLaw => "power-law",
            ScheduleKind::Exponential => "exponential",
            ScheduleKind::Explicit => "explicit",
        }
    }
}

/// Reads the sweep thread count from `ZENO_THREADS`; unset means one thread and 0 means one per core.
pub fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var("ZENO_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Validation(format!("ZENO_THREADS: {e}"))),
        Ok(s) => s.trim().parse::<usize>().map(Some).map_err(|_| {
            CliError::Validation(format!(
                "ZENO_THREADS must be a non-negative integer, got {s:?}"
            ))
        }),
    }
}
