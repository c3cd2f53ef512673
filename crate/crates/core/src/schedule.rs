// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence schedules: the environment overlap `⟨E_0|E_1⟩` met after each free step.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZenoError};

/// Slack allowed on `|η| ≤ 1` for explicit, user-supplied overlaps.
const MODULUS_SLACK: f64 = 1e-12;

/// How strongly each environment records the system state.
///
/// `η = 1` is no decoherence, `η = 0` is a perfect record. The family
/// variants realize one real overlap `η_n` shared by every step of a run with
/// `n` steps; `Explicit` gives one complex overlap per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OverlapSchedule {
    Constant {
        eta: Complex64,
    },
    /// `η_n = 1 - α / n^β`
    PowerLaw {
        alpha: f64,
        beta: f64,
    },
    /// `η_n = 1 - α·e^{-βn}`
    Exponential {
        alpha: f64,
        beta: f64,
    },
    Explicit {
        overlaps: Vec<Complex64>,
    },
}

/// Per-step overlaps of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Overlaps<'a> {
    Uniform(Complex64),
    PerStep(&'a [Complex64]),
}

impl Overlaps<'_> {
    /// Overlap applied after step `i` (zero-based).
    pub fn at(&self, i: usize) -> Complex64 {
        match self {
            Overlaps::Uniform(eta) => *eta,
            Overlaps::PerStep(seq) => seq[i],
        }
    }
}

fn check_family(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(ZenoError::invalid(
            "alpha",
            format!("must be positive, got {alpha}"),
        ));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(ZenoError::invalid(
            "beta",
            format!("must be positive, got {beta}"),
        ));
    }
    Ok(())
}

impl OverlapSchedule {
    pub fn constant(eta: f64) -> Result<Self> {
        Self::constant_complex(Complex64::new(eta, 0.0))
    }

    pub fn constant_complex(eta: Complex64) -> Result<Self> {
        if !(eta.re.is_finite() && eta.im.is_finite()) || eta.norm() > 1.0 + MODULUS_SLACK {
            return Err(ZenoError::invalid(
                "eta",
                format!("overlap modulus must not exceed 1, got {}", eta.norm()),
            ));
        }
        Ok(OverlapSchedule::Constant { eta })
    }

    pub fn power_law(alpha: f64, beta: f64) -> Result<Self> {
        check_family(alpha, beta)?;
        Ok(OverlapSchedule::PowerLaw { alpha, beta })
    }

    pub fn exponential(alpha: f64, beta: f64) -> Result<Self> {
        check_family(alpha, beta)?;
        Ok(OverlapSchedule::Exponential { alpha, beta })
    }

    pub fn explicit(overlaps: Vec<Complex64>) -> Result<Self> {
        if let Some((i, z)) = overlaps.iter().enumerate().find(|(_, z)| {
            !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1.0 + MODULUS_SLACK
        }) {
            return Err(ZenoError::invalid(
                "overlaps",
                format!("overlap at step {} has modulus {} > 1", i + 1, z.norm()),
            ));
        }
        Ok(OverlapSchedule::Explicit { overlaps })
    }

    /// Re-checks the invariants of a value built without the constructors
    /// (e.g. deserialized).
    pub fn validate(&self) -> Result<()> {
        match self {
            OverlapSchedule::Constant { eta } => Self::constant_complex(*eta).map(drop),
            OverlapSchedule::PowerLaw { alpha, beta }
            | OverlapSchedule::Exponential { alpha, beta } => check_family(*alpha, *beta),
            OverlapSchedule::Explicit { overlaps } => Self::explicit(overlaps.clone()).map(drop),
        }
    }

    pub fn is_family(&self) -> bool {
        !matches!(self, OverlapSchedule::Explicit { .. })
    }

    /// The real overlap `η_n` a family realizes for a run of `n` steps, unchecked.
    ///
    /// `None` for `Explicit`; the modulus for a complex constant.
    pub fn family_eta(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        match self {
            OverlapSchedule::Constant { eta } => Some(eta.norm()),
            OverlapSchedule::PowerLaw { alpha, beta } => Some(1.0 - alpha * nf.powf(-beta)),
            OverlapSchedule::Exponential { alpha, beta } => Some(1.0 - alpha * (-beta * nf).exp()),
            OverlapSchedule::Explicit { .. } => None,
        }
    }

    /// Whether the schedule yields valid overlaps for a run of `n` steps.
    pub fn check_steps(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(ZenoError::invalid("n", "step count must be at least 1"));
        }
        match self {
            OverlapSchedule::Explicit { overlaps } if overlaps.len() != n => {
                Err(ZenoError::ScheduleLength {
                    len: overlaps.len(),
                    steps: n,
                })
            }
            OverlapSchedule::PowerLaw { .. } | OverlapSchedule::Exponential { .. } => {
                let eta = self.family_eta(n).unwrap_or(f64::NAN);
                if (0.0..=1.0).contains(&eta) {
                    Ok(())
                } else {
                    Err(ZenoError::invalid(
                        "schedule",
                        format!("η_n = {eta} at n = {n} lies outside [0, 1]"),
                    ))
                }
            }
            _ => Ok(()),
        }
    }

    /// The overlaps of a run with `n` steps.
    pub fn realize(&self, n: usize) -> Result<Overlaps<'_>> {
        self.check_steps(n)?;
        Ok(match self {
            OverlapSchedule::Constant { eta } => Overlaps::Uniform(*eta),
            OverlapSchedule::Explicit { overlaps } => Overlaps::PerStep(overlaps),
            _ => Overlaps::Uniform(Complex64::new(self.family_eta(n).unwrap_or(1.0), 0.0)),
        })
    }

    /// Smallest power-of-two step count at which a family is realizable.
    pub(crate) fn first_realizable_power(&self) -> Option<u32> {
        (0..63).find(|&k| self.check_steps(1usize << k).is_ok())
    }

    pub fn describe(&self) -> String {
        match self {
            OverlapSchedule::Constant { eta } if eta.im == 0.0 => {
                format!("constant(eta={})", eta.re)
            }
            OverlapSchedule::Constant { eta } => format!("constant(eta={}{:+}i)", eta.re, eta.im),
            OverlapSchedule::PowerLaw { alpha, beta } => {
                format!("power-law(alpha={alpha}, beta={beta})")
            }
            OverlapSchedule::Exponential { alpha, beta } => {
                format!("exponential(alpha={alpha}, beta={beta})")
            }
            OverlapSchedule::Explicit { overlaps } => format!("explicit({} steps)", overlaps.len()),
        }
    }
}
