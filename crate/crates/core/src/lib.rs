// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Free evolution against decoherence for a monitored two-level system.
//!
//! A qubit starting in `|0⟩` alternates `n` free-evolution steps of length
//! `δ = T/n` with encounters with fresh environments that partially record
//! its state. The overlap `η` between the two environment records sets how
//! much each encounter decoheres the system. This crate computes
//!
//! * the exact joint survival probability `p_n` ([`evolution`]), by linear
//!   propagation and by brute-force branch enumeration,
//! * its second-order expansion and the Zeno criterion, and the asymptotic
//!   regime of whole schedule families ([`analysis`]),
//! * the overlap schedules of a few physical couplings ([`physical`]),
//! * a recoherence example with a pre-entangled environment ([`register`]).
//!
//! Units are natural (ħ = 1) everywhere except [`physical`].

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod numeric;
pub mod physical;
pub mod qubit;
pub mod register;
pub mod schedule;

pub use analysis::{
    classify_schedule, criterion_value, limit_pn, numeric_limit_probe, second_order_pn, zeno_sum,
    Probe, Regime, RegimeClassification,
};
pub use error::{Result, ZenoError};
pub use evolution::{
    b_word_from_alpha, enumerate_branches, propagate_projected, survival_series, BranchWord,
    StepLetter, SurvivalResult, ORACLE_MAX_STEPS,
};
pub use num_complex::Complex64;
pub use qubit::{EvolutionConfig, FreeEvolutionUnitary};
pub use register::{partial_trace_to_system, recoherence_demo, DensityMatrix2, QubitRegister};
pub use schedule::OverlapSchedule;
