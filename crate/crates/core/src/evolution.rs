// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact survival probability of the alternating free-evolution / decoherence chain.
//!
//! The system starts in `|0⟩`. Each of the `n` steps applies the free unitary
//! and then entangles the system with a fresh environment,
//! `|0⟩ → |0⟩|E_0⟩`, `|1⟩ → |1⟩|E_1⟩`. The survival probability `p_n` is the
//! joint probability that the system ends in `|0⟩` *and* every environment
//! recorded `0`.
//!
//! Two independent routes compute it:
//!
//! * [`propagate_projected`] projects each environment on `⟨E_0|` as soon as
//!   it is created, which only rescales the `|1⟩` amplitude by the overlap.
//!   Linear in `n`.
//! * [`enumerate_branches`] sums the amplitude of every branch word over
//!   `{=, ≠}^n` explicitly. Exponential in `n`; used as an oracle.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::error::{Result, ZenoError};
use crate::qubit::{EvolutionConfig, FreeEvolutionUnitary};
use crate::schedule::{OverlapSchedule, Overlaps};

/// Largest step count the branch enumeration accepts (2^20 words).
pub const ORACLE_MAX_STEPS: usize = 20;

/// Outcome of the linear-time projected propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedChain {
    /// Final projected amplitude `⟨0 E_0 … E_0|Ψ_n⟩`.
    pub amplitude: Complex64,
    /// `p_i` after each step `i = 1..n`.
    pub series: Vec<f64>,
}

impl ProjectedChain {
    pub fn probability(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

fn step(
    u: &FreeEvolutionUnitary,
    (a0, a1): (Complex64, Complex64),
    eta: Complex64,
) -> (Complex64, Complex64) {
    let next0 = u.c_eq_0() * a0 + u.c_neq_0() * a1;
    let next1 = u.c_neq_1() * a0 + u.c_eq_1() * a1;
    // ⟨E_0|E_0⟩ = 1 leaves the |0⟩ branch alone
    (next0, next1 * eta)
}

/// Final projected amplitude without recording the per-step series.
pub fn final_amplitude(
    u: &FreeEvolutionUnitary,
    schedule: &OverlapSchedule,
    n: usize,
) -> Result<Complex64> {
    let overlaps = schedule.realize(n)?;
    let mut amps = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    for i in 0..n {
        amps = step(u, amps, overlaps.at(i));
    }
    Ok(amps.0)
}

/// Propagates the projected amplitude pair `(A_0, A_1)` through `n` steps.
pub fn propagate_projected(
    u: &FreeEvolutionUnitary,
    schedule: &OverlapSchedule,
    n: usize,
) -> Result<ProjectedChain> {
    let overlaps = schedule.realize(n)?;
    let mut amps = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let mut series = Vec::with_capacity(n);
    for i in 0..n {
        amps = step(u, amps, overlaps.at(i));
        series.push(amps.0.norm_sqr());
    }
    Ok(ProjectedChain {
        amplitude: amps.0,
        series,
    })
}

/// One letter of a branch word: the system state was kept (`=`) or flipped (`≠`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepLetter {
    Keep,
    Flip,
}

impl StepLetter {
    pub fn symbol(self) -> char {
        match self {
            StepLetter::Keep => '=',
            StepLetter::Flip => '≠',
        }
    }
}

/// A branch word over `{=, ≠}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchWord(pub Vec<StepLetter>);

impl FromStr for BranchWord {
    type Err = ZenoError;

    /// Parses `=` and `≠`; `!` and `x` are accepted as ASCII spellings of `≠`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '=' => Ok(StepLetter::Keep),
                '≠' | '!' | 'x' => Ok(StepLetter::Flip),
                other => Err(ZenoError::invalid(
                    "word",
                    format!("unexpected letter {other:?}; expected '=' or '≠'"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(BranchWord)
    }
}

impl fmt::Display for BranchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.symbol()))
    }
}

/// System-state trajectory `b_1 … b_n` induced by a branch word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateWord {
    pub bits: Vec<u8>,
}

impl StateWord {
    /// `b_n = 0`, i.e. the word has an even number of flips.
    pub fn ends_in_ground(&self) -> bool {
        self.bits.last().map_or(true, |&b| b == 0)
    }

    /// Number of steps spent in `|1⟩`, i.e. the power of the overlap in the branch amplitude.
    pub fn excited_steps(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

/// `b_0 = 0`; `b_i = b_{i-1}` on `=`, `b_i = 1 - b_{i-1}` on `≠`.
pub fn b_word_from_alpha(word: &[StepLetter]) -> StateWord {
    let bits = word
        .iter()
        .scan(0u8, |b, letter| {
            if *letter == StepLetter::Flip {
                *b ^= 1;
            }
            Some(*b)
        })
        .collect();
    StateWord { bits }
}

/// Result of the explicit branch sum, with the visit counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSum {
    pub amplitude: Complex64,
    pub words_visited: u64,
    pub words_contributing: u64,
}

impl BranchSum {
    pub fn probability(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

/// Sums `c_{α_1}^{b_1} ⋯ c_{α_n}^{b_n} · ⟨E^1_0|E^1_{b_1}⟩ ⋯ ⟨E^n_0|E^n_{b_n}⟩`
/// over every word `α` whose state word ends in `0`.
pub fn enumerate_branches_detailed(
    u: &FreeEvolutionUnitary,
    schedule: &OverlapSchedule,
    n: usize,
) -> Result<BranchSum> {
    if n > ORACLE_MAX_STEPS {
        return Err(ZenoError::OracleCapacity {
            steps: n,
            max: ORACLE_MAX_STEPS,
        });
    }
    let overlaps: Overlaps<'_> = schedule.realize(n)?;
    let one = Complex64::new(1.0, 0.0);

    let mut total = Complex64::new(0.0, 0.0);
    let mut visited = 0u64;
    let mut contributing = 0u64;
    let mut letters = vec![StepLetter::Keep; n];
    for mask in 0u64..(1u64 << n) {
        visited += 1;
        for (i, letter) in letters.iter_mut().enumerate() {
            *letter = if mask >> i & 1 == 1 {
                StepLetter::Flip
            } else {
                StepLetter::Keep
            };
        }
        let b = b_word_from_alpha(&letters);
        if !b.ends_in_ground() {
            continue;
        }
        contributing += 1;
        let term =
            letters
                .iter()
                .zip(&b.bits)
                .enumerate()
                .fold(one, |acc, (i, (&letter, &bit))| {
                    let record = if bit == 1 { overlaps.at(i) } else { one };
                    acc * u.coefficient(letter == StepLetter::Flip, bit) * record
                });
        total += term;
    }
    Ok(BranchSum {
        amplitude: total,
        words_visited: visited,
        words_contributing: contributing,
    })
}

/// Survival probability by explicit enumeration of the `2^n` branch words.
pub fn enumerate_branches(
    u: &FreeEvolutionUnitary,
    schedule: &OverlapSchedule,
    n: usize,
) -> Result<f64> {
    enumerate_branches_detailed(u, schedule, n).map(|s| s.probability())
}

/// Exact and second-order survival probabilities of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalResult {
    pub p_exact: f64,
    pub p_second_order: f64,
    pub criterion_value: f64,
    /// Exact `p_i` after each step.
    pub series: Vec<f64>,
    /// Second-order `p_i` after each step.
    pub second_order_series: Vec<f64>,
    /// `|η_i|` applied after each step.
    pub overlap_moduli: Vec<f64>,
}

/// Runs the Rabi realization of `config` against `schedule` and attaches the
/// second-order comparison.
///
/// Family schedules use the overlap `η_n` of the configured `n` at every step.
/// For an explicit schedule the second-order sum uses the per-step moduli.
pub fn survival_series(
    config: &EvolutionConfig,
    schedule: &OverlapSchedule,
) -> Result<SurvivalResult> {
    config.validate()?;
    config.warn_if_not_perturbative();
    let n = config.steps;
    let u = config.unitary();
    let chain = propagate_projected(&u, schedule, n)?;
    let overlaps = schedule.realize(n)?;
    let moduli: Vec<f64> = (0..n).map(|i| overlaps.at(i).norm()).collect();

    let prefixes = analysis::zeno_sum_prefixes(&moduli);
    let x = config.expansion_parameter();
    let second_order_series: Vec<f64> = prefixes.iter().map(|s| 1.0 - 2.0 * s * x).collect();
    let s_n = prefixes[n - 1];
    let nf = n as f64;
    let criterion_value = (s_n - 0.5 * nf) / (nf * nf);

    let (p_second_order, criterion_value) = match schedule.family_eta(n) {
        Some(eta) => (
            analysis::second_order_pn(eta, config)?,
            analysis::criterion_value(eta, n)?,
        ),
        None => (second_order_series[n - 1], criterion_value),
    };

    Ok(SurvivalResult {
        p_exact: chain.probability(),
        p_second_order,
        criterion_value,
        series: chain.series,
        second_order_series,
        overlap_moduli: moduli,
    })
}
