// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Second-order survival probability and regime classification.
//!
//! At second order in `δ = T/n`,
//!
//! ```text
//! p_n ≈ 1 - 2·S(η, n)·V·δ²,   S(η, n) = n/2 + Σ_{k=1}^{n-1} (n-k)·η^k
//! ```
//!
//! where the `k`-th term counts the branch pairs whose two flips are `k`
//! steps apart. The system freezes (`p_n → 1`) iff the criterion
//! `C(η, n) = Σ (n-k)·η^k / n²` vanishes as `n → ∞`. Its closed form is
//! `[nη(1-η) + η(η^n - 1)] / ((1-η)²·n²)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZenoError};
use crate::numeric::{self, NeumaierSum};
use crate::qubit::EvolutionConfig;
use crate::schedule::OverlapSchedule;

/// Below this gap `1 - η` the closed form is replaced by direct summation.
pub const CLOSED_FORM_MIN_GAP: f64 = 1e-4;

/// Below this step count the direct sum is cheap and exact enough to always use.
pub const CLOSED_FORM_MIN_STEPS: usize = 256;

/// Labelling tolerance of the numeric probe, in units of `V·T²`.
pub const PROBE_TOLERANCE: f64 = 1e-3;

/// Maximum spread between the last two accelerated estimates, in units of `V·T²`.
pub const PROBE_SPREAD_LIMIT: f64 = PROBE_TOLERANCE / 4.0;

/// Smallest step count the numeric probe starts from.
const PROBE_MIN_POWER: u32 = 4;

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(ZenoError::invalid(
            "eta",
            format!("must lie in [0, 1], got {eta}"),
        ));
    }
    Ok(())
}

fn check_steps(n: usize) -> Result<()> {
    if n == 0 {
        return Err(ZenoError::invalid("n", "step count must be at least 1"));
    }
    Ok(())
}

/// `Σ_{k=1}^{n-1} (n-k)·η^k` by compensated summation.
pub fn tail_direct(eta: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mut acc = NeumaierSum::new();
    let mut power = 1.0;
    for k in 1..n {
        // refresh the running power now and then so rounding does not pile up
        power = if k % 64 == 0 {
            eta.powi(k as i32)
        } else {
            power * eta
        };
        if power == 0.0 {
            break;
        }
        let term = (nf - k as f64) * power;
        acc += term;
        if eta < 1.0 && term / (1.0 - eta) < acc.value() * 1e-20 {
            break;
        }
    }
    acc.value()
}

/// `[nη(1-η) + η(η^n - 1)] / (1-η)²`, valid for `η < 1`.
pub fn tail_closed_form(eta: f64, n: usize) -> f64 {
    let gap = 1.0 - eta;
    let nf = n as f64;
    // η^n - 1 through expm1 keeps the small-gap digits
    let pow_minus_one = if eta == 0.0 {
        -1.0
    } else {
        (nf * (-gap).ln_1p()).exp_m1()
    };
    eta * (nf * gap + pow_minus_one) / (gap * gap)
}

fn tail(eta: f64, n: usize) -> f64 {
    if n < CLOSED_FORM_MIN_STEPS || 1.0 - eta < CLOSED_FORM_MIN_GAP {
        tail_direct(eta, n)
    } else {
        tail_closed_form(eta, n)
    }
}

/// `S(η, n) = n/2 + Σ_{k=1}^{n-1} (n-k)·η^k`.
pub fn zeno_sum(eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    check_steps(n)?;
    Ok(0.5 * n as f64 + tail(eta, n))
}

/// `S` through the closed form regardless of the stability switch (`η < 1`).
pub fn zeno_sum_closed_form(eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    check_steps(n)?;
    if eta == 1.0 {
        return Err(ZenoError::invalid(
            "eta",
            "closed form is singular at eta = 1",
        ));
    }
    Ok(0.5 * n as f64 + tail_closed_form(eta, n))
}

/// `S` through compensated direct summation regardless of the stability switch.
pub fn zeno_sum_direct(eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    check_steps(n)?;
    Ok(0.5 * n as f64 + tail_direct(eta, n))
}

/// Prefix sums `S_1, …, S_n` for per-step overlap moduli `η_1, …, η_n`.
///
/// Two flips at steps `i < j` contribute `η_i ⋯ η_{j-1}`; with all moduli
/// equal this reduces to [`zeno_sum`] at every prefix length.
pub fn zeno_sum_prefixes(moduli: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(moduli.len());
    let mut pair_sum = NeumaierSum::new();
    // sum over i < j of the products ending at step j - 1
    let mut ending_here = 0.0;
    for (j, _) in moduli.iter().enumerate() {
        if j > 0 {
            ending_here = moduli[j - 1] * (1.0 + ending_here);
            pair_sum += ending_here;
        }
        out.push(0.5 * (j + 1) as f64 + pair_sum.value());
    }
    out
}

/// `1 - 2·S(η, n)·V·(T/n)²`, with `n` taken from `config`.
pub fn second_order_pn(eta: f64, config: &EvolutionConfig) -> Result<f64> {
    config.validate()?;
    config.warn_if_not_perturbative();
    let s = zeno_sum(eta, config.steps)?;
    Ok(1.0 - 2.0 * s * config.expansion_parameter())
}

/// `C(η, n) = Σ_{k=1}^{n-1} (n-k)·η^k / n²`.
pub fn criterion_value(eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    check_steps(n)?;
    let nf = n as f64;
    Ok(tail(eta, n) / (nf * nf))
}

/// `2·(1/α + (e^{-α} - 1)/α²)`, the limiting coefficient of the `β = 1` power law.
///
/// Tends to 1 as `α → 0` and to 0 as `α → ∞`.
pub fn intermediate_coefficient(alpha: f64) -> f64 {
    if alpha < 0.1 {
        // (α + e^{-α} - 1)/α² = Σ_j (-α)^j / (j+2)!
        let mut term = 0.5;
        let mut acc = 0.0;
        for j in 0..20 {
            acc += term;
            term *= -alpha / (j as f64 + 3.0);
        }
        2.0 * acc
    } else {
        2.0 * (alpha + (-alpha).exp_m1()) / (alpha * alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `p_n → 1`
    Zeno,
    /// `p_n → 1 - V·T²`
    FreeEvolution,
    /// `p_n → 1 - k·V·T²` with `0 < k < 1`
    Intermediate,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Zeno => "Zeno",
            Regime::FreeEvolution => "FreeEvolution",
            Regime::Intermediate => "Intermediate",
        })
    }
}

/// One evaluation point of the numeric probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub n: usize,
    pub eta_n: f64,
    pub criterion: f64,
    pub p_second_order: f64,
}

/// Asymptotic behaviour of a schedule: `lim p_n = 1 - k·V·T²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeClassification {
    pub regime: Regime,
    /// `k`: 0 for Zeno, 1 for free evolution, in `(0, 1)` otherwise.
    pub coefficient: f64,
    /// Raw extrapolated `k` when the classification is numeric.
    pub extrapolated_coefficient: Option<f64>,
    pub diagnostics: Vec<Probe>,
}

impl RegimeClassification {
    fn analytic(regime: Regime, coefficient: f64) -> Self {
        RegimeClassification {
            regime,
            coefficient,
            extrapolated_coefficient: None,
            diagnostics: Vec::new(),
        }
    }

    /// `1 - k·V·T²`.
    pub fn limit_p(&self, variance: f64, total_time: f64) -> f64 {
        1.0 - self.coefficient * variance * total_time * total_time
    }
}

/// Closed-form asymptotic regime of a family schedule.
pub fn classify_schedule(schedule: &OverlapSchedule) -> Result<RegimeClassification> {
    schedule.validate()?;
    let (regime, k) = match *schedule {
        OverlapSchedule::Constant { eta } if eta.norm() >= 1.0 - 1e-12 => {
            (Regime::FreeEvolution, 1.0)
        }
        OverlapSchedule::Constant { .. } => (Regime::Zeno, 0.0),
        OverlapSchedule::PowerLaw { beta, .. } if beta < 1.0 => (Regime::Zeno, 0.0),
        OverlapSchedule::PowerLaw { beta, .. } if beta > 1.0 => (Regime::FreeEvolution, 1.0),
        OverlapSchedule::PowerLaw { alpha, .. } => {
            (Regime::Intermediate, intermediate_coefficient(alpha))
        }
        OverlapSchedule::Exponential { .. } => (Regime::FreeEvolution, 1.0),
        OverlapSchedule::Explicit { .. } => return Err(ZenoError::NumericOnly),
    };
    Ok(RegimeClassification::analytic(regime, k))
}

/// `lim_{n→∞} p_n` for a family schedule.
pub fn limit_pn(schedule: &OverlapSchedule, variance: f64, total_time: f64) -> Result<f64> {
    if !(variance.is_finite() && variance >= 0.0) {
        return Err(ZenoError::invalid(
            "V",
            format!("must be non-negative, got {variance}"),
        ));
    }
    if !(total_time.is_finite() && total_time > 0.0) {
        return Err(ZenoError::invalid(
            "T",
            format!("must be positive, got {total_time}"),
        ));
    }
    Ok(classify_schedule(schedule)?.limit_p(variance, total_time))
}

/// Empirical regime from the second-order formula on the grid `n = 2^k ≤ n_max`.
///
/// The normalized deficit `(1 - p_n)/(V·T²) = 1/n + 2·C(η_n, n)` is
/// accelerated with iterated Aitken passes; the limit is labelled against 0
/// and 1 at [`PROBE_TOLERANCE`]. A spread above [`PROBE_SPREAD_LIMIT`] is
/// reported as [`ZenoError::NonConvergent`] rather than labelled.
///
/// For an explicit schedule the grid runs over prefix lengths of the sequence,
/// using the per-step moduli.
pub fn numeric_limit_probe(
    schedule: &OverlapSchedule,
    config: &EvolutionConfig,
    n_max: usize,
) -> Result<RegimeClassification> {
    schedule.validate()?;
    config.validate()?;
    if n_max < 64 {
        return Err(ZenoError::invalid(
            "n_max",
            format!("must be at least 64, got {n_max}"),
        ));
    }
    let scale = config.limit_scale();
    if scale <= 0.0 {
        return Err(ZenoError::invalid("omega", "the probe needs V·T² > 0"));
    }

    let diagnostics = match schedule {
        OverlapSchedule::Explicit { overlaps } => {
            let moduli: Vec<f64> = overlaps.iter().map(|z| z.norm()).collect();
            let prefixes = zeno_sum_prefixes(&moduli);
            power_grid(PROBE_MIN_POWER, n_max.min(moduli.len()))
                .map(|n| {
                    let nf = n as f64;
                    let s = prefixes[n - 1];
                    Probe {
                        n,
                        eta_n: moduli[n - 1],
                        criterion: (s - 0.5 * nf) / (nf * nf),
                        p_second_order: 1.0 - 2.0 * s * scale / (nf * nf),
                    }
                })
                .collect::<Vec<_>>()
        }
        _ => {
            let first = schedule
                .first_realizable_power()
                .ok_or_else(|| ZenoError::invalid("schedule", "no realizable step count"))?;
            power_grid(first.max(PROBE_MIN_POWER), n_max)
                .map(|n| {
                    let eta = schedule.family_eta(n).unwrap_or(1.0);
                    let nf = n as f64;
                    let criterion = criterion_value(eta, n)?;
                    Ok(Probe {
                        n,
                        eta_n: eta,
                        criterion,
                        p_second_order: 1.0 - (1.0 / nf + 2.0 * criterion) * scale,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    if diagnostics.len() < 4 {
        return Err(ZenoError::invalid(
            "n_max",
            format!(
                "only {} probe points fit below n_max = {n_max}",
                diagnostics.len()
            ),
        ));
    }

    let deficits: Vec<f64> = diagnostics
        .iter()
        .map(|p| 1.0 / p.n as f64 + 2.0 * p.criterion)
        .collect();
    let ex = numeric::extrapolate(&deficits, 2).expect("at least four probe points");
    if !ex.estimate.is_finite() || ex.spread > PROBE_SPREAD_LIMIT {
        return Err(ZenoError::NonConvergent {
            estimate: 1.0 - ex.estimate * scale,
            spread: ex.spread * scale,
        });
    }
    let k = ex.estimate;
    let (regime, coefficient) = if k.abs() <= PROBE_TOLERANCE {
        (Regime::Zeno, 0.0)
    } else if (k - 1.0).abs() <= PROBE_TOLERANCE {
        (Regime::FreeEvolution, 1.0)
    } else if 0.0 < k && k < 1.0 {
        (Regime::Intermediate, k)
    } else {
        return Err(ZenoError::NonConvergent {
            estimate: 1.0 - k * scale,
            spread: ex.spread * scale,
        });
    };
    Ok(RegimeClassification {
        regime,
        coefficient,
        extrapolated_coefficient: Some(k),
        diagnostics,
    })
}

fn power_grid(min_power: u32, n_max: usize) -> impl Iterator<Item = usize> {
    (min_power..usize::BITS)
        .map(|k| 1usize << k)
        .take_while(move |&n| n <= n_max)
}
