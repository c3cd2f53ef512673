// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Compensated summation and sequence acceleration.

use std::ops::AddAssign;

/// Kahan–Babuška–Neumaier running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// One pass of Aitken's Δ² transform.
///
/// Returns `len - 2` terms. Where the second difference vanishes to rounding
/// the sequence is treated as already converged and the latest term is kept.
pub fn aitken(seq: &[f64]) -> Vec<f64> {
    seq.windows(3)
        .map(|w| {
            let (s0, s1, s2) = (w[0], w[1], w[2]);
            let d1 = s1 - s0;
            let d2 = s2 - s1;
            let dd = d2 - d1;
            let scale = s0.abs().max(s1.abs()).max(s2.abs()).max(f64::MIN_POSITIVE);
            if dd.abs() <= 64.0 * f64::EPSILON * scale {
                s2
            } else {
                s2 - d2 * d2 / dd
            }
        })
        .collect()
}

/// Limit estimate of a slowly converging sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    pub estimate: f64,
    /// Distance between the two most recent estimates at the deepest level used.
    pub spread: f64,
    /// Number of Aitken passes applied.
    pub passes: usize,
}

/// Iterated Aitken acceleration, at most `max_passes` deep.
///
/// The estimate is the last term of the deepest level that still has at least
/// two terms, so that a spread can be reported next to it.
pub fn extrapolate(seq: &[f64], max_passes: usize) -> Option<Extrapolation> {
    if seq.len() < 2 {
        return None;
    }
    let mut level = seq.to_vec();
    let mut passes = 0;
    while passes < max_passes && level.len() >= 4 {
        level = aitken(&level);
        passes += 1;
    }
    let n = level.len();
    Some(Extrapolation {
        estimate: level[n - 1],
        spread: (level[n - 1] - level[n - 2]).abs(),
        passes,
    })
}
