// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! A small state-vector simulator: enough to entangle a system qubit with
//! environment qubits and look at its reduced density matrix.
//!
//! Qubit 0 is the system. Amplitudes are little-endian: basis index
//! `Σ_q bit_q · 2^q`, so `|s e1 e2⟩` lives at index `s + 2·e1 + 4·e2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZenoError};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;

const NORM_TOLERANCE: f64 = 1e-12;

pub type Gate = [[Complex64; 2]; 2];

/// Pure state of `k` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitRegister {
    /// `|0…0⟩` on `qubits` qubits.
    pub fn zero(qubits: usize) -> Result<Self> {
        check_size(qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(QubitRegister { qubits, amplitudes })
    }

    /// Wraps an amplitude vector of length `2^k`; the norm must be 1.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(ZenoError::invalid(
                "amplitudes",
                format!("length must be a power of two ≥ 2, got {len}"),
            ));
        }
        let qubits = len.trailing_zeros() as usize;
        check_size(qubits)?;
        let reg = QubitRegister { qubits, amplitudes };
        let deviation = reg.norm_sqr() - 1.0;
        if deviation.abs() > NORM_TOLERANCE {
            return Err(ZenoError::invalid(
                "amplitudes",
                format!("state is not normalized (|ψ|² - 1 = {deviation:e})"),
            ));
        }
        Ok(reg)
    }

    /// Tensor product; the qubits of `self` keep the low indices.
    pub fn tensor(&self, other: &QubitRegister) -> Result<Self> {
        let qubits = self.qubits + other.qubits;
        check_size(qubits)?;
        let amplitudes = other
            .amplitudes
            .iter()
            .flat_map(|hi| self.amplitudes.iter().map(move |lo| lo * hi))
            .collect();
        Ok(QubitRegister { qubits, amplitudes })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.qubits {
            Ok(())
        } else {
            Err(ZenoError::QubitIndex {
                index,
                qubits: self.qubits,
            })
        }
    }

    /// Controlled-NOT: flips `target` on every basis state whose `control` bit is set.
    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Self> {
        self.check_index(control)?;
        self.check_index(target)?;
        if control == target {
            return Err(ZenoError::SameQubit(control));
        }
        let (cmask, tmask) = (1usize << control, 1usize << target);
        let amplitudes = (0..self.amplitudes.len())
            .map(|i| {
                let source = if i & cmask != 0 { i ^ tmask } else { i };
                self.amplitudes[source]
            })
            .collect();
        Ok(QubitRegister {
            qubits: self.qubits,
            amplitudes,
        })
    }

    /// Applies a 2×2 gate (row-major, `gate[row][col]`) to one qubit.
    pub fn apply_single(&self, qubit: usize, gate: &Gate) -> Result<Self> {
        self.check_index(qubit)?;
        let mut out = self.amplitudes.clone();
        let mask = 1usize << qubit;
        for i in (0..out.len()).filter(|i| i & mask == 0) {
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
            out[i] = gate[0][0] * a0 + gate[0][1] * a1;
            out[i | mask] = gate[1][0] * a0 + gate[1][1] * a1;
        }
        Ok(QubitRegister {
            qubits: self.qubits,
            amplitudes: out,
        })
    }

    /// Applies `gate` to `target` on the part of the state where `control` is 1.
    pub fn apply_controlled(&self, control: usize, target: usize, gate: &Gate) -> Result<Self> {
        self.check_index(control)?;
        self.check_index(target)?;
        if control == target {
            return Err(ZenoError::SameQubit(control));
        }
        let (cmask, tmask) = (1usize << control, 1usize << target);
        let mut out = self.amplitudes.clone();
        for i in (0..out.len()).filter(|i| i & cmask != 0 && i & tmask == 0) {
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | tmask]);
            out[i] = gate[0][0] * a0 + gate[0][1] * a1;
            out[i | tmask] = gate[1][0] * a0 + gate[1][1] * a1;
        }
        Ok(QubitRegister {
            qubits: self.qubits,
            amplitudes: out,
        })
    }

    /// Reduced density matrix of one qubit, every other qubit traced out.
    pub fn partial_trace_to(&self, keep: usize) -> Result<DensityMatrix2> {
        self.check_index(keep)?;
        if self.qubits < 2 {
            return Err(ZenoError::invalid(
                "qubits",
                "partial trace needs at least two qubits",
            ));
        }
        let mask = 1usize << keep;
        let zero = Complex64::new(0.0, 0.0);
        let mut rho = [[zero; 2]; 2];
        for i in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
            let pair = [self.amplitudes[i], self.amplitudes[i | mask]];
            for (r, row) in rho.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    *entry += pair[r] * pair[c].conj();
                }
            }
        }
        Ok(DensityMatrix2 { entries: rho })
    }
}

fn check_size(qubits: usize) -> Result<()> {
    if qubits == 0 {
        return Err(ZenoError::invalid(
            "qubits",
            "register needs at least one qubit",
        ));
    }
    if qubits > MAX_QUBITS {
        return Err(ZenoError::RegisterCapacity {
            qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Traces out every qubit except `system_index`.
pub fn partial_trace_to_system(
    state: &QubitRegister,
    system_index: usize,
) -> Result<DensityMatrix2> {
    state.partial_trace_to(system_index)
}

/// 2×2 density matrix of the system qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        DensityMatrix2 {
            entries: entries.map(|row| row.map(|x| Complex64::new(x, 0.0))),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// `|ρ_01|`.
    pub fn coherence(&self) -> f64 {
        self.entries[0][1].norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let e = &self.entries;
        let off = (e[1][0] - e[0][1].conj()).norm();
        off.max(e[0][0].im.abs()).max(e[1][1].im.abs())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let (p, q) = (self.entries[0][0].re, self.entries[1][1].re);
        let mean = 0.5 * (p + q);
        let radius = (0.25 * (p - q) * (p - q) + self.entries[0][1].norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    pub fn purity(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        let h = self.hermiticity_defect();
        if h > tol {
            return Err(ZenoError::invalid(
                "rho",
                format!("not Hermitian (defect {h:e})"),
            ));
        }
        let t = (self.trace() - 1.0).norm();
        if t > tol {
            return Err(ZenoError::invalid(
                "rho",
                format!("trace deviates from 1 by {t:e}"),
            ));
        }
        let low = self.eigenvalues()[0];
        if low < -tol {
            return Err(ZenoError::invalid(
                "rho",
                format!("negative eigenvalue {low:e}"),
            ));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// One snapshot of the recoherence experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoherenceStage {
    pub label: String,
    pub rho: DensityMatrix2,
    pub coherence: f64,
}

/// System `(|0⟩+|1⟩)/√2` next to a Bell pair `(|00⟩+|11⟩)/√2` on (E¹, E²).
///
/// A CNOT onto E¹ fully decoheres the system; a second CNOT onto E² undoes it.
pub fn recoherence_demo() -> Vec<RecoherenceStage> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    let system = QubitRegister::from_amplitudes(vec![c(h), c(h)]).expect("normalized");
    let bell =
        QubitRegister::from_amplitudes(vec![c(h), c(0.0), c(0.0), c(h)]).expect("normalized");
    let initial = system.tensor(&bell).expect("three qubits");
    let after_first = initial.apply_cnot(0, 1).expect("valid indices");
    let after_second = after_first.apply_cnot(0, 2).expect("valid indices");

    [
        ("initial", &initial),
        ("after CNOT(S->E1)", &after_first),
        ("after CNOT(S->E2)", &after_second),
    ]
    .into_iter()
    .map(|(label, state)| {
        let rho = state.partial_trace_to(0).expect("three qubits");
        RecoherenceStage {
            label: label.to_string(),
            coherence: rho.coherence(),
            rho,
        }
    })
    .collect()
}
