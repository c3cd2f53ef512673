// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the model, the analysis routines and the register simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZenoError {
    #[error("unitary rows are not normalized: |a|^2 + |b|^2 deviates from 1 by {deviation:e}")]
    NonUnitary { deviation: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("explicit schedule carries {len} overlaps but {steps} steps were requested")]
    ScheduleLength { len: usize, steps: usize },

    #[error("branch enumeration over {steps} steps needs 2^{steps} words; the oracle is capped at 2^{max}")]
    OracleCapacity { steps: usize, max: usize },

    #[error("register of {qubits} qubits exceeds the cap of {max}")]
    RegisterCapacity { qubits: usize, max: usize },

    #[error("qubit index {index} out of range for a {qubits}-qubit register")]
    QubitIndex { index: usize, qubits: usize },

    #[error("control and target must differ (both are qubit {0})")]
    SameQubit(usize),

    #[error("explicit overlap sequences have no closed-form regime; use the numeric probe")]
    NumericOnly,

    #[error("numeric limit probe did not converge: last estimate {estimate}, spread {spread:e}")]
    NonConvergent { estimate: f64, spread: f64 },
}

impl ZenoError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ZenoError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Whether the error comes from a size cap rather than a malformed input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            ZenoError::OracleCapacity { .. } | ZenoError::RegisterCapacity { .. }
        )
    }
}

pub type Result<T, E = ZenoError> = std::result::Result<T, E>;
