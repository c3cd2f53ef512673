// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-step free evolution of the two-level system.
//!
//! A free step over a sub-interval `delta` is a 2×2 unitary acting on the
//! basis `(|0⟩, |1⟩)`:
//!
//! ```text
//! U|0⟩ = c_eq_0 |0⟩ + c_neq_1 |1⟩
//! U|1⟩ = c_neq_0 |0⟩ + c_eq_1 |1⟩
//! ```
//!
//! Every such matrix can be written `[[a, b], [-e^{iφ} conj(b), e^{iφ} conj(a)]]`
//! with `|a|² + |b|² = 1`, which is the representation stored here. Units are
//! natural (ħ = 1), so the energy variance of the initial state is `V = ω²`
//! for the Rabi realization.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZenoError};

/// Tolerance accepted on `|a|² + |b|²` before a general unitary is rejected.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Above this value of `V·δ²` the second-order comparisons stop being meaningful.
pub const PERTURBATIVE_WARN_THRESHOLD: f64 = 0.1;

/// One free-evolution step `U_δ`, stored through its `(a, b, φ)` parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEvolutionUnitary {
    a: Complex64,
    b: Complex64,
    phi: f64,
}

impl FreeEvolutionUnitary {
    pub fn identity() -> Self {
        FreeEvolutionUnitary {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            phi: 0.0,
        }
    }

    /// Rotation about σ_x by angle `omega·delta`: `a = cos(ωδ)`, `b = -i sin(ωδ)`, `φ = 0`.
    ///
    /// This is `exp(-i ω δ σ_x)`, whose survival amplitude satisfies
    /// `|a|² = 1 - sin²(ωδ) = 1 - ω²δ² + O(δ⁴)`.
    pub fn rabi(omega: f64, delta: f64) -> Self {
        let theta = omega * delta;
        FreeEvolutionUnitary {
            a: Complex64::new(theta.cos(), 0.0),
            b: Complex64::new(0.0, -theta.sin()),
            phi: 0.0,
        }
    }

    /// Builds `[[a, b], [-e^{iφ} conj(b), e^{iφ} conj(a)]]`.
    ///
    /// Inputs whose row norm is within [`NORMALIZATION_TOLERANCE`] of one are
    /// renormalized; anything further off is rejected.
    pub fn general(a: Complex64, b: Complex64, phi: f64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite())
            || !phi.is_finite()
        {
            return Err(ZenoError::invalid("a, b, phi", "entries must be finite"));
        }
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        let deviation = norm_sqr - 1.0;
        if deviation.abs() > NORMALIZATION_TOLERANCE {
            return Err(ZenoError::NonUnitary { deviation });
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(FreeEvolutionUnitary {
            a: a * scale,
            b: b * scale,
            phi,
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `⟨0|U|0⟩`, the amplitude to stay in `|0⟩`.
    pub fn c_eq_0(&self) -> Complex64 {
        self.a
    }

    /// `⟨0|U|1⟩`, the amplitude to flip from `|1⟩` back to `|0⟩`.
    pub fn c_neq_0(&self) -> Complex64 {
        self.b
    }

    /// `⟨1|U|0⟩`, the amplitude to flip from `|0⟩` to `|1⟩`.
    pub fn c_neq_1(&self) -> Complex64 {
        -Complex64::from_polar(1.0, self.phi) * self.b.conj()
    }

    /// `⟨1|U|1⟩`, the amplitude to stay in `|1⟩`.
    pub fn c_eq_1(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi) * self.a.conj()
    }

    /// The coefficient selected by a step letter and the system state it lands in.
    pub fn coefficient(&self, flip: bool, landing: u8) -> Complex64 {
        match (flip, landing) {
            (false, 0) => self.c_eq_0(),
            (false, _) => self.c_eq_1(),
            (true, 0) => self.c_neq_0(),
            (true, _) => self.c_neq_1(),
        }
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.c_eq_0(), self.c_neq_0(), self.c_neq_1(), self.c_eq_1())
    }

    /// Largest entrywise deviation of `M†M` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let gram = m.adjoint() * m;
        let defect = gram - Matrix2::identity();
        defect.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `conj(c_eq_0)² · c_neq_0 · c_neq_1`, the phase factor of the leading cross term.
    ///
    /// Real and non-positive for the Rabi realization (`-cos²θ·sin²θ`).
    pub fn cross_term_factor(&self) -> Complex64 {
        let a_bar = self.a.conj();
        a_bar * a_bar * self.c_neq_0() * self.c_neq_1()
    }
}

/// Parameters of one run of the alternating chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    /// Rabi angular frequency ω; the energy variance is `V = ω²`.
    pub omega: f64,
    /// Total duration `T`.
    pub total_time: f64,
    /// Number of free/decoherence step pairs `n`.
    pub steps: usize,
    /// Interaction-time ratio `c`: each decoherence step lasts `c·T/n`.
    pub c_ratio: f64,
}

impl EvolutionConfig {
    pub fn new(omega: f64, total_time: f64, steps: usize) -> Result<Self> {
        let config = EvolutionConfig {
            omega,
            total_time,
            steps,
            c_ratio: 1.0,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_c_ratio(mut self, c_ratio: f64) -> Result<Self> {
        self.c_ratio = c_ratio;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(ZenoError::invalid("n", "step count must be at least 1"));
        }
        if !(self.total_time.is_finite() && self.total_time > 0.0) {
            return Err(ZenoError::invalid(
                "T",
                format!(
                    "total time must be finite and positive, got {}",
                    self.total_time
                ),
            ));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(ZenoError::invalid(
                "omega",
                format!(
                    "frequency must be finite and non-negative, got {}",
                    self.omega
                ),
            ));
        }
        if !(self.c_ratio.is_finite() && self.c_ratio > 0.0) {
            return Err(ZenoError::invalid(
                "c",
                format!(
                    "interaction-time ratio must be positive, got {}",
                    self.c_ratio
                ),
            ));
        }
        Ok(())
    }

    /// Energy variance `V = ω²`.
    pub fn variance(&self) -> f64 {
        self.omega * self.omega
    }

    /// Sub-interval `δ = T/n`.
    pub fn delta(&self) -> f64 {
        self.total_time / self.steps as f64
    }

    /// `V·δ²`, the expansion parameter of the second-order formula.
    pub fn expansion_parameter(&self) -> f64 {
        let delta = self.delta();
        self.variance() * delta * delta
    }

    /// `V·T²`, the scale separating the Zeno and free-evolution limits.
    pub fn limit_scale(&self) -> f64 {
        self.variance() * self.total_time * self.total_time
    }

    pub fn is_perturbative(&self) -> bool {
        self.expansion_parameter() < PERTURBATIVE_WARN_THRESHOLD
    }

    pub fn unitary(&self) -> FreeEvolutionUnitary {
        FreeEvolutionUnitary::rabi(self.omega, self.delta())
    }

    pub(crate) fn warn_if_not_perturbative(&self) {
        let x = self.expansion_parameter();
        if x >= PERTURBATIVE_WARN_THRESHOLD {
            log::warn!(
                "V·δ² = {x:.3e} is not small; second-order comparisons are not meaningful (n = {}, T = {})",
                self.steps,
                self.total_time
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rabi_at_zero_time_is_identity() {
        let u = FreeEvolutionUnitary::rabi(1.0, 0.0);
        assert_eq!(u.matrix(), Matrix2::identity());
    }

    #[test]
    fn rabi_probabilities() {
        let u = FreeEvolutionUnitary::rabi(1.0, 0.1);
        assert!((u.a().norm_sqr() - 0.990_033_288_920_620_9).abs() < 1e-12);
        assert!((u.b().norm_sqr() - 0.009_966_711_079_379_185).abs() < 1e-12);

        let u = FreeEvolutionUnitary::rabi(2.0, 0.05);
        assert!((u.b().norm_sqr() - 0.009_966_711_079_379_185).abs() < 1e-12);
        // V·δ² = 0.01, matched up to O(δ⁴)
        assert!((u.b().norm_sqr() - 0.01).abs() < 1e-4);
    }

    #[test]
    fn flip_ratio_approaches_variance() {
        let omega = 1.7;
        let v = omega * omega;
        let mut prev_err = f64::INFINITY;
        for delta in [1e-2, 1e-3, 1e-4] {
            let u = FreeEvolutionUnitary::rabi(omega, delta);
            let err = (u.b().norm_sqr() / (delta * delta) - v).abs();
            // sin²x/x² = 1 - x²/3 + ..., so the error is about V²δ²/3
            assert!(
                err <= v * v * delta * delta / 3.0 * 1.01,
                "delta={delta} err={err}"
            );
            assert!(err < prev_err);
            prev_err = err;
        }
    }

    #[test]
    fn general_identity_and_rabi_agreement() {
        let id = FreeEvolutionUnitary::general(c(1.0, 0.0), c(0.0, 0.0), 0.0).unwrap();
        assert_eq!(id.matrix(), Matrix2::identity());

        let theta: f64 = 0.37;
        let g =
            FreeEvolutionUnitary::general(c(theta.cos(), 0.0), c(0.0, -theta.sin()), 0.0).unwrap();
        let r = FreeEvolutionUnitary::rabi(1.0, theta);
        assert!((g.matrix() - r.matrix()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn general_with_phase_is_unitary() {
        let u = FreeEvolutionUnitary::general(c(0.6, 0.0), c(0.0, 0.8), PI / 3.0).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn general_rejects_non_normalized_rows() {
        let err = FreeEvolutionUnitary::general(c(0.6, 0.0), c(0.0, 0.9), 0.0).unwrap_err();
        match err {
            ZenoError::NonUnitary { deviation } => assert!((deviation - 0.17).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn general_renormalizes_small_drift() {
        let u = FreeEvolutionUnitary::general(c(0.6 + 1e-11, 0.0), c(0.0, 0.8), 0.0).unwrap();
        assert!((u.a().norm_sqr() + u.b().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rabi_cross_term_is_real_and_non_positive() {
        for theta in [0.0, 0.01, 0.3, 1.2, 2.9] {
            let u = FreeEvolutionUnitary::rabi(1.0, theta);
            let z = u.cross_term_factor();
            let expected = -(theta.cos() * theta.sin()).powi(2);
            assert!(z.im.abs() < 1e-15);
            assert!((z.re - expected).abs() < 1e-15);
            assert!(z.re <= 0.0);
        }
    }

    #[test]
    fn config_validation() {
        assert!(EvolutionConfig::new(1.0, 1.0, 0).is_err());
        assert!(EvolutionConfig::new(1.0, 0.0, 3).is_err());
        assert!(EvolutionConfig::new(-1.0, 1.0, 3).is_err());
        assert!(EvolutionConfig::new(1.0, 1.0, 3)
            .unwrap()
            .with_c_ratio(0.0)
            .is_err());
        let cfg = EvolutionConfig::new(2.0, 1.0, 4).unwrap();
        assert_eq!(cfg.variance(), 4.0);
        assert_eq!(cfg.delta(), 0.25);
        assert_eq!(cfg.expansion_parameter(), 0.25);
        assert!(!cfg.is_perturbative());
    }

    proptest! {
        #[test]
        fn constructed_unitaries_are_unitary(
            theta in 0.0..PI, p1 in -PI..PI, p2 in -PI..PI, phi in -PI..PI,
            omega in 0.0..10.0f64, delta in 0.0..2.0f64,
        ) {
            let a = Complex64::from_polar(theta.cos(), p1);
            let b = Complex64::from_polar(theta.sin(), p2);
            let u = FreeEvolutionUnitary::general(a, b, phi).unwrap();
            prop_assert!(u.unitarity_defect() < 1e-12);
            prop_assert!(FreeEvolutionUnitary::rabi(omega, delta).unitarity_defect() < 1e-12);
        }
    }
}
