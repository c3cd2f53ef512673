// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical scenarios mapped onto overlap schedules.
//!
//! SI units are used here only; the rest of the crate works with ħ = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZenoError};
use crate::schedule::OverlapSchedule;

/// Reduced Planck constant, CODATA 2018 (J·s).
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Validity time printed alongside the free-particle example in the literature
/// this toolkit follows. It is not what `2√2·m·σ²/ħ` gives at the same inputs.
pub const REPORTED_VALIDITY_TIME: f64 = 4e-13;

fn positive(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(ZenoError::invalid(
            name,
            format!("must be finite and positive, got {x}"),
        ))
    }
}

/// Free particle `P²/2m` in a Gaussian momentum packet of width `ħ/σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeParticleParams {
    /// Mass (kg).
    pub mass: f64,
    /// Position width (m).
    pub sigma: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
}

impl FreeParticleParams {
    pub fn new(mass: f64, sigma: f64) -> Result<Self> {
        Self::with_hbar(mass, sigma, HBAR_SI)
    }

    pub fn with_hbar(mass: f64, sigma: f64, hbar: f64) -> Result<Self> {
        let p = FreeParticleParams { mass, sigma, hbar };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        positive("m", self.mass)?;
        positive("sigma", self.sigma)?;
        positive("hbar", self.hbar)
    }
}

/// Energy variance `ħ⁴ / (8 m² σ⁴)` of the free packet (J²).
pub fn free_particle_variance(p: &FreeParticleParams) -> f64 {
    // grouped to stay inside f64 range for SI magnitudes
    let r = p.hbar / p.sigma;
    let q = r * r / p.mass;
    q * q / 8.0
}

/// Time below which the quadratic short-time expansion holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityTime {
    /// `2√2·m·σ²/ħ`
    pub closed_form: f64,
    /// `ħ / √Var(H)`
    pub from_variance: f64,
}

impl ValidityTime {
    pub fn relative_disagreement(&self) -> f64 {
        (self.closed_form - self.from_variance).abs() / self.closed_form.abs()
    }
}

pub fn quadratic_validity_time(p: &FreeParticleParams) -> ValidityTime {
    ValidityTime {
        closed_form: 2.0 * std::f64::consts::SQRT_2 * p.mass * p.sigma * p.sigma / p.hbar,
        from_variance: p.hbar / free_particle_variance(p).sqrt(),
    }
}

/// `|⟨ψ_{+vδ}|ψ_{-vδ}⟩| = exp(-(vδ)²/σ²)` for two Gaussian pointer states
/// displaced in opposite directions by the coupling `v·σ_z ⊗ P`.
pub fn gaussian_pointer_overlap(v: f64, delta: f64, sigma: f64) -> f64 {
    let x = v * delta / sigma;
    (-x * x).exp()
}

/// Variance of `v·σ_z ⊗ P` (ħ = 1) for the system in an equal superposition
/// and a pointer packet at rest of width `σ`: `v²/(2σ²)`.
pub fn gaussian_interaction_variance(v: f64, sigma: f64) -> f64 {
    v * v / (2.0 * sigma * sigma)
}

/// Lower bound `1 - 2·V_int·τ²` on the overlap after an interaction of duration `τ`.
pub fn quadratic_overlap_bound(interaction_variance: f64, duration: f64) -> f64 {
    1.0 - 2.0 * interaction_variance * duration * duration
}

/// Gaussian pointer coupled for `c·T/n` after each free step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointerModelParams {
    pub v: f64,
    pub sigma: f64,
    pub c_ratio: f64,
    pub total_time: f64,
}

impl PointerModelParams {
    pub fn new(v: f64, sigma: f64, c_ratio: f64, total_time: f64) -> Result<Self> {
        let p = PointerModelParams {
            v,
            sigma,
            c_ratio,
            total_time,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        positive("v", self.v)?;
        positive("sigma", self.sigma)?;
        positive("c", self.c_ratio)?;
        positive("T", self.total_time)
    }

    /// Interaction time `c·T/n` of one decoherence step.
    pub fn interaction_time(&self, n: usize) -> f64 {
        self.c_ratio * self.total_time / n as f64
    }

    /// `v·δ/σ` at `n` steps; the quadratic form needs this to be small (`δ ≪ σ/v`).
    pub fn displacement_ratio(&self, n: usize) -> f64 {
        self.v * self.interaction_time(n) / self.sigma
    }

    /// Exact Gaussian overlap at `n` steps.
    pub fn overlap(&self, n: usize) -> f64 {
        gaussian_pointer_overlap(self.v, self.interaction_time(n), self.sigma)
    }
}

/// Quadratic decoherence: `η_n ≈ 1 - (v·c·T/σ)²/n²`, a power law with `β = 2`.
pub fn gaussian_model_schedule(p: &PointerModelParams) -> Result<OverlapSchedule> {
    p.validate()?;
    let r = p.v * p.c_ratio * p.total_time / p.sigma;
    OverlapSchedule::power_law(r * r, 2.0)
}

/// Environment states diffusing on the state sphere during each decoherence step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrownianModelParams {
    /// Diffusion constant `D`, with `D²·δ` dimensionless.
    pub diffusion: f64,
    pub total_time: f64,
}

impl BrownianModelParams {
    pub fn new(diffusion: f64, total_time: f64) -> Result<Self> {
        let p = BrownianModelParams {
            diffusion,
            total_time,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.diffusion.is_finite() && self.diffusion >= 0.0) {
            return Err(ZenoError::invalid(
                "D",
                format!("must be finite and non-negative, got {}", self.diffusion),
            ));
        }
        positive("T", self.total_time)
    }
}

/// `|⟨E(δ)|E(0)⟩| ≈ 1 - D²δ/2` with `δ = T/n`: a power law with `β = 1`, `α = D²T/2`.
///
/// `D = 0` has no overlap loss at all and maps to a constant `η = 1`.
pub fn brownian_schedule(p: &BrownianModelParams) -> Result<OverlapSchedule> {
    p.validate()?;
    let alpha = p.diffusion * p.diffusion * p.total_time / 2.0;
    if alpha == 0.0 {
        return OverlapSchedule::constant(1.0);
    }
    OverlapSchedule::power_law(alpha, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classify_schedule, limit_pn, Regime};
    use proptest::prelude::*;

    const HBAR_EXAMPLE: f64 = 1.054_571_8e-34;

    #[test]
    fn free_particle_example() {
        let p = FreeParticleParams::with_hbar(1e-26, 1e-10, HBAR_EXAMPLE).unwrap();
        let var = free_particle_variance(&p);
        assert!((var / 1.546_018_292_675_507e-45 - 1.0).abs() < 1e-12);
        let t = quadratic_validity_time(&p);
        assert!((t.closed_form / 2.682_062_164_706_273e-12 - 1.0).abs() < 1e-12);
        assert!(t.relative_disagreement() < 1e-12);
        // the printed 4e-13 s is far outside a 1% band of the formula value
        assert!((t.closed_form / REPORTED_VALIDITY_TIME - 1.0).abs() > 5.0);
    }

    #[test]
    fn free_particle_scalings() {
        let base = FreeParticleParams::new(1e-26, 1e-10).unwrap();
        let wide = FreeParticleParams::new(1e-26, 2e-10).unwrap();
        let heavy = FreeParticleParams::new(2e-26, 1e-10).unwrap();
        let ratio = free_particle_variance(&base) / free_particle_variance(&wide);
        assert!((ratio - 16.0).abs() < 1e-12);
        let ratio = quadratic_validity_time(&heavy).closed_form
            / quadratic_validity_time(&base).closed_form;
        assert!((ratio - 2.0).abs() < 1e-12);
        let huge = FreeParticleParams::new(1e10, 1e-10).unwrap();
        assert!(free_particle_variance(&huge) < 1e-100);
        assert!(FreeParticleParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_overlap_values() {
        assert_eq!(gaussian_pointer_overlap(3.0, 0.0, 1.0), 1.0);
        assert!((gaussian_pointer_overlap(1.0, 0.1, 1.0) - 0.990_049_833_749_168_1).abs() < 1e-15);
        // v·δ/σ = 0.05
        let overlap = gaussian_pointer_overlap(1.0, 0.05, 1.0);
        let quadratic = 0.05f64 * 0.05;
        assert!(((1.0 - overlap) / quadratic - 1.0).abs() < 0.01);
    }

    #[test]
    fn gaussian_overlap_respects_quadratic_bound() {
        let (v, sigma) = (2.0, 0.5);
        let v_int = gaussian_interaction_variance(v, sigma);
        for tau in [0.0, 1e-3, 0.01, 0.1, 0.3] {
            assert!(gaussian_pointer_overlap(v, tau, sigma) >= quadratic_overlap_bound(v_int, tau));
        }
    }

    #[test]
    fn gaussian_schedules_are_free_evolution() {
        let p = PointerModelParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let s = gaussian_model_schedule(&p).unwrap();
        assert_eq!(
            s,
            OverlapSchedule::PowerLaw {
                alpha: 1.0,
                beta: 2.0
            }
        );
        assert_eq!(classify_schedule(&s).unwrap().regime, Regime::FreeEvolution);

        let p = PointerModelParams::new(10.0, 1.0, 1.0, 1.0).unwrap();
        let s = gaussian_model_schedule(&p).unwrap();
        assert!(
            matches!(s, OverlapSchedule::PowerLaw { alpha, .. } if (alpha - 100.0).abs() < 1e-12)
        );
        assert_eq!(classify_schedule(&s).unwrap().regime, Regime::FreeEvolution);

        let p = PointerModelParams::new(1e-9, 1.0, 1.0, 1.0).unwrap();
        assert!(p.overlap(1) >= 1.0 - 1e-17);
    }

    #[test]
    fn pointer_linearization_tracks_exact_overlap() {
        let p = PointerModelParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let s = gaussian_model_schedule(&p).unwrap();
        for n in [10, 100, 1000] {
            let lin = s.family_eta(n).unwrap();
            let exact = p.overlap(n);
            let x = p.displacement_ratio(n);
            assert!((lin - exact).abs() <= x.powi(4));
        }
    }

    #[test]
    fn brownian_mapping() {
        let s = brownian_schedule(&BrownianModelParams::new(2.0, 1.0).unwrap()).unwrap();
        assert_eq!(
            s,
            OverlapSchedule::PowerLaw {
                alpha: 2.0,
                beta: 1.0
            }
        );
        let r = classify_schedule(&s).unwrap();
        assert_eq!(r.regime, Regime::Intermediate);
        assert!((r.coefficient - 0.5677).abs() < 1e-4);

        let strong = brownian_schedule(&BrownianModelParams::new(1e4, 1.0).unwrap()).unwrap();
        assert!(classify_schedule(&strong).unwrap().coefficient < 1e-7);
        let weak = brownian_schedule(&BrownianModelParams::new(1e-5, 1.0).unwrap()).unwrap();
        assert!((classify_schedule(&weak).unwrap().coefficient - 1.0).abs() < 1e-9);
        let none = brownian_schedule(&BrownianModelParams::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(
            classify_schedule(&none).unwrap().regime,
            Regime::FreeEvolution
        );
    }

    proptest! {
        #[test]
        fn validity_time_routes_agree(m in -30.0..0.0f64, s in -12.0..-6.0f64, h in -36.0..0.0f64) {
            let p = FreeParticleParams::with_hbar(10f64.powf(m), 10f64.powf(s), 10f64.powf(h)).unwrap();
            prop_assert!(quadratic_validity_time(&p).relative_disagreement() < 1e-12);
        }

        #[test]
        fn overlap_monotonicity(v in 0.01..10.0f64, d in 0.0..2.0f64, sigma in 0.1..10.0f64, bump in 1.01..2.0f64) {
            let o = gaussian_pointer_overlap(v, d, sigma);
            prop_assert!(o > 0.0 || v * d / sigma > 26.0);
            prop_assert!(o <= 1.0);
            prop_assert!(gaussian_pointer_overlap(v, d * bump, sigma) <= o);
            prop_assert!(gaussian_pointer_overlap(v * bump, d, sigma) <= o);
            prop_assert!(gaussian_pointer_overlap(v, d, sigma * bump) >= o);
        }

        #[test]
        fn gaussian_model_never_freezes(v in 1e-3..1e3f64, sigma in 1e-3..1e3f64, c in 1e-2..1e2f64, t in 1e-2..1e2f64) {
            let s = gaussian_model_schedule(&PointerModelParams::new(v, sigma, c, t).unwrap()).unwrap();
            prop_assert_eq!(classify_schedule(&s).unwrap().regime, Regime::FreeEvolution);
        }

        #[test]
        fn brownian_limit_decreases_with_diffusion(d in 0.0..20.0f64, step in 0.01..5.0f64) {
            let lo = brownian_schedule(&BrownianModelParams::new(d, 1.0).unwrap()).unwrap();
            let hi = brownian_schedule(&BrownianModelParams::new(d + step, 1.0).unwrap()).unwrap();
            // larger D gives more freezing, hence a larger limiting p
            prop_assert!(limit_pn(&hi, 1.0, 1.0).unwrap() >= limit_pn(&lo, 1.0, 1.0).unwrap());
        }
    }
}
