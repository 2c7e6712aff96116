//! Creep-like degradation of a 1D bar under constant stress.
//!
//! At each damage level the bar carries the applied stress through a
//! quadratic stress-strain relation in the elastic strain `e = ε - ε_p`:
//!
//! ```text
//! E(Γ)·e + A(Γ)·e² = σ,        E(Γ) = E₀(1 - aΓ)
//! ```
//!
//! while the accumulated plastic strain grows according to the dissipation
//! balance
//!
//! ```text
//! dε_p/dΓ = [W_nel'(Γ) + ½E'(Γ)e² + ⅓A'(Γ)e³] / σ
//! ```
//!
//! (the stress equation replaces the force factor by `σ`). With `A(Γ)` and
//! `W_nel(Γ)` prescribed, the stress equation is solved pointwise and the
//! balance is integrated in `Γ` with classic fourth-order Runge-Kutta.
//! Because the nonlinearity parameter rises to a peak and falls back while
//! `ε_p(Γ)` grows monotonically, `A` plotted against creep strain traces the
//! non-monotonic trend that makes the harmonic ratio an ambiguous damage
//! indicator on its own.

use alloc::vec::Vec;
use core::fmt;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::catalog::{CatalogError, DissipationLaw, NonlinearityLaw};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CreepError {
    InvalidParameter { name: &'static str, value: f64 },
    /// The stress equation has no real root at this damage level.
    NoEquilibrium { gamma: f64 },
    /// The dissipation balance demands shrinking plastic strain; the input
    /// model is nonphysical.
    NegativeRate { gamma: f64, rate: f64 },
    Law(CatalogError),
}

impl fmt::Display for CreepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CreepError::InvalidParameter { name, value } => {
                write!(f, "invalid creep parameter {name} = {value}")
            }
            CreepError::NoEquilibrium { gamma } => {
                write!(f, "stress equation has no real root at damage {gamma}")
            }
            CreepError::NegativeRate { gamma, rate } => {
                write!(f, "plastic strain rate {rate} negative at damage {gamma}")
            }
            CreepError::Law(err) => write!(f, "constitutive law: {err}"),
        }
    }
}

impl From<CatalogError> for CreepError {
    fn from(err: CatalogError) -> Self {
        CreepError::Law(err)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CreepError {}

/// Integration failure carrying the portion of the trace accumulated before
/// the abort; the partial trace is not valid simulation output.
#[derive(Debug, Clone, PartialEq)]
pub struct CreepFailure {
    pub error: CreepError,
    pub partial: CreepTrace,
}

impl fmt::Display for CreepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (aborted after {} samples)",
            self.error,
            self.partial.samples.len()
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CreepFailure {}

/// 1D bar under constant uniaxial stress with damage-dependent modulus,
/// nonlinearity, and dissipation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepModel {
    e0: f64,
    modulus_decay: f64,
    sigma: f64,
    nonlinearity: NonlinearityLaw,
    dissipation: DissipationLaw,
}

impl CreepModel {
    pub fn new(
        e0: f64,
        modulus_decay: f64,
        sigma: f64,
        nonlinearity: NonlinearityLaw,
        dissipation: DissipationLaw,
    ) -> Result<Self, CreepError> {
        if !(e0 > 0.0) || !e0.is_finite() {
            return Err(CreepError::InvalidParameter { name: "e0", value: e0 });
        }
        if !(modulus_decay > 0.0 && modulus_decay <= 1.0) {
            return Err(CreepError::InvalidParameter {
                name: "modulus_decay",
                value: modulus_decay,
            });
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(CreepError::InvalidParameter { name: "sigma", value: sigma });
        }
        if let DissipationLaw::CreepAffinePower { m, .. } = dissipation {
            if m < 2.0 {
                return Err(CreepError::InvalidParameter { name: "m", value: m });
            }
        }
        Ok(CreepModel { e0, modulus_decay, sigma, nonlinearity, dissipation })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn nonlinearity(&self) -> &NonlinearityLaw {
        &self.nonlinearity
    }

    pub fn dissipation(&self) -> &DissipationLaw {
        &self.dissipation
    }

    /// `E(Γ) = E₀(1 - aΓ)`.
    pub fn young_modulus(&self, gamma: f64) -> f64 {
        self.e0 * (1.0 - self.modulus_decay * gamma)
    }

    /// Elastic strain `e` solving `E(Γ)e + A(Γ)e² = σ`, on the branch
    /// continuous with the linear limit `σ/E` as `A → 0`. Uses the
    /// subtraction-free form `e = 2σ/(E + √(E² + 4Aσ))`.
    pub fn elastic_strain(&self, gamma: f64) -> Result<f64, CreepError> {
        let modulus = self.young_modulus(gamma);
        let a_val = self.nonlinearity.value(gamma)?;
        let discriminant = modulus * modulus + 4.0 * a_val * self.sigma;
        if discriminant < 0.0 {
            return Err(CreepError::NoEquilibrium { gamma });
        }
        Ok(2.0 * self.sigma / (modulus + discriminant.sqrt()))
    }

    /// Residual of the stress equation at a given elastic strain.
    pub fn stress_residual(&self, gamma: f64, elastic: f64) -> Result<f64, CreepError> {
        let a_val = self.nonlinearity.value(gamma)?;
        Ok(self.young_modulus(gamma) * elastic + a_val * elastic * elastic - self.sigma)
    }

    /// Plastic strain rate `dε_p/dΓ` from the dissipation balance. The rate
    /// is independent of the accumulated strain for this closure; the
    /// argument is kept for closures where `ε_p` feeds back.
    pub fn creep_rate(&self, gamma: f64, _eps_p: f64) -> Result<f64, CreepError> {
        let elastic = self.elastic_strain(gamma)?;
        let driving = self.dissipation.derivative(gamma)?;
        let modulus_rate = -self.modulus_decay * self.e0;
        let a_rate = self.nonlinearity.derivative(gamma)?;
        Ok((driving
            + 0.5 * modulus_rate * elastic * elastic
            + a_rate * elastic * elastic * elastic / 3.0)
            / self.sigma)
    }

    /// Integrates `ε_p` from the virgin state to `gamma_max` with classic
    /// fixed-step fourth-order Runge-Kutta, recording every grid node.
    ///
    /// `gamma_max` may not exceed `1 - 1e-3` (the bump laws have an
    /// essential singularity at full damage) and at least 1000 steps are
    /// required. A negative rate or an unsolvable stress equation aborts
    /// with the partial trace attached.
    pub fn integrate(&self, gamma_max: f64, steps: usize) -> Result<CreepTrace, CreepFailure> {
        let bad = |error: CreepError| CreepFailure { error, partial: CreepTrace::default() };
        if !(gamma_max > 0.0 && gamma_max <= 1.0 - 1e-3) {
            return Err(bad(CreepError::InvalidParameter {
                name: "gamma_max",
                value: gamma_max,
            }));
        }
        if steps < 1000 {
            return Err(bad(CreepError::InvalidParameter {
                name: "steps",
                value: steps as f64,
            }));
        }

        let h = gamma_max / steps as f64;
        let mut eps_p = 0.0f64;
        let mut trace = CreepTrace { samples: Vec::with_capacity(steps + 1) };

        let abort = |error: CreepError, trace: CreepTrace| CreepFailure { error, partial: trace };

        for i in 0..=steps {
            let gamma = if i == steps { gamma_max } else { i as f64 * h };
            let elastic = match self.elastic_strain(gamma) {
                Ok(e) => e,
                Err(error) => return Err(abort(error, trace)),
            };
            let rate = match self.creep_rate(gamma, eps_p) {
                Ok(r) => r,
                Err(error) => return Err(abort(error, trace)),
            };
            if rate < 0.0 {
                return Err(abort(CreepError::NegativeRate { gamma, rate }, trace));
            }
            let a_of_gamma = match self.nonlinearity.value(gamma) {
                Ok(a) => a,
                Err(error) => return Err(abort(CreepError::Law(error), trace)),
            };
            let residual = self
                .stress_residual(gamma, elastic)
                .expect("law already evaluated at this gamma");
            trace.samples.push(CreepSample {
                gamma,
                eps_p,
                eps_elastic: elastic,
                a_of_gamma,
                rate,
                residual,
            });

            if i == steps {
                break;
            }

            // classic RK4 step; k1 was already computed as `rate`
            let step = |g: f64, y: f64| self.creep_rate(g, y);
            let k1 = rate;
            let k2 = match step(gamma + 0.5 * h, eps_p + 0.5 * h * k1) {
                Ok(k) => k,
                Err(error) => return Err(abort(error, trace)),
            };
            let k3 = match step(gamma + 0.5 * h, eps_p + 0.5 * h * k2) {
                Ok(k) => k,
                Err(error) => return Err(abort(error, trace)),
            };
            let k4 = match step(gamma + h, eps_p + h * k3) {
                Ok(k) => k,
                Err(error) => return Err(abort(error, trace)),
            };
            eps_p += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
        Ok(trace)
    }
}

/// One integration node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepSample {
    pub gamma: f64,
    /// Accumulated plastic (creep) strain.
    pub eps_p: f64,
    /// Elastic strain solving the stress equation at this damage.
    pub eps_elastic: f64,
    /// Nonlinearity parameter `A(Γ)` (Pa).
    pub a_of_gamma: f64,
    /// Plastic strain rate `dε_p/dΓ`.
    pub rate: f64,
    /// Stress-equation residual `E·e + A·e² - σ` (Pa).
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CreepTrace {
    pub samples: Vec<CreepSample>,
}

impl CreepTrace {
    pub fn final_eps_p(&self) -> Option<f64> {
        self.samples.last().map(|s| s.eps_p)
    }

    /// Largest stress-equation residual along the trace, normalized by the
    /// applied stress.
    pub fn max_residual(&self, sigma: f64) -> f64 {
        self.samples
            .iter()
            .map(|s| s.residual.abs())
            .fold(0.0, f64::max)
            / sigma
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].eps_p > w[0].eps_p)
    }

    /// Sample at the grid node closest to `gamma`.
    pub fn sample_at(&self, gamma: f64) -> Option<&CreepSample> {
        self.samples.iter().min_by(|a, b| {
            (a.gamma - gamma).abs().total_cmp(&(b.gamma - gamma).abs())
        })
    }
}

/// Pairs `(ε_p(Γ), A(Γ)/A₀)` along a trace — the nonlinearity parameter as
/// a function of the macroscopic measurable.
pub fn nonlinearity_vs_creep(trace: &CreepTrace, law: &NonlinearityLaw) -> Vec<(f64, f64)> {
    trace
        .samples
        .iter()
        .filter_map(|s| law.shape(s.gamma).ok().map(|shape| (s.eps_p, shape)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const E0: f64 = 70e9;
    const SIGMA: f64 = 140e6;

    fn linear_model() -> CreepModel {
        CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::constant(0.0).unwrap(),
            DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn linear_limit_elastic_strain() {
        let model = linear_model();
        assert!((model.elastic_strain(0.0).unwrap() - 2.0e-3).abs() < 1e-18);
        // damaged modulus 0.75 E0
        let e = model.elastic_strain(0.5).unwrap();
        assert!((e - SIGMA / (0.75 * E0)).abs() < 1e-18);
        assert!((e - 2.667e-3).abs() < 1e-6);
    }

    #[test]
    fn quadratic_root_against_bisection() {
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::constant(-3.5e11).unwrap(),
            DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap(),
        )
        .unwrap();
        let e = model.elastic_strain(0.0).unwrap();
        assert!(model.stress_residual(0.0, e).unwrap().abs() < 1e-9 * SIGMA);
        // independent route: bisection on the residual over [0, 2σ/E]
        let (mut lo, mut hi) = (0.0, 2.0 * SIGMA / E0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if model.stress_residual(0.0, mid).unwrap() < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((e - 0.5 * (lo + hi)).abs() < 1e-12);
    }

    #[test]
    fn no_equilibrium_for_extreme_negative_nonlinearity() {
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::constant(-9e12).unwrap(),
            DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            model.elastic_strain(0.0),
            Err(CreepError::NoEquilibrium { gamma }) if gamma == 0.0
        ));
    }

    #[test]
    fn virgin_rate_closed_form() {
        // with A ≡ 0 the rate at Γ = 0 is (K - ½aE₀e²)/σ with e = σ/E₀
        let model = linear_model();
        let rate = model.creep_rate(0.0, 0.0).unwrap();
        let e = SIGMA / E0;
        let expected = (2e6 - 0.5 * 0.5 * E0 * e * e) / SIGMA;
        assert!((rate - expected).abs() < 1e-15);
        assert!((rate - 1.379e-2).abs() < 1e-5);
    }

    #[test]
    fn rate_vanishes_at_the_balance_point() {
        // pick K so the constant driving force exactly offsets the modulus
        // term at Γ = 0.5
        let probe = linear_model();
        let e = probe.elastic_strain(0.5).unwrap();
        let k = 0.5 * 0.5 * E0 * e * e;
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::constant(0.0).unwrap(),
            DissipationLaw::creep_affine_power(k, 0.0, 16.0).unwrap(),
        )
        .unwrap();
        assert_eq!(model.creep_rate(0.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn affine_term_dominates_mid_range_for_large_exponent() {
        let law = DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap();
        let power_part = law.derivative(0.5).unwrap() - 2e6;
        assert!(power_part < 0.01 * 2e6, "power part {power_part}");
    }

    #[test]
    fn zero_dissipation_input_is_rejected() {
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::constant(0.0).unwrap(),
            DissipationLaw::creep_affine_power(0.0, 0.0, 16.0).unwrap(),
        )
        .unwrap();
        let err = model.integrate(0.999, 1000).unwrap_err();
        assert!(matches!(err.error, CreepError::NegativeRate { .. }));
        assert!(err.partial.samples.is_empty());
    }

    #[test]
    fn precondition_violations() {
        let model = linear_model();
        assert!(model.integrate(0.9999, 1000).is_err());
        assert!(model.integrate(0.999, 999).is_err());
    }

    #[test]
    fn integration_monotone_and_consistent() {
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap(),
            DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap(),
        )
        .unwrap();
        let trace = model.integrate(0.999, 1000).unwrap();
        assert_eq!(trace.samples.len(), 1001);
        assert!(trace.is_strictly_increasing());
        assert!(trace.max_residual(SIGMA) < 1e-9);
    }

    #[test]
    fn nonlinearity_peaks_at_twice_the_scale_along_the_trace() {
        let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
        let model = CreepModel::new(
            E0,
            0.5,
            SIGMA,
            law,
            DissipationLaw::creep_affine_power(2e6, 2e6, 16.0).unwrap(),
        )
        .unwrap();
        let trace = model.integrate(0.999, 2000).unwrap();
        let pairs = nonlinearity_vs_creep(&trace, &law);
        let peak = pairs.iter().map(|p| p.1).fold(0.0f64, f64::max);
        assert!((peak - 2.0).abs() < 1e-3, "peak = {peak}");
        // ends back near the virgin value
        assert!((pairs.last().unwrap().1 - 1.0).abs() < 1e-6);
    }
}
