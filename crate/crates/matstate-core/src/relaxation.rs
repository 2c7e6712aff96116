//! Stress relaxation of a degrading spring held at fixed displacement.
//!
//! A mass on a spring of undamaged stiffness `k₀` is pulled to `x_m` and
//! held. As damage grows the spring softens, `k(Γ) = k₀(1-Γ)`, and its
//! unstretched length `x₀(Γ)` migrates toward the held position; the force
//! needed to hold the mass decays to zero.
//!
//! The model is closed by an energy balance: the energy still stored at the
//! reference stiffness plus the energy dissipated equals the initial stored
//! energy,
//!
//! ```text
//! ½k₀(x_m - x₀(Γ))² + W_nel(Γ) = ½k₀(x_m - x₀(0))² = W₀
//! ```
//!
//! which requires the dissipation law's total to equal `W₀` — the spring
//! cannot dissipate more energy than it started with. The holding force is
//! evaluated at the degraded stiffness, `F(Γ) = k₀(1-Γ)(x_m - x₀(Γ))`.
//!
//! Two dissipation choices have closed-form solutions
//! ([`SpringModel::closed_form_x0`]): the polynomial law, which completes
//! relaxation at `Γ = 1` exactly, and the exponential law, which only
//! approaches it asymptotically.

use alloc::vec::Vec;
use core::fmt;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::catalog::{CatalogError, DissipationLaw};

/// Relative tolerance for the consistency between a model's dissipation
/// scale and its initial stored energy.
const SCALE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelaxError {
    InvalidModel { name: &'static str, value: f64 },
    /// Dissipation total does not match the initial stored energy.
    InconsistentScale { expected: f64, actual: f64 },
    /// No closed form is known for this dissipation family.
    UnsupportedFamily,
    /// Sweep grid is empty, out of range, or not strictly increasing.
    InvalidGrid,
    /// Dissipation exceeds the available elastic energy at this damage.
    Infeasible { gamma: f64, deficit: f64 },
    Law(CatalogError),
}

impl fmt::Display for RelaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelaxError::InvalidModel { name, value } => {
                write!(f, "invalid spring parameter {name} = {value}")
            }
            RelaxError::InconsistentScale { expected, actual } => write!(
                f,
                "dissipation total {actual} inconsistent with stored energy {expected}"
            ),
            RelaxError::UnsupportedFamily => {
                write!(f, "no closed-form solution for this dissipation family")
            }
            RelaxError::InvalidGrid => write!(f, "grid must be strictly increasing within [0, 1]"),
            RelaxError::Infeasible { gamma, deficit } => write!(
                f,
                "dissipation exceeds stored energy at damage {gamma} by {deficit}"
            ),
            RelaxError::Law(err) => write!(f, "dissipation law: {err}"),
        }
    }
}

impl From<CatalogError> for RelaxError {
    fn from(err: CatalogError) -> Self {
        RelaxError::Law(err)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RelaxError {}

/// Spring-mass system undergoing progressive degradation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringModel {
    k0: f64,
    x0_initial: f64,
    x_m: f64,
    mass: f64,
    dissipation: DissipationLaw,
}

impl SpringModel {
    /// Polynomial dissipation `(Γⁿ - nΓ)/(1-n)` with `n < 1`; relaxation
    /// completes at `Γ = 1`.
    pub fn case1(k0: f64, x0_initial: f64, x_m: f64, mass: f64, n: f64) -> Result<Self, RelaxError> {
        let w0 = Self::initial_energy(k0, x0_initial, x_m);
        let law = DissipationLaw::relax_polyline(w0, n)?;
        Self::with_dissipation(k0, x0_initial, x_m, mass, law)
    }

    /// Exponential dissipation; the unstretched length approaches `x_m` like
    /// `e^{-nΓ/(1-Γ)}` and relaxation never completes.
    pub fn case2(k0: f64, x0_initial: f64, x_m: f64, mass: f64, n: f64) -> Result<Self, RelaxError> {
        let w0 = Self::initial_energy(k0, x0_initial, x_m);
        let law = DissipationLaw::relax_exp(w0, n)?;
        Self::with_dissipation(k0, x0_initial, x_m, mass, law)
    }

    /// Builds a model from an arbitrary dissipation law, enforcing the
    /// thermodynamic consistency requirement that the law's total equals the
    /// initial stored energy `½k₀(x_m - x₀(0))²` to relative 1e-12.
    pub fn with_dissipation(
        k0: f64,
        x0_initial: f64,
        x_m: f64,
        mass: f64,
        dissipation: DissipationLaw,
    ) -> Result<Self, RelaxError> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(RelaxError::InvalidModel { name: "k0", value: k0 });
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(RelaxError::InvalidModel { name: "mass", value: mass });
        }
        if !x0_initial.is_finite() || !x_m.is_finite() || x_m <= x0_initial {
            return Err(RelaxError::InvalidModel { name: "x_m", value: x_m });
        }
        let w0 = Self::initial_energy(k0, x0_initial, x_m);
        let actual = dissipation.scale();
        if (actual - w0).abs() > SCALE_TOL * w0 {
            return Err(RelaxError::InconsistentScale { expected: w0, actual });
        }
        Ok(SpringModel { k0, x0_initial, x_m, mass, dissipation })
    }

    fn initial_energy(k0: f64, x0_initial: f64, x_m: f64) -> f64 {
        let stretch = x_m - x0_initial;
        0.5 * k0 * stretch * stretch
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn x0_initial(&self) -> f64 {
        self.x0_initial
    }

    pub fn held_position(&self) -> f64 {
        self.x_m
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn dissipation(&self) -> &DissipationLaw {
        &self.dissipation
    }

    /// Initial stored energy `W₀`.
    pub fn stored_energy(&self) -> f64 {
        Self::initial_energy(self.k0, self.x0_initial, self.x_m)
    }

    /// Unstretched length from the energy balance, physical branch
    /// `x₀(Γ) ≤ x_m`.
    pub fn solve_x0(&self, gamma: f64) -> Result<f64, RelaxError> {
        let w0 = self.stored_energy();
        let remaining = self.dissipation.remaining(gamma)?;
        if remaining < -SCALE_TOL * w0 {
            return Err(RelaxError::Infeasible { gamma, deficit: -remaining });
        }
        let remaining = remaining.max(0.0);
        Ok(self.x_m - (2.0 * remaining / self.k0).sqrt())
    }

    /// Root of the energy-balance residual by bisection on
    /// `[x_m - 2(x_m - x₀(0)), x_m]`. Slower than [`Self::solve_x0`] but
    /// independent of the algebraic rearrangement, and the fallback for
    /// stiffness laws where no explicit solution exists.
    pub fn solve_x0_bisection(&self, gamma: f64) -> Result<f64, RelaxError> {
        let w0 = self.stored_energy();
        let remaining = self.dissipation.remaining(gamma)?;
        if remaining < -SCALE_TOL * w0 {
            return Err(RelaxError::Infeasible { gamma, deficit: -remaining });
        }
        // formulated against the precomputed remainder so the residual keeps
        // resolving sign once the stored term shrinks below ulp(W₀)
        let residual = |x0: f64| {
            let stretch = self.x_m - x0;
            0.5 * self.k0 * stretch * stretch - remaining
        };
        let mut lo = self.x_m - 2.0 * (self.x_m - self.x0_initial);
        let mut hi = self.x_m;
        // residual is decreasing in x0: positive at lo, ≤ 0 at x_m
        for _ in 0..200 {
            if hi - lo <= 1e-15 * (self.x_m.abs() + 1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if residual(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Closed-form unstretched length for the two relaxation laws.
    pub fn closed_form_x0(&self, gamma: f64) -> Result<f64, RelaxError> {
        if !(0.0..=1.0).contains(&gamma) || !gamma.is_finite() {
            return Err(RelaxError::Law(CatalogError::OutOfDomain { gamma }));
        }
        let stretch = self.x_m - self.x0_initial;
        match self.dissipation {
            DissipationLaw::RelaxPolyline { n, .. } => {
                let drained = (gamma.powf(n) - n * gamma) / (1.0 - n);
                Ok(self.x_m - (1.0 - drained).sqrt() * stretch)
            }
            DissipationLaw::RelaxExp { n, .. } => {
                let decay = if gamma >= 1.0 {
                    0.0
                } else {
                    (-n * gamma / (1.0 - gamma)).exp()
                };
                Ok(self.x_m - decay * stretch)
            }
            _ => Err(RelaxError::UnsupportedFamily),
        }
    }

    /// Holding force at the degraded stiffness,
    /// `F(Γ) = k₀(1-Γ)(x_m - x₀(Γ))`.
    pub fn spring_force(&self, gamma: f64) -> Result<f64, RelaxError> {
        let x0 = self.solve_x0(gamma)?;
        Ok(self.k0 * (1.0 - gamma) * (self.x_m - x0))
    }

    /// Evaluates the relaxation response over a strictly increasing damage
    /// grid.
    pub fn sweep(&self, grid: &[f64]) -> Result<RelaxationTrace, RelaxError> {
        if grid.is_empty() {
            return Err(RelaxError::InvalidGrid);
        }
        for pair in grid.windows(2) {
            if pair[1] <= pair[0] {
                return Err(RelaxError::InvalidGrid);
            }
        }
        if grid[0] < 0.0 || *grid.last().unwrap() > 1.0 {
            return Err(RelaxError::InvalidGrid);
        }
        let mut samples = Vec::with_capacity(grid.len());
        for &gamma in grid {
            let x0 = self.solve_x0(gamma)?;
            let force = self.k0 * (1.0 - gamma) * (self.x_m - x0);
            let stretch = self.x_m - x0;
            samples.push(RelaxationSample {
                gamma,
                x0,
                force,
                w_el: 0.5 * self.k0 * stretch * stretch,
                w_nel: self.dissipation.value(gamma)?,
            });
        }
        Ok(RelaxationTrace { samples })
    }
}

/// One relaxation state: damage, unstretched length, holding force, and the
/// two energy-balance terms (`w_el` is the energy stored at the reference
/// stiffness, so `w_el + w_nel` is conserved along the trace).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationSample {
    pub gamma: f64,
    pub x0: f64,
    pub force: f64,
    pub w_el: f64,
    pub w_nel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationTrace {
    pub samples: Vec<RelaxationSample>,
}

impl RelaxationTrace {
    /// Largest absolute deviation of `w_el + w_nel` from the initial stored
    /// energy along the trace.
    pub fn balance_residual(&self, stored_energy: f64) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.w_el + s.w_nel - stored_energy).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case1(n: f64) -> SpringModel {
        SpringModel::case1(1.0, 1.0, 2.0, 1.0, n).unwrap()
    }

    fn case2(n: f64) -> SpringModel {
        SpringModel::case2(1.0, 1.0, 2.0, 1.0, n).unwrap()
    }

    #[test]
    fn virgin_state_is_unchanged() {
        let model = case1(0.5);
        assert_eq!(model.solve_x0(0.0).unwrap(), 1.0);
        assert_eq!(model.spring_force(0.0).unwrap(), 1.0);
    }

    #[test]
    fn case1_completes_exactly() {
        for n in [0.25, 0.5, 0.75] {
            let model = case1(n);
            assert_eq!(model.solve_x0(1.0).unwrap(), 2.0, "n = {n}");
            assert_eq!(model.spring_force(1.0).unwrap(), 0.0);
            assert_eq!(model.closed_form_x0(1.0).unwrap(), 2.0);
        }
    }

    #[test]
    fn case1_midpoint_closed_form() {
        let model = case1(0.5);
        let expected = 2.0 - (1.0 - (0.5f64.sqrt() - 0.25) / 0.5).sqrt();
        let solved = model.solve_x0(0.5).unwrap();
        assert!((solved - expected).abs() < 1e-14);
        assert!((solved - 1.70711).abs() < 1e-5);
        let closed = model.closed_form_x0(0.5).unwrap();
        assert!((closed - expected).abs() < 1e-14);
    }

    #[test]
    fn case2_midpoint_closed_form() {
        let model = case2(1.0);
        let expected = 2.0 - (-1.0f64).exp();
        assert!((model.closed_form_x0(0.5).unwrap() - expected).abs() < 1e-14);
        assert!((model.solve_x0(0.5).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.63212).abs() < 1e-5);
        // force: k0 (1-Γ) e^{-1} Δ
        let force = model.spring_force(0.5).unwrap();
        assert!((force - 0.5 * (-1.0f64).exp()).abs() < 1e-12);
        assert!((force - 0.18394).abs() < 1e-5);
    }

    #[test]
    fn case2_never_reaches_the_held_position() {
        let model = case2(2.0);
        // gammas where the remaining gap is representable in f64
        for gamma in [0.5, 0.8, 0.85] {
            assert!(model.solve_x0(gamma).unwrap() < 2.0, "gamma = {gamma}");
        }
        // past that the gap underflows but never crosses the held position
        assert!(model.solve_x0(0.999).unwrap() <= 2.0);
    }

    #[test]
    fn bisection_agrees_with_direct_solution() {
        for model in [case1(0.25), case1(0.75), case2(1.0), case2(4.0)] {
            for i in 0..=100 {
                let gamma = i as f64 / 100.0;
                let direct = model.solve_x0(gamma).unwrap();
                let bisected = model.solve_x0_bisection(gamma).unwrap();
                assert!(
                    (direct - bisected).abs() <= 1e-10 * direct.abs(),
                    "gamma = {gamma}: {direct} vs {bisected}"
                );
            }
        }
    }

    #[test]
    fn sweep_single_point() {
        let model = case1(0.5);
        let trace = model.sweep(&[0.0]).unwrap();
        assert_eq!(trace.samples.len(), 1);
        assert_eq!(trace.samples[0].x0, 1.0);
        assert_eq!(trace.samples[0].force, 1.0);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let model = case1(0.5);
        assert_eq!(model.sweep(&[]), Err(RelaxError::InvalidGrid));
        assert_eq!(model.sweep(&[0.2, 0.1]), Err(RelaxError::InvalidGrid));
        assert_eq!(model.sweep(&[0.0, 1.5]), Err(RelaxError::InvalidGrid));
    }

    #[test]
    fn inconsistent_dissipation_scale_rejected() {
        let law = DissipationLaw::relax_polyline(0.3, 0.5).unwrap();
        let err = SpringModel::with_dissipation(1.0, 1.0, 2.0, 1.0, law);
        assert!(matches!(err, Err(RelaxError::InconsistentScale { .. })));
    }

    #[test]
    fn unbounded_dissipation_becomes_infeasible() {
        // the log-divergent law matches W₀ in scale but exceeds it mid-range
        let law = DissipationLaw::arc_tanh_log(0.5).unwrap();
        let model = SpringModel::with_dissipation(1.0, 1.0, 2.0, 1.0, law).unwrap();
        assert!(model.solve_x0(0.2).is_ok());
        assert!(matches!(
            model.solve_x0(0.9),
            Err(RelaxError::Infeasible { .. })
        ));
    }

    #[test]
    fn closed_form_requires_relaxation_family() {
        let law = DissipationLaw::power(0.5, 2.0).unwrap();
        let model = SpringModel::with_dissipation(1.0, 1.0, 2.0, 1.0, law).unwrap();
        assert_eq!(model.closed_form_x0(0.5), Err(RelaxError::UnsupportedFamily));
    }
}
