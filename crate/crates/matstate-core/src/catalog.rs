//! Catalog of damage-dependence functions.
//!
//! Two families live here:
//!
//! - [`NonlinearityLaw`]: candidate shapes for the third-order elastic
//!   constant `A(Γ)` (and, through a shared shape, `B(Γ)` and `C(Γ)`).
//!   Monotone families model fatigue-like growth of acoustic nonlinearity;
//!   bump families model the rise-then-fall trend seen under creep.
//! - [`DissipationLaw`]: candidate shapes for the non-recoverable energy
//!   `W_nel(Γ)`. Every admissible law vanishes at `Γ = 0` and is
//!   nondecreasing on `[0, 1]`; they differ in whether the total dissipated
//!   energy and the driving force `∂W_nel/∂Γ` stay bounded.
//!
//! Laws are immutable after construction and evaluation is pure. Evaluations
//! that would be infinite return [`CatalogError::Divergent`] instead of a
//! non-finite float so downstream solvers never propagate NaN/inf silently.

use core::fmt;

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Evaluation or construction failure for a catalog law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogError {
    /// `gamma` outside the admissible `[0, 1]` range.
    OutOfDomain { gamma: f64 },
    /// The requested quantity is unbounded at this `gamma`.
    Divergent { gamma: f64 },
    /// A constructor argument violates the family's constraints.
    InvalidParameter { name: &'static str, value: f64 },
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::OutOfDomain { gamma } => {
                write!(f, "damage variable {gamma} outside [0, 1]")
            }
            CatalogError::Divergent { gamma } => {
                write!(f, "evaluation diverges at damage {gamma}")
            }
            CatalogError::InvalidParameter { name, value } => {
                write!(f, "invalid law parameter {name} = {value}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CatalogError {}

fn check_domain(gamma: f64) -> Result<(), CatalogError> {
    if !(0.0..=1.0).contains(&gamma) || !gamma.is_finite() {
        return Err(CatalogError::OutOfDomain { gamma });
    }
    Ok(())
}

fn require(cond: bool, name: &'static str, value: f64) -> Result<(), CatalogError> {
    if cond {
        Ok(())
    } else {
        Err(CatalogError::InvalidParameter { name, value })
    }
}

/// `e^{-1/(1-Γ)}`, the cutoff factor of the exponential bump. Evaluates to
/// exactly 0 at `Γ = 1`.
fn bump_cutoff(gamma: f64) -> f64 {
    if gamma >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - gamma)).exp()
    }
}

/// Candidate damage dependence of the third-order elastic constant.
///
/// Each variant stores the virgin-state scale `a0` (Pa); third-order
/// constants of metals are typically negative, so `a0` may carry either
/// sign. [`NonlinearityLaw::shape`] returns the dimensionless factor the
/// scale multiplies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonlinearityLaw {
    /// `a0 · atanh(Γ)` — monotone, unbounded as `Γ → 1`.
    ArcTanh { a0: f64 },
    /// `a0 (1 + (m-1) tanh(nΓ)/tanh(n))` — monotone, saturates at `m·a0`.
    TanhAsymptotic { a0: f64, m: f64, n: f64 },
    /// `a0 (1 + Γⁿ(1-Γ)(n+1)^{n+1}/nⁿ)` — single interior maximum `2·a0`
    /// at `Γ = n/(n+1)`.
    PolyBump { a0: f64, n: f64 },
    /// `a0 (1 + cΓⁿ e^{-1/(1-Γ)})` — single interior maximum; `c` is
    /// calibrated at construction so the maximum is `2·a0`. Both endpoints
    /// have zero slope when `n > 1`.
    ExpBump { a0: f64, n: f64, c: f64 },
    /// Damage-independent constant `a0`.
    Constant { a0: f64 },
}

impl NonlinearityLaw {
    pub fn arc_tanh(a0: f64) -> Result<Self, CatalogError> {
        require(a0.is_finite(), "a0", a0)?;
        Ok(NonlinearityLaw::ArcTanh { a0 })
    }

    pub fn tanh_asymptotic(a0: f64, m: f64, n: f64) -> Result<Self, CatalogError> {
        require(a0.is_finite(), "a0", a0)?;
        require(m.is_finite() && m >= 1.0, "m", m)?;
        require(n.is_finite() && n > 0.0, "n", n)?;
        Ok(NonlinearityLaw::TanhAsymptotic { a0, m, n })
    }

    pub fn poly_bump(a0: f64, n: f64) -> Result<Self, CatalogError> {
        require(a0.is_finite(), "a0", a0)?;
        require(n.is_finite() && n > 0.0, "n", n)?;
        Ok(NonlinearityLaw::PolyBump { a0, n })
    }

    /// Builds the exponential bump, solving the 1D maximization that pins
    /// its peak to `2·a0`.
    pub fn exp_bump(a0: f64, n: f64) -> Result<Self, CatalogError> {
        require(a0.is_finite(), "a0", a0)?;
        let c = calibrate_exp_bump(n)?;
        Ok(NonlinearityLaw::ExpBump { a0, n, c })
    }

    pub fn constant(a0: f64) -> Result<Self, CatalogError> {
        require(a0.is_finite(), "a0", a0)?;
        Ok(NonlinearityLaw::Constant { a0 })
    }

    /// Virgin-state scale `a0`.
    pub fn scale(&self) -> f64 {
        match *self {
            NonlinearityLaw::ArcTanh { a0 }
            | NonlinearityLaw::TanhAsymptotic { a0, .. }
            | NonlinearityLaw::PolyBump { a0, .. }
            | NonlinearityLaw::ExpBump { a0, .. }
            | NonlinearityLaw::Constant { a0 } => a0,
        }
    }

    /// Dimensionless shape `A(Γ)/a0`.
    pub fn shape(&self, gamma: f64) -> Result<f64, CatalogError> {
        check_domain(gamma)?;
        match *self {
            NonlinearityLaw::ArcTanh { .. } => {
                if gamma >= 1.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(gamma.atanh())
            }
            NonlinearityLaw::TanhAsymptotic { m, n, .. } => {
                Ok(1.0 + (m - 1.0) * (n * gamma).tanh() / n.tanh())
            }
            NonlinearityLaw::PolyBump { n, .. } => {
                Ok(1.0 + poly_bump_prefactor(n) * gamma.powf(n) * (1.0 - gamma))
            }
            NonlinearityLaw::ExpBump { n, c, .. } => {
                Ok(1.0 + c * gamma.powf(n) * bump_cutoff(gamma))
            }
            NonlinearityLaw::Constant { .. } => Ok(1.0),
        }
    }

    /// `A(Γ)` in Pa.
    pub fn value(&self, gamma: f64) -> Result<f64, CatalogError> {
        Ok(self.scale() * self.shape(gamma)?)
    }

    /// Analytic `∂A/∂Γ` in Pa per unit damage.
    ///
    /// Endpoints with a finite one-sided limit evaluate to that limit;
    /// endpoints where the slope is unbounded return
    /// [`CatalogError::Divergent`].
    pub fn derivative(&self, gamma: f64) -> Result<f64, CatalogError> {
        check_domain(gamma)?;
        match *self {
            NonlinearityLaw::ArcTanh { a0 } => {
                if gamma >= 1.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(a0 / (1.0 - gamma * gamma))
            }
            NonlinearityLaw::TanhAsymptotic { a0, m, n } => {
                let cosh = (n * gamma).cosh();
                Ok(a0 * (m - 1.0) * n / (n.tanh() * cosh * cosh))
            }
            NonlinearityLaw::PolyBump { a0, n } => {
                if n < 1.0 && gamma == 0.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                let k = poly_bump_prefactor(n);
                Ok(a0 * k * gamma.powf(n - 1.0) * (n - (n + 1.0) * gamma))
            }
            NonlinearityLaw::ExpBump { a0, n, c } => {
                if n < 1.0 && gamma == 0.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                if gamma >= 1.0 {
                    // cutoff decays faster than any power: zero slope
                    return Ok(0.0);
                }
                let rem = 1.0 - gamma;
                let bracket = n - gamma / (rem * rem);
                Ok(a0 * c * gamma.powf(n - 1.0) * bump_cutoff(gamma) * bracket)
            }
            NonlinearityLaw::Constant { .. } => Ok(0.0),
        }
    }
}

/// `(n+1)^{n+1}/nⁿ`, the normalization that makes the polynomial bump's
/// maximum equal `2·a0`.
fn poly_bump_prefactor(n: f64) -> f64 {
    (n + 1.0).powf(n + 1.0) / n.powf(n)
}

/// Finds `c` such that `max_{Γ∈[0,1]} c·Γⁿ e^{-1/(1-Γ)} = 1`, by
/// golden-section maximization of the bump profile. Relative accuracy of
/// the located maximum is far below 1e-8 (the profile is smooth and the
/// bracket shrinks to 1e-13).
pub fn calibrate_exp_bump(n: f64) -> Result<f64, CatalogError> {
    require(n.is_finite() && n > 0.0, "n", n)?;
    let g = |gamma: f64| gamma.powf(n) * bump_cutoff(gamma);
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        }
    }
    let peak = g(0.5 * (lo + hi)).max(f1).max(f2);
    Ok(1.0 / peak)
}

/// Candidate damage dependence of the non-recoverable energy `W_nel(Γ)`.
///
/// All variants satisfy `W_nel(0) = 0` and are nondecreasing on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DissipationLaw {
    /// `w0 Γⁿ` — finite total dissipation `w0`, bounded driving force for
    /// `n ≥ 1`.
    Power { w0: f64, n: f64 },
    /// `w0 (1-(1-Γ)ⁿ)` — finite total dissipation; for `n < 1` the driving
    /// force is unbounded as `Γ → 1`.
    OneMinusPower { w0: f64, n: f64 },
    /// `w0 (Γ·atanh(Γ) - ln(1-Γ²))` — both the dissipated energy and the
    /// driving force grow without bound as `Γ → 1`, so full damage is never
    /// reached. The scale defaults to 1 in dimensionless studies.
    ArcTanhLog { w0: f64 },
    /// `w0 (Γⁿ - nΓ)/(1-n)` with `n < 1` — reaches `w0` at `Γ = 1` with the
    /// driving force unbounded at `Γ = 0`. Drives the spring relaxation
    /// profile `x_m - √(1-(Γⁿ-nΓ)/(1-n))·(x_m-x₀(0))`, which completes
    /// (`x₀(1) = x_m`) at finite damage.
    RelaxPolyline { w0: f64, n: f64 },
    /// `w0 (1 - e^{-2nΓ/(1-Γ)})` — approaches `w0` only asymptotically.
    /// The exponent is scaled so the spring relaxation profile driven by
    /// this law decays exactly like `e^{-nΓ/(1-Γ)}` in the unstretched
    /// length, with `n` the rate parameter of that profile.
    RelaxExp { w0: f64, n: f64 },
    /// `kΓ + w0 Γ^m` — an affine part with constant driving force `k` plus
    /// a damage-activated part governed by `m`; total dissipation `k + w0`
    /// independent of `m`.
    CreepAffinePower { k: f64, w0: f64, m: f64 },
}

impl DissipationLaw {
    pub fn power(w0: f64, n: f64) -> Result<Self, CatalogError> {
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        require(n.is_finite() && n > 0.0, "n", n)?;
        Ok(DissipationLaw::Power { w0, n })
    }

    pub fn one_minus_power(w0: f64, n: f64) -> Result<Self, CatalogError> {
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        require(n.is_finite() && n > 0.0, "n", n)?;
        Ok(DissipationLaw::OneMinusPower { w0, n })
    }

    pub fn arc_tanh_log(w0: f64) -> Result<Self, CatalogError> {
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        Ok(DissipationLaw::ArcTanhLog { w0 })
    }

    pub fn relax_polyline(w0: f64, n: f64) -> Result<Self, CatalogError> {
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        require(n.is_finite() && n > 0.0 && n < 1.0, "n", n)?;
        Ok(DissipationLaw::RelaxPolyline { w0, n })
    }

    pub fn relax_exp(w0: f64, n: f64) -> Result<Self, CatalogError> {
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        require(n.is_finite() && n > 0.0, "n", n)?;
        Ok(DissipationLaw::RelaxExp { w0, n })
    }

    pub fn creep_affine_power(k: f64, w0: f64, m: f64) -> Result<Self, CatalogError> {
        require(k.is_finite() && k >= 0.0, "k", k)?;
        require(w0.is_finite() && w0 >= 0.0, "w0", w0)?;
        require(m.is_finite() && m >= 1.0, "m", m)?;
        Ok(DissipationLaw::CreepAffinePower { k, w0, m })
    }

    /// Total energy dissipated over the full damage range (the natural
    /// normalization for plots). Unbounded laws report their scale factor.
    pub fn scale(&self) -> f64 {
        match *self {
            DissipationLaw::Power { w0, .. }
            | DissipationLaw::OneMinusPower { w0, .. }
            | DissipationLaw::ArcTanhLog { w0 }
            | DissipationLaw::RelaxPolyline { w0, .. }
            | DissipationLaw::RelaxExp { w0, .. } => w0,
            DissipationLaw::CreepAffinePower { k, w0, .. } => k + w0,
        }
    }

    /// `W_nel(Γ)` in Pa (J/m³); J for the lumped spring analogs.
    pub fn value(&self, gamma: f64) -> Result<f64, CatalogError> {
        check_domain(gamma)?;
        match *self {
            DissipationLaw::Power { w0, n } => Ok(w0 * gamma.powf(n)),
            DissipationLaw::OneMinusPower { w0, n } => Ok(w0 * (1.0 - (1.0 - gamma).powf(n))),
            DissipationLaw::ArcTanhLog { w0 } => {
                if gamma >= 1.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(w0 * (gamma * gamma.atanh() - (1.0 - gamma * gamma).ln()))
            }
            DissipationLaw::RelaxPolyline { w0, n } => {
                Ok(w0 * (gamma.powf(n) - n * gamma) / (1.0 - n))
            }
            DissipationLaw::RelaxExp { w0, n } => {
                if gamma >= 1.0 {
                    return Ok(w0);
                }
                Ok(w0 * (1.0 - (-2.0 * n * gamma / (1.0 - gamma)).exp()))
            }
            DissipationLaw::CreepAffinePower { k, w0, m } => {
                Ok(k * gamma + w0 * gamma.powf(m))
            }
        }
    }

    /// Analytic driving force `∂W_nel/∂Γ`.
    pub fn derivative(&self, gamma: f64) -> Result<f64, CatalogError> {
        check_domain(gamma)?;
        match *self {
            DissipationLaw::Power { w0, n } => {
                if n < 1.0 && gamma == 0.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(w0 * n * gamma.powf(n - 1.0))
            }
            DissipationLaw::OneMinusPower { w0, n } => {
                if n < 1.0 && gamma == 1.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(w0 * n * (1.0 - gamma).powf(n - 1.0))
            }
            DissipationLaw::ArcTanhLog { w0 } => {
                if gamma >= 1.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(w0 * (gamma.atanh() + 3.0 * gamma / (1.0 - gamma * gamma)))
            }
            DissipationLaw::RelaxPolyline { w0, n } => {
                if gamma == 0.0 {
                    return Err(CatalogError::Divergent { gamma });
                }
                Ok(w0 * n * (gamma.powf(n - 1.0) - 1.0) / (1.0 - n))
            }
            DissipationLaw::RelaxExp { w0, n } => {
                if gamma >= 1.0 {
                    // exponential decay beats the 1/(1-Γ)² growth
                    return Ok(0.0);
                }
                let rem = 1.0 - gamma;
                Ok(w0 * 2.0 * n * (-2.0 * n * gamma / rem).exp() / (rem * rem))
            }
            DissipationLaw::CreepAffinePower { k, w0, m } => {
                Ok(k + w0 * m * gamma.powf(m - 1.0))
            }
        }
    }

    /// Energy still available before the law saturates,
    /// `scale() - value(gamma)`, evaluated without cancellation where the
    /// family admits a direct form. For the exponential law the plain
    /// subtraction would round to zero as soon as the remainder drops below
    /// `ε·scale`; the direct form keeps resolving it down to the underflow
    /// threshold.
    pub fn remaining(&self, gamma: f64) -> Result<f64, CatalogError> {
        check_domain(gamma)?;
        match *self {
            DissipationLaw::Power { w0, n } => Ok(w0 * (1.0 - gamma.powf(n))),
            DissipationLaw::OneMinusPower { w0, n } => Ok(w0 * (1.0 - gamma).powf(n)),
            DissipationLaw::RelaxPolyline { w0, n } => {
                Ok(w0 * (1.0 - (gamma.powf(n) - n * gamma) / (1.0 - n)))
            }
            DissipationLaw::RelaxExp { w0, n } => {
                if gamma >= 1.0 {
                    return Ok(0.0);
                }
                Ok(w0 * (-2.0 * n * gamma / (1.0 - gamma)).exp())
            }
            DissipationLaw::CreepAffinePower { k, w0, m } => {
                Ok(k * (1.0 - gamma) + w0 * (1.0 - gamma.powf(m)))
            }
            DissipationLaw::ArcTanhLog { .. } => Ok(self.scale() - self.value(gamma)?),
        }
    }

    /// Samples the law on a uniform grid and checks the nondecreasing
    /// requirement (discrete differences ≥ -1e-12); divergent endpoints are
    /// skipped since the law grows without bound there by construction.
    pub fn is_nondecreasing(&self, points: usize) -> bool {
        let mut prev: Option<f64> = None;
        for i in 0..points {
            let gamma = i as f64 / (points - 1) as f64;
            let v = match self.value(gamma) {
                Ok(v) => v,
                Err(CatalogError::Divergent { .. }) => continue,
                Err(_) => return false,
            };
            if let Some(p) = prev {
                if v - p < -1e-12 {
                    return false;
                }
            }
            prev = Some(v);
        }
        true
    }
}
