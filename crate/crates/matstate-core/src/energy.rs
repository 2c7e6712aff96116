//! Finite-strain kinematics, strain-energy densities, and stress as the
//! energy gradient.
//!
//! The elastic response from a fixed damage state is hyperelastic: a
//! third-order-in-strain energy with damage-dependent coefficients. The
//! Lamé constants soften linearly in damage, `λ(Γ) = λ₀(1-aΓ)` and
//! `μ(Γ) = μ₀(1-aΓ)`, while the three third-order constants share one
//! dimensionless shape drawn from the [`crate::catalog`], so that
//! `A(Γ)/A₀ = B(Γ)/B₀ = C(Γ)/C₀`.
//!
//! A transversely isotropic extension adds six third-order invariant terms
//! along a distinguished direction; their common damage shape vanishes at
//! zero anisotropic damage, so the extension reduces exactly to the
//! isotropic energy there.

use core::fmt;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::catalog::{CatalogError, DissipationLaw, NonlinearityLaw};
use crate::tensor::{dot, norm3, Tensor2};

/// Absolute tolerance for treating a strain tensor as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyError {
    /// Strain input violates the symmetry requirement of Lagrangian strain.
    NonSymmetricStrain { asymmetry: f64 },
    /// Anisotropy direction is not a unit vector.
    NonUnitDirection { norm: f64 },
    /// A deformation gradient with (numerically) zero determinant.
    SingularDeformation { determinant: f64 },
    /// Non-finite tensor input.
    NonFinite,
    /// A damage variable outside `[0, 1]`.
    InvalidDamage { value: f64 },
    /// Parameter set violates its constraints.
    InvalidParameter { name: &'static str, value: f64 },
    /// Propagated failure from a catalog law evaluation.
    Law(CatalogError),
}

impl fmt::Display for EnergyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyError::NonSymmetricStrain { asymmetry } => {
                write!(f, "strain tensor asymmetric by {asymmetry}")
            }
            EnergyError::NonUnitDirection { norm } => {
                write!(f, "anisotropy direction has norm {norm}, expected 1")
            }
            EnergyError::SingularDeformation { determinant } => {
                write!(f, "deformation gradient is singular (det = {determinant})")
            }
            EnergyError::NonFinite => write!(f, "non-finite tensor input"),
            EnergyError::InvalidDamage { value } => {
                write!(f, "damage variable {value} outside [0, 1]")
            }
            EnergyError::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            EnergyError::Law(err) => write!(f, "constitutive law: {err}"),
        }
    }
}

impl From<CatalogError> for EnergyError {
    fn from(err: CatalogError) -> Self {
        EnergyError::Law(err)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EnergyError {}

/// Internal damage state: an isotropic variable, plus an optional second
/// variable driving the anisotropic part of the energy. The virgin state is
/// all zeros. The anisotropy direction lives with the anisotropic material
/// parameters ([`TransverseIsotropyParams`]), not with the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DamageState {
    gamma1: f64,
    gamma2: f64,
}

impl DamageState {
    /// Purely isotropic damage.
    pub fn new(gamma1: f64) -> Result<Self, EnergyError> {
        Self::with_anisotropy(gamma1, 0.0)
    }

    pub fn with_anisotropy(gamma1: f64, gamma2: f64) -> Result<Self, EnergyError> {
        for value in [gamma1, gamma2] {
            if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                return Err(EnergyError::InvalidDamage { value });
            }
        }
        Ok(DamageState { gamma1, gamma2 })
    }

    pub fn virgin() -> Self {
        DamageState { gamma1: 0.0, gamma2: 0.0 }
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }
}

/// Second- and third-order isotropic elastic constants (Pa) with the
/// damage-softening coefficient for the Lamé pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicLandauParams {
    pub lambda0: f64,
    pub mu0: f64,
    /// Third-order constant `A₀`; typically negative for metals.
    pub a0: f64,
    pub b0: f64,
    pub c0: f64,
    /// `a` in `λ(Γ) = λ₀(1-aΓ)`, `μ(Γ) = μ₀(1-aΓ)`; dimensionless in [0, 1].
    pub modulus_decay: f64,
}

impl IsotropicLandauParams {
    /// Second-order behavior plus the leading third-order constant; `b0` and
    /// `c0` start at zero and can be set with [`Self::with_third_order`].
    pub fn new(
        lambda0: f64,
        mu0: f64,
        a0: f64,
        modulus_decay: f64,
    ) -> Result<Self, EnergyError> {
        let p = IsotropicLandauParams { lambda0, mu0, a0, b0: 0.0, c0: 0.0, modulus_decay };
        p.validate()?;
        Ok(p)
    }

    pub fn with_third_order(mut self, b0: f64, c0: f64) -> Self {
        self.b0 = b0;
        self.c0 = c0;
        self
    }

    fn validate(&self) -> Result<(), EnergyError> {
        if !(self.mu0 > 0.0) {
            return Err(EnergyError::InvalidParameter { name: "mu0", value: self.mu0 });
        }
        let bulk = self.lambda0 + 2.0 * self.mu0 / 3.0;
        if !(bulk > 0.0) {
            return Err(EnergyError::InvalidParameter { name: "lambda0", value: self.lambda0 });
        }
        if !(0.0..=1.0).contains(&self.modulus_decay) {
            return Err(EnergyError::InvalidParameter {
                name: "modulus_decay",
                value: self.modulus_decay,
            });
        }
        Ok(())
    }

    /// `λ(Γ)` and `μ(Γ)` at the given isotropic damage.
    pub fn lame(&self, gamma1: f64) -> (f64, f64) {
        let soften = 1.0 - self.modulus_decay * gamma1;
        (self.lambda0 * soften, self.mu0 * soften)
    }
}

/// Six anisotropic third-order constants (Pa) and the direction of
/// transverse isotropy. Each coefficient is `d0[i]` times a common shape
/// `tanh(Γ₂)/tanh(1)`, which vanishes in the isotropic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseIsotropyParams {
    d0: [f64; 6],
    direction: [f64; 3],
}

impl TransverseIsotropyParams {
    pub fn new(d0: [f64; 6], direction: [f64; 3]) -> Result<Self, EnergyError> {
        let norm = norm3(direction);
        if !norm.is_finite() || (norm - 1.0).abs() > SYMMETRY_TOL {
            return Err(EnergyError::NonUnitDirection { norm });
        }
        Ok(TransverseIsotropyParams { d0, direction })
    }

    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    pub fn base_coefficients(&self) -> [f64; 6] {
        self.d0
    }

    /// Damage shape shared by all six coefficients.
    pub fn shape(gamma2: f64) -> f64 {
        gamma2.tanh() / 1.0f64.tanh()
    }

    /// `D₁(Γ₂) … D₆(Γ₂)`.
    pub fn coefficients(&self, gamma2: f64) -> [f64; 6] {
        let s = Self::shape(gamma2);
        self.d0.map(|d| d * s)
    }
}

fn check_strain(strain: &Tensor2) -> Result<(), EnergyError> {
    if !strain.is_finite() {
        return Err(EnergyError::NonFinite);
    }
    if !strain.is_symmetric(SYMMETRY_TOL) {
        return Err(EnergyError::NonSymmetricStrain { asymmetry: strain.asymmetry() });
    }
    Ok(())
}

/// Lagrangian strain from a displacement gradient:
/// `E = ½(H + Hᵀ + HᵀH)`, identical to `½(FᵀF - I)` with `F = I + H`.
pub fn lagrangian_strain(h: &Tensor2) -> Tensor2 {
    let ht = h.transpose();
    (*h + ht + ht * *h).scaled(0.5)
}

/// Isotropic third-order strain energy at damage state `Γ`:
///
/// `W = ½λ(Γ)tr(E)² + μ(Γ)tr(E²) + ⅓C(Γ)tr(E)³ + B(Γ)tr(E)tr(E²) + ⅓A(Γ)tr(E³)`
///
/// with `A(Γ) = A₀·s(Γ)`, `B(Γ) = B₀·s(Γ)`, `C(Γ) = C₀·s(Γ)` for the law's
/// dimensionless shape `s`.
pub fn landau_energy(
    strain: &Tensor2,
    state: &DamageState,
    params: &IsotropicLandauParams,
    law: &NonlinearityLaw,
) -> Result<f64, EnergyError> {
    check_strain(strain)?;
    let (lambda, mu) = params.lame(state.gamma1());
    let shape = law.shape(state.gamma1())?;
    let t1 = strain.trace();
    let t2 = strain.trace_squared();
    let t3 = strain.trace_cubed();
    Ok(0.5 * lambda * t1 * t1
        + mu * t2
        + params.c0 * shape * t1 * t1 * t1 / 3.0
        + params.b0 * shape * t1 * t2
        + params.a0 * shape * t3 / 3.0)
}

/// Transversely isotropic energy: the isotropic part in `Γ₁` plus six
/// third-order invariant terms along the anisotropy direction, scaled by
/// `Γ₂`. Reduces exactly to [`landau_energy`] at `Γ₂ = 0`.
pub fn transverse_energy(
    strain: &Tensor2,
    state: &DamageState,
    params: &IsotropicLandauParams,
    aniso: &TransverseIsotropyParams,
    law: &NonlinearityLaw,
) -> Result<f64, EnergyError> {
    let isotropic = landau_energy(strain, state, params, law)?;
    let a = aniso.direction();
    let ea = strain.apply(a);
    let i_a = dot(a, ea);
    let i_a2 = dot(ea, ea); // a·E²a for symmetric E
    let t1 = strain.trace();
    let t2 = strain.trace_squared();
    let [d1, d2, d3, d4, d5, d6] = aniso.coefficients(state.gamma2());
    Ok(isotropic
        + d1 * i_a * i_a * i_a
        + d2 * i_a * i_a * t1
        + d3 * i_a * t2
        + d4 * i_a * t1 * t1
        + d5 * i_a * i_a2
        + d6 * i_a2 * t1)
}

/// Elastic part of the pseudo-elastic energy: the isotropic law, optionally
/// extended by transverse isotropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticEnergy {
    pub isotropic: IsotropicLandauParams,
    pub law: NonlinearityLaw,
    pub anisotropy: Option<TransverseIsotropyParams>,
}

impl ElasticEnergy {
    pub fn isotropic(params: IsotropicLandauParams, law: NonlinearityLaw) -> Self {
        ElasticEnergy { isotropic: params, law, anisotropy: None }
    }

    pub fn transverse(
        params: IsotropicLandauParams,
        law: NonlinearityLaw,
        aniso: TransverseIsotropyParams,
    ) -> Self {
        ElasticEnergy { isotropic: params, law, anisotropy: Some(aniso) }
    }

    /// `W_el(E, Γ)` in Pa.
    pub fn energy(&self, strain: &Tensor2, state: &DamageState) -> Result<f64, EnergyError> {
        match &self.anisotropy {
            None => landau_energy(strain, state, &self.isotropic, &self.law),
            Some(aniso) => transverse_energy(strain, state, &self.isotropic, aniso, &self.law),
        }
    }

    /// Second Piola-Kirchhoff stress `∂W_el/∂E`, with `E` treated as
    /// symmetric (conjugate off-diagonal components vary together). The
    /// result is symmetric.
    pub fn stress(&self, strain: &Tensor2, state: &DamageState) -> Result<Tensor2, EnergyError> {
        check_strain(strain)?;
        let params = &self.isotropic;
        let (lambda, mu) = params.lame(state.gamma1());
        let shape = self.law.shape(state.gamma1())?;
        let t1 = strain.trace();
        let t2 = strain.trace_squared();
        let identity = Tensor2::identity();
        let squared = *strain * *strain;

        let a_g = params.a0 * shape;
        let b_g = params.b0 * shape;
        let c_g = params.c0 * shape;
        let mut stress = identity * (lambda * t1 + c_g * t1 * t1 + b_g * t2)
            + *strain * (2.0 * mu + 2.0 * b_g * t1)
            + squared * a_g;

        if let Some(aniso) = &self.anisotropy {
            let a = aniso.direction();
            let ea = strain.apply(a);
            let i_a = dot(a, ea);
            let i_a2 = dot(ea, ea);
            let m = Tensor2::outer(a, a);
            let n = Tensor2::outer(a, ea) + Tensor2::outer(ea, a);
            let [d1, d2, d3, d4, d5, d6] = aniso.coefficients(state.gamma2());
            stress = stress
                + m * (3.0 * d1 * i_a * i_a
                    + 2.0 * d2 * i_a * t1
                    + d3 * t2
                    + d4 * t1 * t1
                    + d5 * i_a2)
                + identity * (d2 * i_a * i_a + 2.0 * d4 * i_a * t1 + d6 * i_a2)
                + *strain * (2.0 * d3 * i_a)
                + n * (d5 * i_a + d6 * t1);
        }
        Ok(stress)
    }
}

/// Second Piola-Kirchhoff stress of the selected elastic energy.
pub fn second_pk_stress(
    strain: &Tensor2,
    state: &DamageState,
    model: &ElasticEnergy,
) -> Result<Tensor2, EnergyError> {
    model.stress(strain, state)
}

/// First Piola-Kirchhoff stress `S = F·T_RR`.
pub fn first_pk_stress(f: &Tensor2, t_rr: &Tensor2) -> Result<Tensor2, EnergyError> {
    if !f.is_finite() || !t_rr.is_finite() {
        return Err(EnergyError::NonFinite);
    }
    let det = f.determinant();
    let scale = f.norm();
    if det.abs() <= 1e-12 * scale * scale * scale {
        return Err(EnergyError::SingularDeformation { determinant: det });
    }
    Ok(*f * *t_rr)
}

/// Pseudo-elastic energy of a 1D elastic-perfectly-plastic bar:
/// `½·E·ε² + |σ_y||ε_p|`, the elastic strain measured from the unloaded
/// configuration plus the plastic work already spent reaching it.
pub fn perfect_plastic_energy(
    elastic_strain: f64,
    plastic_strain: f64,
    yield_stress: f64,
    modulus: f64,
) -> f64 {
    0.5 * modulus * elastic_strain * elastic_strain + yield_stress.abs() * plastic_strain.abs()
}

/// Pairing of an elastic energy with a dissipation law:
/// `W(E, Γ) = W_el(E, Γ) + W_nel(Γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoElasticModel {
    pub elastic: ElasticEnergy,
    pub dissipation: DissipationLaw,
}

impl PseudoElasticModel {
    pub fn new(elastic: ElasticEnergy, dissipation: DissipationLaw) -> Self {
        PseudoElasticModel { elastic, dissipation }
    }

    pub fn total_energy(&self, strain: &Tensor2, state: &DamageState) -> Result<f64, EnergyError> {
        let elastic = self.elastic.energy(strain, state)?;
        let dissipated = self.dissipation.value(state.gamma1())?;
        Ok(elastic + dissipated)
    }
}
