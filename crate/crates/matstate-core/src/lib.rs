//! Simulation kernels for damage sensing and prognosis with an internal
//! damage variable.
//!
//! The material state is described by a scalar `Γ ∈ [0, 1]` (0 = virgin,
//! 1 = fully damaged), optionally extended by a second variable and a
//! direction for damage-induced anisotropy. Everything the crate computes
//! derives from a pseudo-elastic energy `W(E, Γ) = W_el(E, Γ) + W_nel(Γ)`:
//! a recoverable elastic part evaluated at fixed damage and a non-recoverable
//! part that only depends on damage.
//!
//! The crate is organized around that split:
//!
//! - [`tensor`]: minimal 3×3 tensor algebra for finite-strain kinematics.
//! - [`energy`]: strain measures, the isotropic and transversely isotropic
//!   third-order strain energies, and stress as the energy gradient.
//! - [`catalog`]: families of damage-dependence functions — nonlinearity
//!   laws `A(Γ)` and dissipation laws `W_nel(Γ)` — with analytic derivatives.
//! - [`relaxation`]: stress relaxation of a degrading spring held at fixed
//!   displacement, with closed-form solutions.
//! - [`oscillator`]: free vibration on a bilinear (tension/compression)
//!   spring and FFT extraction of the second-harmonic ratio `A₂/A₁`.
//! - [`creep`]: creep-like growth of plastic strain under constant stress,
//!   integrating the dissipation balance in `Γ`.
//!
//! All solvers are pure functions of immutable models; the crate is
//! `no_std`-compatible (requires `alloc`) with the default `std` feature
//! enabled for normal builds.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod creep;
pub mod energy;
pub mod fft;
pub mod oscillator;
pub mod relaxation;
pub mod tensor;

pub use catalog::{CatalogError, DissipationLaw, NonlinearityLaw};
pub use creep::{CreepError, CreepModel, CreepSample, CreepTrace};
pub use energy::{
    DamageState, ElasticEnergy, EnergyError, IsotropicLandauParams, PseudoElasticModel,
    TransverseIsotropyParams,
};
pub use oscillator::{
    BilinearOscillator, HarmonicSample, HarmonicSpectrum, OscillatorError, SweepParams, TimeTrace,
};
pub use relaxation::{RelaxError, RelaxationSample, RelaxationTrace, SpringModel};
pub use tensor::Tensor2;
