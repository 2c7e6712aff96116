//! Cross-checks of the kinematics and energy module against independent
//! computations: the two algebraically equivalent strain formulas, a
//! separate invariant calculator, finite-difference gradients, and frame
//! indifference.

mod common;

use common::*;
use matstate_core::catalog::NonlinearityLaw;
use matstate_core::energy::{
    first_pk_stress, lagrangian_strain, landau_energy, transverse_energy, DamageState,
    ElasticEnergy, IsotropicLandauParams, TransverseIsotropyParams,
};
use matstate_core::tensor::Tensor2;
use proptest::prelude::*;

fn params() -> IsotropicLandauParams {
    IsotropicLandauParams::new(51e9, 26e9, -3.5e11, 0.5)
        .unwrap()
        .with_third_order(-2.0e11, 1.5e11)
}

fn aniso() -> TransverseIsotropyParams {
    TransverseIsotropyParams::new(
        [8e10, -1.2e11, 6e10, -4e10, 9e10, -7e10],
        [0.0, 0.0, 1.0],
    )
    .unwrap()
}

proptest! {
    /// E = ½(H + Hᵀ + HᵀH) computed by the implementation must match the
    /// deformation-gradient form ½(FᵀF − I) and be symmetric.
    #[test]
    fn strain_matches_deformation_gradient_form(raw in proptest::array::uniform9(-0.01f64..0.01)) {
        let h = Tensor2::new(raw);
        let strain = lagrangian_strain(&h);
        prop_assert!(strain.is_symmetric(1e-12));
        let f = Tensor2::identity() + h;
        let oracle = (f.transpose() * f - Tensor2::identity()).scaled(0.5);
        prop_assert!((strain - oracle).max_abs() < 1e-15);
    }
}

#[test]
fn landau_energy_matches_independent_invariant_sum() {
    // oracle: invariants accumulated with explicit index loops, kept apart
    // from the Tensor2 methods the implementation uses
    let mut rng = SplitMix64::new(41);
    let p = params();
    let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
    let state = DamageState::new(0.3).unwrap();
    let shape = law.shape(0.3).unwrap();
    for _ in 0..50 {
        let e = random_symmetric(&mut rng, 5e-3);
        let c = e.components();
        let tr: f64 = c[0] + c[4] + c[8];
        let mut tr2 = 0.0;
        let mut tr3 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                tr2 += c[3 * i + j] * c[3 * j + i];
                for k in 0..3 {
                    tr3 += c[3 * i + j] * c[3 * j + k] * c[3 * k + i];
                }
            }
        }
        let soften = 1.0 - 0.5 * 0.3;
        let oracle = 0.5 * p.lambda0 * soften * tr * tr
            + p.mu0 * soften * tr2
            + p.c0 * shape * tr * tr * tr / 3.0
            + p.b0 * shape * tr * tr2
            + p.a0 * shape * tr3 / 3.0;
        let got = landau_energy(&e, &state, &p, &law).unwrap();
        assert!(
            (got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
            "{got} vs {oracle}"
        );
    }
}

#[test]
fn transverse_energy_matches_independent_invariant_sum() {
    let mut rng = SplitMix64::new(43);
    let p = params();
    let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
    let aniso = aniso();
    let state = DamageState::with_anisotropy(0.2, 0.5).unwrap();
    let a = [0.0, 0.0, 1.0];
    for _ in 0..50 {
        let e = random_symmetric(&mut rng, 5e-3);
        let iso = landau_energy(&e, &state, &p, &law).unwrap();
        // direction-resolved invariants by explicit summation
        let mut ea = [0.0f64; 3];
        for i in 0..3 {
            for j in 0..3 {
                ea[i] += e[(i, j)] * a[j];
            }
        }
        let i_a: f64 = (0..3).map(|i| a[i] * ea[i]).sum();
        let i_a2: f64 = (0..3).map(|i| ea[i] * ea[i]).sum();
        let t1 = e.trace();
        let t2 = e.trace_squared();
        let s = (0.5f64).tanh() / 1.0f64.tanh();
        let d = aniso.base_coefficients();
        let oracle = iso
            + s * (d[0] * i_a.powi(3)
                + d[1] * i_a * i_a * t1
                + d[2] * i_a * t2
                + d[3] * i_a * t1 * t1
                + d[4] * i_a * i_a2
                + d[5] * i_a2 * t1);
        let got = transverse_energy(&e, &state, &p, &aniso, &law).unwrap();
        assert!((got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0));
    }
}

#[test]
fn elastic_energy_vanishes_at_zero_strain_for_all_damage() {
    let p = params();
    let laws = [
        NonlinearityLaw::tanh_asymptotic(-3.5e11, 2.0, 4.0).unwrap(),
        NonlinearityLaw::poly_bump(-3.5e11, 2.0).unwrap(),
        NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap(),
        NonlinearityLaw::constant(-3.5e11).unwrap(),
    ];
    for law in laws {
        for i in 0..11 {
            let state = DamageState::new(i as f64 / 10.0).unwrap();
            assert_eq!(
                landau_energy(&Tensor2::ZERO, &state, &p, &law).unwrap(),
                0.0
            );
        }
    }
}

#[test]
fn isotropic_stress_matches_finite_differences() {
    let mut rng = SplitMix64::new(7);
    let model = ElasticEnergy::isotropic(params(), NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap());
    let state = DamageState::new(0.3).unwrap();
    for _ in 0..100 {
        let strain = random_symmetric(&mut rng, 1e-2 / 3.0);
        let analytic = model.stress(&strain, &state).unwrap();
        let numeric = finite_difference_stress(&model, &strain, &state, 1e-7);
        let err = tensor_relative_error(&analytic, &numeric);
        assert!(err < 1e-6, "relative error {err}");
    }
}

#[test]
fn transverse_stress_matches_finite_differences() {
    let mut rng = SplitMix64::new(11);
    let model = ElasticEnergy::transverse(
        params(),
        NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap(),
        aniso(),
    );
    let state = DamageState::with_anisotropy(0.3, 0.5).unwrap();
    for _ in 0..100 {
        let strain = random_symmetric(&mut rng, 1e-2 / 3.0);
        let analytic = model.stress(&strain, &state).unwrap();
        let numeric = finite_difference_stress(&model, &strain, &state, 1e-7);
        let err = tensor_relative_error(&analytic, &numeric);
        assert!(err < 1e-6, "relative error {err}");
    }
}

#[test]
fn isotropic_energy_is_frame_indifferent() {
    let mut rng = SplitMix64::new(13);
    let p = params();
    let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
    let state = DamageState::new(0.4).unwrap();
    for _ in 0..50 {
        let strain = random_symmetric(&mut rng, 5e-3);
        let q = random_rotation(&mut rng);
        let rotated = rotate_strain(&q, &strain);
        let w = landau_energy(&strain, &state, &p, &law).unwrap();
        let w_rot = landau_energy(&rotated, &state, &p, &law).unwrap();
        assert!(
            (w - w_rot).abs() <= 1e-10 * w.abs().max(1e-30),
            "{w} vs {w_rot}"
        );
    }
}

#[test]
fn transverse_energy_invariant_under_rotations_fixing_the_axis() {
    let mut rng = SplitMix64::new(17);
    let p = params();
    let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
    let aniso = aniso();
    let state = DamageState::with_anisotropy(0.25, 0.6).unwrap();
    for _ in 0..50 {
        let strain = random_symmetric(&mut rng, 5e-3);
        let q = rotation(aniso.direction(), rng.uniform(0.0, core::f64::consts::PI));
        let rotated = rotate_strain(&q, &strain);
        let w = transverse_energy(&strain, &state, &p, &aniso, &law).unwrap();
        let w_rot = transverse_energy(&rotated, &state, &p, &aniso, &law).unwrap();
        assert!(
            (w - w_rot).abs() <= 1e-10 * w.abs().max(1e-30),
            "{w} vs {w_rot}"
        );
    }
}

#[test]
fn transverse_equals_isotropic_at_zero_anisotropic_damage() {
    let mut rng = SplitMix64::new(19);
    let p = params();
    let law = NonlinearityLaw::exp_bump(-3.5e11, 2.0).unwrap();
    let aniso = aniso();
    for _ in 0..50 {
        let strain = random_symmetric(&mut rng, 5e-3);
        let state = DamageState::with_anisotropy(rng.next_f64() * 0.9, 0.0).unwrap();
        let iso = landau_energy(&strain, &state, &p, &law).unwrap();
        let full = transverse_energy(&strain, &state, &p, &aniso, &law).unwrap();
        assert_eq!(iso, full);
    }
}

#[test]
fn first_pk_stress_matches_naive_product() {
    let mut rng = SplitMix64::new(23);
    for _ in 0..50 {
        let f = Tensor2::identity() + random_tensor(&mut rng, 0.05);
        let t = random_symmetric(&mut rng, 1e8);
        let s = first_pk_stress(&f, &t).unwrap();
        let mut oracle = Tensor2::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    oracle[(i, j)] += f[(i, k)] * t[(k, j)];
                }
            }
        }
        assert!(tensor_relative_error(&s, &oracle) < 1e-15);
    }
}
