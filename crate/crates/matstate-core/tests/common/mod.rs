//! Shared helpers for the integration suites: a deterministic generator and
//! the finite-difference oracles the analytic derivatives are checked
//! against.

#![allow(dead_code)]

use matstate_core::energy::{DamageState, ElasticEnergy};
use matstate_core::tensor::Tensor2;

/// SplitMix64: tiny, seedable, and stable across toolchains.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Random symmetric tensor with entries in [-magnitude, magnitude].
pub fn random_symmetric(rng: &mut SplitMix64, magnitude: f64) -> Tensor2 {
    let mut t = Tensor2::ZERO;
    for i in 0..3 {
        for j in i..3 {
            let v = rng.uniform(-magnitude, magnitude);
            t[(i, j)] = v;
            t[(j, i)] = v;
        }
    }
    t
}

/// Random (not necessarily symmetric) tensor with entries in
/// [-magnitude, magnitude].
pub fn random_tensor(rng: &mut SplitMix64, magnitude: f64) -> Tensor2 {
    let mut t = Tensor2::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            t[(i, j)] = rng.uniform(-magnitude, magnitude);
        }
    }
    t
}

/// Rotation about `axis` (normalized internally) by `angle`, via the
/// Rodrigues formula.
pub fn rotation(axis: [f64; 3], angle: f64) -> Tensor2 {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let u = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    let mut skew = Tensor2::ZERO;
    skew[(0, 1)] = -u[2];
    skew[(0, 2)] = u[1];
    skew[(1, 0)] = u[2];
    skew[(1, 2)] = -u[0];
    skew[(2, 0)] = -u[1];
    skew[(2, 1)] = u[0];
    Tensor2::identity() + skew * angle.sin() + (skew * skew) * (1.0 - angle.cos())
}

pub fn random_rotation(rng: &mut SplitMix64) -> Tensor2 {
    let axis = [
        rng.uniform(-1.0, 1.0),
        rng.uniform(-1.0, 1.0),
        rng.uniform(-1.0, 1.0),
    ];
    rotation(axis, rng.uniform(0.0, core::f64::consts::PI))
}

/// `Q E Qᵀ`.
pub fn rotate_strain(q: &Tensor2, e: &Tensor2) -> Tensor2 {
    *q * *e * q.transpose()
}

/// Central finite difference of a scalar function.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, step: f64) -> f64 {
    (f(x + step) - f(x - step)) / (2.0 * step)
}

/// Finite-difference gradient of the elastic energy with respect to a
/// symmetric strain: conjugate off-diagonal components are perturbed
/// together (keeping the argument symmetric) and the pair derivative is
/// halved, matching the convention of the analytic stress.
pub fn finite_difference_stress(
    model: &ElasticEnergy,
    strain: &Tensor2,
    state: &DamageState,
    step: f64,
) -> Tensor2 {
    let mut grad = Tensor2::ZERO;
    for i in 0..3 {
        for j in i..3 {
            let mut plus = *strain;
            let mut minus = *strain;
            plus[(i, j)] += step;
            minus[(i, j)] -= step;
            if i != j {
                plus[(j, i)] += step;
                minus[(j, i)] -= step;
            }
            let dw = (model.energy(&plus, state).unwrap() - model.energy(&minus, state).unwrap())
                / (2.0 * step);
            let value = if i == j { dw } else { dw / 2.0 };
            grad[(i, j)] = value;
            grad[(j, i)] = value;
        }
    }
    grad
}

/// Relative agreement of two tensors against the larger of their scales.
pub fn tensor_relative_error(a: &Tensor2, b: &Tensor2) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    (*a - *b).max_abs() / scale
}
