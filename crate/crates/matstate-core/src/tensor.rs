//! Dense 3×3 second-order tensors and the few vector helpers the energy
//! module needs. Components are row-major; units depend on role (strain
//! tensors are dimensionless, stresses are Pa).

use core::ops::{Add, Index, IndexMut, Mul, Sub};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// A second-order tensor on 3D space, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tensor2 {
    components: [f64; 9],
}

impl Tensor2 {
    pub const ZERO: Tensor2 = Tensor2 { components: [0.0; 9] };

    pub fn new(components: [f64; 9]) -> Self {
        Tensor2 { components }
    }

    pub fn identity() -> Self {
        Tensor2::diagonal(1.0, 1.0, 1.0)
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Self {
        let mut t = Tensor2::ZERO;
        t[(0, 0)] = a;
        t[(1, 1)] = b;
        t[(2, 2)] = c;
        t
    }

    /// Dyadic product `a ⊗ b`.
    pub fn outer(a: [f64; 3], b: [f64; 3]) -> Self {
        let mut t = Tensor2::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                t[(i, j)] = a[i] * b[j];
            }
        }
        t
    }

    pub fn components(&self) -> &[f64; 9] {
        &self.components
    }

    pub fn transpose(&self) -> Self {
        let mut t = Tensor2::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                t[(i, j)] = self[(j, i)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        self[(0, 0)] + self[(1, 1)] + self[(2, 2)]
    }

    /// `tr(T²)`, the second basic invariant used by the energy laws.
    pub fn trace_squared(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self[(i, j)] * self[(j, i)];
            }
        }
        acc
    }

    /// `tr(T³)`.
    pub fn trace_cubed(&self) -> f64 {
        let sq = *self * *self;
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += sq[(i, j)] * self[(j, i)];
            }
        }
        acc
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.components;
        m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6])
    }

    /// Largest absolute deviation from symmetry, `max |T_ij − T_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.asymmetry() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Matrix-vector product `T v`.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i] += self[(i, j)] * v[j];
            }
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut t = *self;
        for c in t.components.iter_mut() {
            *c *= factor;
        }
        t
    }
}

impl Index<(usize, usize)> for Tensor2 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.components[3 * i + j]
    }
}

impl IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.components[3 * i + j]
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;

    fn add(self, rhs: Tensor2) -> Tensor2 {
        let mut out = self;
        for (c, r) in out.components.iter_mut().zip(rhs.components.iter()) {
            *c += r;
        }
        out
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;

    fn sub(self, rhs: Tensor2) -> Tensor2 {
        let mut out = self;
        for (c, r) in out.components.iter_mut().zip(rhs.components.iter()) {
            *c -= r;
        }
        out
    }
}

impl Mul for Tensor2 {
    type Output = Tensor2;

    fn mul(self, rhs: Tensor2) -> Tensor2 {
        let mut out = Tensor2::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += self[(i, k)] * rhs[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Tensor2;

    fn mul(self, rhs: f64) -> Tensor2 {
        self.scaled(rhs)
    }
}

/// Euclidean dot product.
pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Euclidean norm of a 3-vector.
pub fn norm3(v: [f64; 3]) -> f64 {
    dot(v, v).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_traces() {
        let t = Tensor2::new([1.0, 2.0, 0.0, 0.0, 3.0, 1.0, 0.5, 0.0, 2.0]);
        let sq = t * t;
        // spot-check one entry of the product: row 0 of t times col 1 of t
        assert_eq!(sq[(0, 1)], 1.0 * 2.0 + 2.0 * 3.0);
        assert_eq!(t.trace(), 6.0);
        // tr(T^2) must agree with the explicit product
        assert!((t.trace_squared() - sq.trace()).abs() < 1e-14);
        let cu = sq * t;
        assert!((t.trace_cubed() - cu.trace()).abs() < 1e-14);
    }

    #[test]
    fn determinant_of_diagonal() {
        let t = Tensor2::diagonal(2.0, 3.0, 4.0);
        assert_eq!(t.determinant(), 24.0);
    }

    #[test]
    fn asymmetry_detects_off_diagonal_mismatch() {
        let mut t = Tensor2::identity();
        t[(0, 1)] = 1e-3;
        assert!(!t.is_symmetric(1e-12));
        t[(1, 0)] = 1e-3;
        assert!(t.is_symmetric(1e-12));
    }

    #[test]
    fn apply_matches_manual_product() {
        let t = Tensor2::new([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        let v = t.apply([1.0, 0.0, -1.0]);
        assert_eq!(v, [-2.0, -2.0, -2.0]);
    }
}
