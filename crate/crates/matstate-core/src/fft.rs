//! Iterative radix-2 FFT for power-of-two sample counts.
//!
//! The harmonic analysis in this crate always works on coherently truncated
//! traces whose length is a power of two, so a dependency-free radix-2
//! transform is all that is needed.

use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// In-place decimation-in-time FFT. `buf.len()` must be a power of two.
pub fn fft_in_place(buf: &mut [Complex64]) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "FFT length {n} is not a power of two");
    if n < 2 {
        return;
    }

    // bit-reversal permutation
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= n {
        let angle = -2.0 * core::f64::consts::PI / len as f64;
        let w_len = Complex64::new(angle.cos(), angle.sin());
        for chunk in buf.chunks_mut(len) {
            let mut w = Complex64::new(1.0, 0.0);
            let half = len / 2;
            for k in 0..half {
                let even = chunk[k];
                let odd = chunk[k + half] * w;
                chunk[k] = even + odd;
                chunk[k + half] = even - odd;
                w *= w_len;
            }
        }
        len *= 2;
    }
}

/// Forward FFT of a real signal; returns the complex spectrum.
pub fn fft_real(signal: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft_in_place(&mut buf);
    buf
}

/// One-sided amplitude spectrum of a real signal: `2|X_k|/N` for bins
/// `0 ≤ k < N/2` (bin 0 keeps the unscaled-by-2 mean convention).
pub fn amplitude_spectrum(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    let spectrum = fft_real(signal);
    spectrum
        .iter()
        .take(n / 2)
        .enumerate()
        .map(|(k, c)| {
            let scale = if k == 0 { 1.0 } else { 2.0 };
            scale * c.norm() / n as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(signal: &[f64]) -> Vec<Complex64> {
        let n = signal.len();
        (0..n)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (t, &x) in signal.iter().enumerate() {
                    let angle = -2.0 * core::f64::consts::PI * (k * t) as f64 / n as f64;
                    acc += Complex64::new(angle.cos(), angle.sin()) * x;
                }
                acc
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        // deterministic pseudo-random signal
        let mut state = 0x9e3779b97f4a7c15u64;
        let signal: Vec<f64> = (0..64)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let fast = fft_real(&signal);
        let slow = naive_dft(&signal);
        for (f, s) in fast.iter().zip(slow.iter()) {
            assert!((f - s).norm() < 1e-10);
        }
    }

    #[test]
    fn pure_tone_lands_on_its_bin() {
        let n = 1024;
        let cycles = 13.0;
        let signal: Vec<f64> = (0..n)
            .map(|i| (2.0 * core::f64::consts::PI * cycles * i as f64 / n as f64).sin() * 0.25)
            .collect();
        let amps = amplitude_spectrum(&signal);
        let (peak, _) = amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert_eq!(peak, 13);
        assert!((amps[13] - 0.25).abs() < 1e-12);
        // every other bin is at numerical noise level
        for (k, &a) in amps.iter().enumerate() {
            if k != 13 {
                assert!(a < 1e-12, "bin {k} = {a}");
            }
        }
    }

    #[test]
    fn parseval_identity() {
        let signal: Vec<f64> = (0..256).map(|i| ((i * 37 % 19) as f64 - 9.0) / 9.0).collect();
        let spectrum = fft_real(&signal);
        let time_energy: f64 = signal.iter().map(|x| x * x).sum();
        let freq_energy: f64 =
            spectrum.iter().map(|c| c.norm_sqr()).sum::<f64>() / signal.len() as f64;
        assert!((time_energy - freq_energy).abs() < 1e-9 * time_energy);
    }
}
