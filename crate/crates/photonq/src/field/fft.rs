//! Minimal 3-D complex FFT built on rustfft, axis by axis.
//!
//! Transforms are unnormalized: `forward` computes sum_m x_m e^{-2 pi i k m/N}
//! along each axis and `inverse` the conjugate sum; a round trip multiplies
//! by the total node count.

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

/// Flat index with z fastest: ((ix * ny) + iy) * nz + iz.
#[inline]
pub fn flat(n: [usize; 3], ix: usize, iy: usize, iz: usize) -> usize {
    (ix * n[1] + iy) * n[2] + iz
}

/// Signed FFT wavenumber index for bin b of an n-point axis.
#[inline]
pub fn signed_mode(b: usize, n: usize) -> i64 {
    if (b as i64) < (n as i64 + 1) / 2 {
        b as i64
    } else {
        b as i64 - n as i64
    }
}

/// FFT bin for a signed wavenumber index.
#[inline]
pub fn bin_of_mode(m: i64, n: usize) -> usize {
    (m.rem_euclid(n as i64)) as usize
}

pub fn fft3(data: &mut [C64], n: [usize; 3], inverse: bool) {
    assert_eq!(data.len(), n[0] * n[1] * n[2]);
    let mut planner = FftPlanner::new();
    // axis 2 (contiguous lines)
    {
        let fft = if inverse {
            planner.plan_fft_inverse(n[2])
        } else {
            planner.plan_fft_forward(n[2])
        };
        for ix in 0..n[0] {
            for iy in 0..n[1] {
                let start = flat(n, ix, iy, 0);
                fft.process(&mut data[start..start + n[2]]);
            }
        }
    }
    // axis 1
    {
        let fft = if inverse {
            planner.plan_fft_inverse(n[1])
        } else {
            planner.plan_fft_forward(n[1])
        };
        let mut line = vec![C64::ZERO; n[1]];
        for ix in 0..n[0] {
            for iz in 0..n[2] {
                for iy in 0..n[1] {
                    line[iy] = data[flat(n, ix, iy, iz)];
                }
                fft.process(&mut line);
                for iy in 0..n[1] {
                    data[flat(n, ix, iy, iz)] = line[iy];
                }
            }
        }
    }
    // axis 0
    {
        let fft = if inverse {
            planner.plan_fft_inverse(n[0])
        } else {
            planner.plan_fft_forward(n[0])
        };
        let mut line = vec![C64::ZERO; n[0]];
        for iy in 0..n[1] {
            for iz in 0..n[2] {
                for ix in 0..n[0] {
                    line[ix] = data[flat(n, ix, iy, iz)];
                }
                fft.process(&mut line);
                for ix in 0..n[0] {
                    data[flat(n, ix, iy, iz)] = line[ix];
                }
            }
        }
    }
}

/// Transform the three Cartesian components of a vector field in place.
pub fn fft3_vector(data: &mut [[C64; 3]], n: [usize; 3], inverse: bool) {
    let len = data.len();
    let mut scratch = vec![C64::ZERO; len];
    for c in 0..3 {
        for (s, d) in scratch.iter_mut().zip(data.iter()) {
            *s = d[c];
        }
        fft3(&mut scratch, n, inverse);
        for (d, s) in data.iter_mut().zip(scratch.iter()) {
            d[c] = *s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_scales_by_node_count() {
        let n = [4, 6, 8];
        let total = n[0] * n[1] * n[2];
        let mut data: Vec<C64> = (0..total)
            .map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let original = data.clone();
        fft3(&mut data, n, false);
        fft3(&mut data, n, true);
        for (a, b) in data.iter().zip(&original) {
            assert!((a / total as f64 - b).norm() < 1e-12);
        }
    }

    #[test]
    fn single_mode_forward() {
        // x_m = e^{2 pi i m q / N} has forward transform N delta_{k q}
        let n = [8, 1, 1];
        let q = 3i64;
        let mut data: Vec<C64> = (0..8)
            .map(|m| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (m as i64 * q) as f64 / 8.0))
            .collect();
        fft3(&mut data, n, false);
        for (b, v) in data.iter().enumerate() {
            let expect = if b as i64 == q { 8.0 } else { 0.0 };
            assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn mode_index_round_trip() {
        for n in [4usize, 5, 8, 9] {
            for b in 0..n {
                let m = signed_mode(b, n);
                assert_eq!(bin_of_mode(m, n), b);
            }
        }
    }
}
