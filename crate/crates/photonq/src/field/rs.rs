//! The Riemann-Silberstein field F = D/sqrt(2 eps0) + i B/sqrt(2 mu0) on a
//! spatial grid: E/B extraction, energy, momentum, and spectral diagnostics.

use num_complex::Complex64 as C64;

use super::fft::{fft3_vector, flat};
use super::spatial::SpatialGrid;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Complex 3-vector field sampled on a spatial grid, with its time stamp.
#[derive(Debug, Clone, PartialEq)]
pub struct RSField {
    grid: SpatialGrid,
    values: Vec<[C64; 3]>,
    time: f64,
}

impl RSField {
    pub fn new(grid: SpatialGrid, values: Vec<[C64; 3]>, time: f64) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::GridMismatch(format!(
                "value count {} does not match grid ({} nodes)",
                values.len(),
                grid.node_count()
            )));
        }
        Ok(Self { grid, values, time })
    }

    pub fn zeros(grid: SpatialGrid, time: f64) -> Self {
        let n = grid.node_count();
        Self {
            grid,
            values: vec![[C64::ZERO; 3]; n],
            time,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[[C64; 3]] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [[C64; 3]] {
        &mut self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    /// Extract (E, B): E = sqrt(2/eps0) Re F and B = sqrt(2 mu0) Im F, so
    /// that reassembling D/sqrt(2 eps0) + i B/sqrt(2 mu0) with D = eps0 E
    /// returns F identically.
    pub fn split_fields(&self, constants: &PhysicalConstants) -> (Vec<[f64; 3]>, Vec<[f64; 3]>) {
        let e_scale = (2.0 / constants.epsilon_0).sqrt();
        let b_scale = (2.0 * constants.mu_0).sqrt();
        let mut e = Vec::with_capacity(self.values.len());
        let mut b = Vec::with_capacity(self.values.len());
        for v in &self.values {
            e.push([v[0].re * e_scale, v[1].re * e_scale, v[2].re * e_scale]);
            b.push([v[0].im * b_scale, v[1].im * b_scale, v[2].im * b_scale]);
        }
        (e, b)
    }

    /// Rebuild the RS vector from (E, B) samples.
    pub fn assemble(
        grid: SpatialGrid,
        e: &[[f64; 3]],
        b: &[[f64; 3]],
        time: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if e.len() != grid.node_count() || b.len() != grid.node_count() {
            return Err(Error::GridMismatch("E/B sample counts do not match grid".into()));
        }
        let de = (constants.epsilon_0 / 2.0).sqrt();
        let db = 1.0 / (2.0 * constants.mu_0).sqrt();
        let values = e
            .iter()
            .zip(b)
            .map(|(ev, bv)| {
                [
                    C64::new(ev[0] * de, bv[0] * db),
                    C64::new(ev[1] * de, bv[1] * db),
                    C64::new(ev[2] * de, bv[2] * db),
                ]
            })
            .collect();
        Self::new(grid, values, time)
    }

    /// Field energy sum dV F* . F.
    pub fn energy(&self) -> f64 {
        let dv = self.grid.cell_volume();
        dv * self
            .values
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr())
            .sum::<f64>()
    }

    /// Field momentum sum dV D x B = -(i/c) sum dV F* x F, returned with the
    /// roundoff imaginary residual of the spectral expression.
    pub fn momentum(&self, constants: &PhysicalConstants) -> ([f64; 3], f64) {
        let dv = self.grid.cell_volume();
        let mut acc = [C64::ZERO; 3];
        for v in &self.values {
            let conj = [v[0].conj(), v[1].conj(), v[2].conj()];
            acc[0] += conj[1] * v[2] - conj[2] * v[1];
            acc[1] += conj[2] * v[0] - conj[0] * v[2];
            acc[2] += conj[0] * v[1] - conj[1] * v[0];
        }
        let scale = -C64::I * dv / constants.c;
        let mut out = [0.0; 3];
        let mut residual: f64 = 0.0;
        let mut magnitude: f64 = 0.0;
        for i in 0..3 {
            let p = scale * acc[i];
            out[i] = p.re;
            residual = residual.max(p.im.abs());
            magnitude = magnitude.max(p.re.abs());
        }
        (out, residual / magnitude.max(f64::MIN_POSITIVE))
    }

    /// Relative spectral divergence residual
    /// sqrt( sum |k . F(k)|^2 / sum |k|^2 |F(k)|^2 ); zero for transverse
    /// fields up to roundoff.
    pub fn divergence_residual(&self) -> f64 {
        let n = self.grid.n;
        let mut modes = self.values.clone();
        fft3_vector(&mut modes, n, false);
        let mut num = 0.0;
        let mut den = 0.0;
        for ix in 0..n[0] {
            for iy in 0..n[1] {
                for iz in 0..n[2] {
                    let k = self.grid.mode_wavevector([ix, iy, iz]);
                    let v = modes[flat(n, ix, iy, iz)];
                    let kdot = v[0] * k[0] + v[1] * k[1] + v[2] * k[2];
                    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                    num += kdot.norm_sqr();
                    den += k2 * (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr());
                }
            }
        }
        if den == 0.0 {
            0.0
        } else {
            (num / den).sqrt()
        }
    }

    /// Spectral curl: (curl F)(k) = i k x F(k).
    pub fn spectral_curl(&self) -> Result<Self> {
        if !self.grid.periodic {
            return Err(Error::InvalidParameter(
                "spectral curl requires a periodic grid".into(),
            ));
        }
        let n = self.grid.n;
        let mut modes = self.values.clone();
        fft3_vector(&mut modes, n, false);
        for ix in 0..n[0] {
            for iy in 0..n[1] {
                for iz in 0..n[2] {
                    let k = self.grid.mode_wavevector([ix, iy, iz]);
                    let v = modes[flat(n, ix, iy, iz)];
                    let cross = [
                        k[1] * v[2] - k[2] * v[1],
                        k[2] * v[0] - k[0] * v[2],
                        k[0] * v[1] - k[1] * v[0],
                    ];
                    modes[flat(n, ix, iy, iz)] = [
                        C64::I * cross[0],
                        C64::I * cross[1],
                        C64::I * cross[2],
                    ];
                }
            }
        }
        fft3_vector(&mut modes, n, true);
        let scale = 1.0 / self.grid.node_count() as f64;
        for v in &mut modes {
            for c in v.iter_mut() {
                *c *= scale;
            }
        }
        Self::new(self.grid.clone(), modes, self.time)
    }
}
