//! Uniform periodic spatial boxes for field sampling and spectral transforms.

use crate::error::{Error, Result};
use crate::momentum::MomentumGrid;

/// Uniform 3-D spatial box. Periodic wraparound is required by the spectral
/// operations (evolution, helicity splitting, nonlocal norms).
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGrid {
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
    pub n: [usize; 3],
    pub periodic: bool,
}

impl SpatialGrid {
    pub fn new(origin: [f64; 3], spacing: [f64; 3], n: [usize; 3], periodic: bool) -> Result<Self> {
        for a in 0..3 {
            if !(spacing[a] > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "spatial grid: spacing[{a}] must be positive"
                )));
            }
            if n[a] < 2 {
                return Err(Error::InvalidParameter(format!(
                    "spatial grid: extent n[{a}] must be >= 2"
                )));
            }
        }
        Ok(Self {
            origin,
            spacing,
            n,
            periodic,
        })
    }

    /// The box that makes an FFT momentum lattice exact: n matching and
    /// dr = 2 pi / (n dk) per axis, with the given corner origin.
    pub fn dual_of(momentum: &MomentumGrid, origin: [f64; 3]) -> Result<Self> {
        let (n, dr) = momentum.paired_spatial_extent().ok_or_else(|| {
            Error::IncompatibleGrids("momentum grid is not Cartesian".into())
        })?;
        Self::new(origin, dr, n, true)
    }

    /// Like [`SpatialGrid::dual_of`] but with the box centered on r = 0, so
    /// wave packets synthesized from phase-free momentum amplitudes sit in
    /// the middle rather than at the periodic seam.
    pub fn dual_centered(momentum: &MomentumGrid) -> Result<Self> {
        let (n, dr) = momentum.paired_spatial_extent().ok_or_else(|| {
            Error::IncompatibleGrids("momentum grid is not Cartesian".into())
        })?;
        let origin = [
            -0.5 * dr[0] * n[0] as f64,
            -0.5 * dr[1] * n[1] as f64,
            -0.5 * dr[2] * n[2] as f64,
        ];
        Self::new(origin, dr, n, true)
    }

    pub fn node_count(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing[0] * self.spacing[1] * self.spacing[2]
    }

    pub fn volume(&self) -> f64 {
        self.cell_volume() * self.node_count() as f64
    }

    pub fn position(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        [
            self.origin[0] + ix as f64 * self.spacing[0],
            self.origin[1] + iy as f64 * self.spacing[1],
            self.origin[2] + iz as f64 * self.spacing[2],
        ]
    }

    /// Flat storage index, z fastest.
    pub fn flat(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n[1] + iy) * self.n[2] + iz
    }

    pub fn coords(&self, flat: usize) -> [usize; 3] {
        let iz = flat % self.n[2];
        let iy = (flat / self.n[2]) % self.n[1];
        let ix = flat / (self.n[1] * self.n[2]);
        [ix, iy, iz]
    }

    /// FFT wavenumber spacing per axis, 2 pi / (n dr).
    pub fn mode_spacing(&self) -> [f64; 3] {
        [
            2.0 * std::f64::consts::PI / (self.n[0] as f64 * self.spacing[0]),
            2.0 * std::f64::consts::PI / (self.n[1] as f64 * self.spacing[1]),
            2.0 * std::f64::consts::PI / (self.n[2] as f64 * self.spacing[2]),
        ]
    }

    /// Physical wave vector of an FFT bin triple.
    pub fn mode_wavevector(&self, bins: [usize; 3]) -> [f64; 3] {
        let dk = self.mode_spacing();
        [
            super::fft::signed_mode(bins[0], self.n[0]) as f64 * dk[0],
            super::fft::signed_mode(bins[1], self.n[1]) as f64 * dk[1],
            super::fft::signed_mode(bins[2], self.n[2]) as f64 * dk[2],
        ]
    }
}
