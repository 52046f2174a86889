//! Two-component photon wavefunctions in the momentum representation.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::grid::{norm3, same_grid, MomentumGrid};
use super::stokes::StokesVector;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Helicity label for the two photon species.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// Photon state sampled on a momentum grid: one complex amplitude per node
/// for each of the two helicities. The two components transform separately
/// and are never mixed into a single scalar.
#[derive(Debug, Clone)]
pub struct PhotonWavefunctionK {
    grid: Arc<MomentumGrid>,
    f_plus: Vec<C64>,
    f_minus: Vec<C64>,
}

impl PhotonWavefunctionK {
    pub fn new(grid: Arc<MomentumGrid>, f_plus: Vec<C64>, f_minus: Vec<C64>) -> Result<Self> {
        if f_plus.len() != grid.len() || f_minus.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "component lengths ({}, {}) do not match grid node count {}",
                f_plus.len(),
                f_minus.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            f_plus,
            f_minus,
        })
    }

    /// Zero state on a grid.
    pub fn zeros(grid: Arc<MomentumGrid>) -> Self {
        let n = grid.len();
        Self {
            grid,
            f_plus: vec![C64::ZERO; n],
            f_minus: vec![C64::ZERO; n],
        }
    }

    /// Build from a pair of closures evaluated at every node.
    pub fn from_fn<FP, FM>(grid: Arc<MomentumGrid>, mut plus: FP, mut minus: FM) -> Self
    where
        FP: FnMut([f64; 3]) -> C64,
        FM: FnMut([f64; 3]) -> C64,
    {
        let f_plus = grid.nodes().iter().map(|k| plus(*k)).collect();
        let f_minus = grid.nodes().iter().map(|k| minus(*k)).collect();
        Self {
            grid,
            f_plus,
            f_minus,
        }
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn f_plus(&self) -> &[C64] {
        &self.f_plus
    }

    pub fn f_minus(&self) -> &[C64] {
        &self.f_minus
    }

    pub fn component(&self, h: Helicity) -> &[C64] {
        match h {
            Helicity::Plus => &self.f_plus,
            Helicity::Minus => &self.f_minus,
        }
    }

    pub fn components_mut(&mut self) -> (&mut [C64], &mut [C64]) {
        (&mut self.f_plus, &mut self.f_minus)
    }

    /// Inner product sum_i w_i (f1+^* f2+ + f1-^* f2-), the discrete form of
    /// the relativistic d^3k/k pairing.
    pub fn inner_product(&self, other: &Self) -> Result<C64> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch(
                "inner product requires both states on the same grid".into(),
            ));
        }
        let mut acc = C64::ZERO;
        for i in 0..self.grid.len() {
            let w = self.grid.weight(i);
            acc += w
                * (self.f_plus[i].conj() * other.f_plus[i]
                    + self.f_minus[i].conj() * other.f_minus[i]);
        }
        Ok(acc)
    }

    /// Squared norm under the invariant measure.
    pub fn norm_sq(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| {
                self.grid.weight(i) * (self.f_plus[i].norm_sqr() + self.f_minus[i].norm_sqr())
            })
            .sum()
    }

    /// Is the normalization condition satisfied within `tol`?
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Rescale to unit norm; direction in Hilbert space is unchanged.
    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if !(n2 > 0.0) {
            return Err(Error::NullState);
        }
        Ok(self.scaled(C64::new(1.0 / n2.sqrt(), 0.0)))
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self {
            grid: self.grid.clone(),
            f_plus: self.f_plus.iter().map(|v| v * s).collect(),
            f_minus: self.f_minus.iter().map(|v| v * s).collect(),
        }
    }

    /// Phase factors of a space-time translation: f -> e^{i omega t0}
    /// e^{i k . r0} f with omega = c |k|. Unitary, so every inner product is
    /// preserved exactly.
    pub fn translate(&self, t0: f64, r0: [f64; 3], constants: &PhysicalConstants) -> Self {
        let mut out = self.clone();
        for i in 0..self.grid.len() {
            let k = self.grid.node(i);
            let phase = constants.omega(norm3(k)) * t0 + k[0] * r0[0] + k[1] * r0[1] + k[2] * r0[2];
            let factor = C64::from_polar(1.0, phase);
            out.f_plus[i] *= factor;
            out.f_minus[i] *= factor;
        }
        out
    }

    /// Stokes parameters of the two-component amplitude at one node.
    pub fn stokes_at(&self, node: usize) -> StokesVector {
        StokesVector::from_amplitudes(self.f_plus[node], self.f_minus[node])
    }

    /// Stokes S0 integrated with the grid weights; equals the squared norm.
    pub fn integrated_s0(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| self.grid.weight(i) * self.stokes_at(i).s0)
            .sum()
    }
}

/// Per-node momentum-space gradients of both components, used by operators
/// that differentiate factory states without finite-difference error.
#[derive(Debug, Clone)]
pub struct GradientData {
    pub d_plus: Vec<[C64; 3]>,
    pub d_minus: Vec<[C64; 3]>,
}

impl GradientData {
    pub fn new(d_plus: Vec<[C64; 3]>, d_minus: Vec<[C64; 3]>) -> Self {
        Self { d_plus, d_minus }
    }
}

/// Gaussian wave-packet factory: f±(k) = c± exp(-|k - k0|^2 / 2 sigma^2),
/// normalized on construction. Carries the closed-form gradient.
#[derive(Debug, Clone)]
pub struct GaussianPacket {
    grid: Arc<MomentumGrid>,
    pub center: [f64; 3],
    pub sigma: f64,
    c_plus: C64,
    c_minus: C64,
}

impl GaussianPacket {
    pub fn new(
        grid: Arc<MomentumGrid>,
        center: [f64; 3],
        sigma: f64,
        c_plus: C64,
        c_minus: C64,
    ) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter("gaussian packet: sigma must be positive".into()));
        }
        if c_plus.norm_sqr() + c_minus.norm_sqr() <= 0.0 {
            return Err(Error::InvalidParameter(
                "gaussian packet: helicity weights must not both vanish".into(),
            ));
        }
        if !center_in_support(&grid, center) {
            return Err(Error::InvalidParameter(
                "gaussian packet: center lies outside the grid support".into(),
            ));
        }
        let raw = Self {
            grid,
            center,
            sigma,
            c_plus,
            c_minus,
        };
        let n2 = raw.raw_state().norm_sq();
        if !(n2 > 0.0) {
            return Err(Error::InvalidParameter(
                "gaussian packet: no support on the grid".into(),
            ));
        }
        let scale = 1.0 / n2.sqrt();
        Ok(Self {
            c_plus: raw.c_plus * scale,
            c_minus: raw.c_minus * scale,
            ..raw
        })
    }

    fn envelope(&self, k: [f64; 3]) -> f64 {
        let d = [
            k[0] - self.center[0],
            k[1] - self.center[1],
            k[2] - self.center[2],
        ];
        (-(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / (2.0 * self.sigma * self.sigma)).exp()
    }

    fn raw_state(&self) -> PhotonWavefunctionK {
        PhotonWavefunctionK::from_fn(
            self.grid.clone(),
            |k| self.c_plus * self.envelope(k),
            |k| self.c_minus * self.envelope(k),
        )
    }

    /// The normalized state.
    pub fn state(&self) -> PhotonWavefunctionK {
        self.raw_state()
    }

    /// Closed-form gradient of the normalized state:
    /// d f± / d k_j = -(k_j - k0_j) / sigma^2 * f±(k).
    pub fn gradient(&self) -> GradientData {
        let s2 = self.sigma * self.sigma;
        let grad_of = |c: C64| -> Vec<[C64; 3]> {
            self.grid
                .nodes()
                .iter()
                .map(|k| {
                    let f = c * self.envelope(*k);
                    [
                        f * (-(k[0] - self.center[0]) / s2),
                        f * (-(k[1] - self.center[1]) / s2),
                        f * (-(k[2] - self.center[2]) / s2),
                    ]
                })
                .collect()
        };
        GradientData::new(grad_of(self.c_plus), grad_of(self.c_minus))
    }
}

fn center_in_support(grid: &MomentumGrid, center: [f64; 3]) -> bool {
    match grid.kind() {
        crate::momentum::GridKind::CartesianBox { n, spacing, origin } => (0..3).all(|a| {
            let lo = origin[a] - 0.5 * spacing[a];
            let hi = origin[a] + (n[a] as f64 - 0.5) * spacing[a];
            center[a] >= lo && center[a] <= hi
        }),
        crate::momentum::GridKind::SphericalProduct { k_min, k_max, .. } => {
            let r = norm3(center);
            r >= *k_min && r <= *k_max
        }
    }
}

/// Convenience wrapper returning just the normalized state.
pub fn make_gaussian_state(
    grid: Arc<MomentumGrid>,
    center: [f64; 3],
    sigma: f64,
    c_plus: C64,
    c_minus: C64,
) -> Result<PhotonWavefunctionK> {
    Ok(GaussianPacket::new(grid, center, sigma, c_plus, c_minus)?.state())
}
