//! Physical constants, configurable between SI and natural units.

use std::f64::consts::TAU;

/// Bundle of physical constants threaded through every operation that needs
/// dimensions. Construct with [`PhysicalConstants::si`] for CODATA SI values
/// or [`PhysicalConstants::natural`] for hbar = c = eps0 = mu0 = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant [J s]
    pub hbar: f64,
    /// Planck constant [J s]
    pub h: f64,
    /// Speed of light in vacuum [m/s]
    pub c: f64,
    /// Vacuum permittivity [F/m]
    pub epsilon_0: f64,
    /// Vacuum permeability [H/m]
    pub mu_0: f64,
    /// Boltzmann constant [J/K]
    pub k_b: f64,
}

impl PhysicalConstants {
    /// 2019 SI values (h, k_B exact by definition).
    pub const fn si() -> Self {
        let h = 6.626_070_15e-34;
        Self {
            h,
            hbar: h / TAU,
            c: 299_792_458.0,
            epsilon_0: 8.854_187_8128e-12,
            mu_0: 1.256_637_062_12e-6,
            k_b: 1.380_649e-23,
        }
    }

    /// Natural units: hbar = c = eps0 = mu0 = k_B = 1, h = 2 pi.
    pub const fn natural() -> Self {
        Self {
            h: TAU,
            hbar: 1.0,
            c: 1.0,
            epsilon_0: 1.0,
            mu_0: 1.0,
            k_b: 1.0,
        }
    }

    /// Angular frequency of a photon with wave number k: omega = c |k|.
    pub fn omega(&self, k: f64) -> f64 {
        self.c * k
    }

    /// hc, the energy-wavelength conversion factor [J m].
    pub fn hc(&self) -> f64 {
        self.h * self.c
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}
