//! Thermal occupation of field modes: Boltzmann probabilities, the diagonal
//! thermal density operator, and the mean photon number by two independent
//! routes (the detailed-balance recursion and the closed form).

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::numerics::bisect;

/// Boltzmann probabilities p_n proportional to e^{-E_n / k_B T}, normalized.
pub fn boltzmann_probabilities(
    energies: &[f64],
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<Vec<f64>> {
    if energies.is_empty() {
        return Err(Error::InvalidParameter(
            "boltzmann probabilities need at least one level".into(),
        ));
    }
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter("temperature must be positive".into()));
    }
    let beta = 1.0 / (constants.k_b * temperature);
    let e_min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies.iter().map(|e| (-beta * (e - e_min)).exp()).collect();
    let z: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / z).collect())
}

/// Diagonal weights of the single-mode thermal density operator over photon
/// numbers 0..=n_max: p_n proportional to e^{-n h nu / k_B T}. Errors when
/// the truncated geometric tail exceeds `tail_tol`.
pub fn thermal_density_matrix(
    nu: f64,
    temperature: f64,
    n_max: u32,
    tail_tol: f64,
    constants: &PhysicalConstants,
) -> Result<Vec<f64>> {
    if !(nu > 0.0) || !(temperature > 0.0) {
        return Err(Error::InvalidParameter(
            "thermal density matrix needs nu > 0 and T > 0".into(),
        ));
    }
    let x = constants.h * nu / (constants.k_b * temperature);
    let r = (-x).exp();
    // full geometric sum 1/(1 - r); truncation tail fraction r^{n_max + 1}
    let tail = r.powi(n_max as i32 + 1);
    if tail > tail_tol {
        return Err(Error::TruncationTail {
            tail,
            tol: tail_tol,
        });
    }
    let mut weights = Vec::with_capacity(n_max as usize + 1);
    let mut w = 1.0;
    for _ in 0..=n_max {
        weights.push(w);
        w *= r;
    }
    let z: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= z;
    }
    Ok(weights)
}

/// Mean occupation by two methods which must agree.
#[derive(Debug, Clone, Copy)]
pub struct OccupationResult {
    /// Numerical solution of the trace recursion N = e^{-x} (N + 1).
    pub recursion: f64,
    /// Closed form 1 / (e^x - 1).
    pub closed_form: f64,
}

/// Average photon number of a thermal mode at frequency nu, x = beta h nu.
/// Method A solves the recursion N = e^{-x}(N + 1) by bracketing; method B
/// evaluates 1/(e^x - 1) directly (with an asymptotic branch for large x).
pub fn average_occupation(
    nu: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<OccupationResult> {
    if !(nu > 0.0) || !(temperature > 0.0) {
        return Err(Error::InvalidParameter(
            "average occupation needs nu > 0 and T > 0".into(),
        ));
    }
    let x = constants.h * nu / (constants.k_b * temperature);
    if x > 700.0 {
        // e^{-x} underflow territory: N = e^{-x} to double precision
        let n = (-x).exp();
        return Ok(OccupationResult {
            recursion: n,
            closed_form: n,
        });
    }
    let closed_form = 1.0 / x.exp_m1();
    // bracket the root of g(N) = e^{-x}(N + 1) - N, written via expm1 so the
    // residual keeps full precision for small x
    let g = |n: f64| (-x).exp() + n * (-x).exp_m1();
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    let recursion = bisect(&g, 0.0, hi);
    Ok(OccupationResult {
        recursion,
        closed_form,
    })
}

/// Mean thermal energy of the mode, h nu N_av.
pub fn average_energy(nu: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    Ok(constants.h * nu * average_occupation(nu, temperature, constants)?.closed_form)
}
