//! The photon position-momentum uncertainty product and its lower bound
//! (3/2) hbar sqrt(1 + 4 sqrt(5)/9) = sqrt(9/4 + sqrt(5)) hbar.

use std::io::Write;

use super::derivative::{ConnectionPolicy, DerivativeScheme};
use super::generators::position_operator;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::momentum::PhotonWavefunctionK;

/// Maximum share of the state allowed on connection-flagged nodes before a
/// quadrature involving alpha(k) is rejected.
const FLAGGED_SHARE_LIMIT: f64 = 1e-6;

/// Position and momentum spreads of a photon state.
///
/// `delta_r` is the root-mean-square deviation of the center-of-energy
/// position about its mean, summed over the three components with symmetric
/// ordering: delta_r^2 = sum_j |(R_j - <R_j>) f|^2.
///
/// `delta_p` is the root-mean-square momentum magnitude, delta_p^2 = <P.P>.
/// Measured about zero rather than about <P>: a photon has no rest frame,
/// and the bound below is a statement about localization relative to the
/// mean wavelength. (With the spread taken about <P> instead, narrow wave
/// packets reach the nonrelativistic 3/2 hbar and the photon bound would
/// fail; see the guide chapter on uncertainty.)
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct UncertaintyReport {
    pub mean_r: [f64; 3],
    pub mean_p: [f64; 3],
    pub delta_r: f64,
    pub delta_p: f64,
    pub product: f64,
    pub bound: f64,
}

/// The closed-form lower bound (3/2) hbar sqrt(1 + 4 sqrt(5)/9), never
/// hard-coded as a decimal. Equal to sqrt(9/4 + sqrt(5)) hbar.
pub fn uncertainty_bound(hbar: f64) -> f64 {
    1.5 * hbar * (1.0 + 4.0 * 5f64.sqrt() / 9.0).sqrt()
}

/// Evaluate means, spreads, and the uncertainty product for a normalized
/// state. Errors on unnormalized input and on states that put weight on the
/// connection's axis cutoff.
pub fn uncertainty_product(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
    constants: &PhysicalConstants,
) -> Result<UncertaintyReport> {
    let norm_defect = (f.norm_sq() - 1.0).abs();
    if norm_defect > 1e-8 {
        return Err(Error::Unnormalized(norm_defect));
    }

    let r = position_operator(f, scheme, policy)?;
    let share = r.flagged_share(f);
    if share > FLAGGED_SHARE_LIMIT {
        return Err(Error::ConnectionSingularity {
            flagged: r.flagged.len(),
            total: f.grid().len(),
            eps: policy.axis_eps,
            share,
        });
    }

    let grid = f.grid();
    let hbar = constants.hbar;

    let mut mean_r = [0.0; 3];
    for j in 0..3 {
        mean_r[j] = f.inner_product(&r.components[j])?.re;
    }

    let mut delta_r_sq = 0.0;
    for j in 0..3 {
        let rj = &r.components[j];
        for i in 0..grid.len() {
            let w = grid.weight(i);
            let dp = rj.f_plus()[i] - f.f_plus()[i] * mean_r[j];
            let dm = rj.f_minus()[i] - f.f_minus()[i] * mean_r[j];
            delta_r_sq += w * (dp.norm_sqr() + dm.norm_sqr());
        }
    }

    let mut mean_p = [0.0; 3];
    let mut p_sq = 0.0;
    for i in 0..grid.len() {
        let k = grid.node(i);
        let dens = grid.weight(i) * (f.f_plus()[i].norm_sqr() + f.f_minus()[i].norm_sqr());
        for j in 0..3 {
            mean_p[j] += dens * hbar * k[j];
        }
        p_sq += dens * hbar * hbar * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    }

    let delta_r = delta_r_sq.sqrt();
    let delta_p = p_sq.sqrt();
    Ok(UncertaintyReport {
        mean_r,
        mean_p,
        delta_r,
        delta_p,
        product: delta_r * delta_p,
        bound: uncertainty_bound(hbar),
    })
}

impl UncertaintyReport {
    /// Flat key/value text record, fields in declaration order.
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "mean_R = {:e} {:e} {:e}", self.mean_r[0], self.mean_r[1], self.mean_r[2])?;
        writeln!(w, "mean_P = {:e} {:e} {:e}", self.mean_p[0], self.mean_p[1], self.mean_p[2])?;
        writeln!(w, "delta_R = {:e}", self.delta_r)?;
        writeln!(w, "delta_P = {:e}", self.delta_p)?;
        writeln!(w, "product = {:e}", self.product)?;
        writeln!(w, "bound = {:e}", self.bound)?;
        Ok(())
    }

    /// Machine-readable JSON form with the same field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
