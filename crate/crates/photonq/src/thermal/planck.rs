//! Planck blackbody radiometry: the spectral energy and photon-number
//! densities, the Wien peak, the integrated densities against their closed
//! forms, and the photon energy-wavelength relation.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, golden_max, zeta3};

/// Spectral energy density of blackbody radiation,
/// rho_E(nu) = (8 pi h nu^3 / c^3) / (e^{h nu / k_B T} - 1)  [J s / m^3].
pub fn planck_energy_density(nu: f64, temperature: f64, constants: &PhysicalConstants) -> f64 {
    if nu <= 0.0 {
        return 0.0;
    }
    let x = constants.h * nu / (constants.k_b * temperature);
    let prefactor = 8.0 * std::f64::consts::PI * constants.h * nu * nu * nu
        / (constants.c * constants.c * constants.c);
    if x > 700.0 {
        return prefactor * (-x).exp();
    }
    prefactor / x.exp_m1()
}

/// Photon-number density rho_N(nu) = rho_E(nu) / (h nu)  [s / m^3].
pub fn planck_number_density(nu: f64, temperature: f64, constants: &PhysicalConstants) -> f64 {
    planck_energy_density(nu, temperature, constants) / (constants.h * nu)
}

/// Partial geometric series form of the Planck density,
/// (8 pi h nu^3/c^3) sum_{n=1..terms} e^{-n h nu / k_B T}: converges to the
/// closed form as terms grows.
pub fn planck_energy_density_series(
    nu: f64,
    temperature: f64,
    terms: u32,
    constants: &PhysicalConstants,
) -> f64 {
    let x = constants.h * nu / (constants.k_b * temperature);
    let prefactor = 8.0 * std::f64::consts::PI * constants.h * nu * nu * nu
        / (constants.c * constants.c * constants.c);
    let r = (-x).exp();
    let mut term = 1.0;
    let mut sum = 0.0;
    for _ in 0..terms {
        term *= r;
        sum += term;
    }
    prefactor * sum
}

/// Rayleigh-Jeans limit 8 pi nu^2 k_B T / c^3.
pub fn rayleigh_jeans_density(nu: f64, temperature: f64, constants: &PhysicalConstants) -> f64 {
    8.0 * std::f64::consts::PI * nu * nu * constants.k_b * temperature
        / (constants.c * constants.c * constants.c)
}

/// Location of the Planck maximum.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PlanckPeak {
    /// Frequency of maximum spectral energy density [Hz].
    pub nu_max: f64,
    /// The dimensionless coefficient nu_max h / (k_B T).
    pub coefficient: f64,
}

/// Maximize rho_E numerically. The dimensionless shape x^3/(e^x - 1) is
/// maximized once by golden section, so nu_max is exactly linear in T.
pub fn peak_frequency(temperature: f64, constants: &PhysicalConstants) -> Result<PlanckPeak> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter("temperature must be positive".into()));
    }
    let shape = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            x * x * x / x.exp_m1()
        }
    };
    let coefficient = golden_max(&shape, 0.5, 10.0, 120);
    Ok(PlanckPeak {
        nu_max: coefficient * constants.k_b * temperature / constants.h,
        coefficient,
    })
}

/// Total energy density integral_0^inf rho_E d nu by adaptive quadrature of
/// the dimensionless form, with the analytic exponential tail beyond the
/// cutoff added. Matches (8 pi^5 h c / 15) (k_B T / h c)^4.
pub fn total_energy_density(temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter("temperature must be positive".into()));
    }
    let dimensionless = integrate_dimensionless(3);
    let kt_h = constants.k_b * temperature / constants.h;
    Ok(8.0 * std::f64::consts::PI * constants.h / constants.c.powi(3)
        * kt_h.powi(4)
        * dimensionless)
}

/// Closed form (8 pi^5 h c / 15) (k_B T / (h c))^4.
pub fn total_energy_density_closed(temperature: f64, constants: &PhysicalConstants) -> f64 {
    let ratio = constants.k_b * temperature / (constants.h * constants.c);
    8.0 * std::f64::consts::PI.powi(5) * constants.h * constants.c / 15.0 * ratio.powi(4)
}

/// Total photon density integral_0^inf rho_N d nu by quadrature; matches
/// 16 pi zeta(3) (k_B T / (h c))^3.
pub fn total_photon_density(temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter("temperature must be positive".into()));
    }
    let dimensionless = integrate_dimensionless(2);
    let kt_h = constants.k_b * temperature / constants.h;
    Ok(8.0 * std::f64::consts::PI / constants.c.powi(3) * kt_h.powi(3) * dimensionless)
}

/// Closed form 16 pi zeta(3) (k_B T / (h c))^3, with zeta(3) from its series.
pub fn total_photon_density_closed(temperature: f64, constants: &PhysicalConstants) -> f64 {
    let ratio = constants.k_b * temperature / (constants.h * constants.c);
    16.0 * std::f64::consts::PI * zeta3() * ratio.powi(3)
}

/// integral_0^inf x^p / (e^x - 1) dx with the substitution x = beta h nu
/// already made: adaptive Simpson on (0, 50] plus the analytic tail
/// sum_n e^{-50 n} poly(50)/n^{p+1} (n = 1, 2 suffice at this cutoff).
fn integrate_dimensionless(p: u32) -> f64 {
    const X_CUT: f64 = 50.0;
    let integrand = move |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        if x < 1e-8 {
            // x^p / (e^x - 1) = x^{p-1} (1 - x/2 + ...)
            return x.powi(p as i32 - 1) * (1.0 - x / 2.0);
        }
        x.powi(p as i32) / x.exp_m1()
    };
    let body = adaptive_simpson(&integrand, 0.0, X_CUT, 1e-13);
    // tail: integral_X^inf x^p e^{-n x} dx summed over n >= 1
    let mut tail = 0.0;
    for n in 1..=2u32 {
        let a = n as f64;
        let x = X_CUT;
        let poly = match p {
            2 => x * x / a + 2.0 * x / (a * a) + 2.0 / (a * a * a),
            3 => x * x * x / a + 3.0 * x * x / (a * a) + 6.0 * x / (a * a * a) + 6.0 / (a * a * a * a),
            _ => unreachable!("only p = 2, 3 are used"),
        };
        tail += (-a * x).exp() * poly;
    }
    body + tail
}

/// Energy of a single photon of wavelength lambda: E = h c / lambda.
pub fn photon_energy(lambda: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter("wavelength must be positive".into()));
    }
    Ok(constants.hc() / lambda)
}

/// A tabulated blackbody spectrum: frequencies with both densities, sampled
/// uniformly in the dimensionless variable x = h nu / k_B T.
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    pub temperature: f64,
    pub nu: Vec<f64>,
    pub rho_e: Vec<f64>,
    pub rho_n: Vec<f64>,
}

impl SpectralDensity {
    pub fn sample(
        temperature: f64,
        points: usize,
        x_max: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if !(temperature > 0.0) || points < 2 || !(x_max > 0.0) {
            return Err(Error::InvalidParameter(
                "sampling needs T > 0, points >= 2, x_max > 0".into(),
            ));
        }
        let nu_scale = constants.k_b * temperature / constants.h;
        let mut nu = Vec::with_capacity(points);
        let mut rho_e = Vec::with_capacity(points);
        let mut rho_n = Vec::with_capacity(points);
        for i in 1..=points {
            let x = x_max * i as f64 / points as f64;
            let f = x * nu_scale;
            nu.push(f);
            rho_e.push(planck_energy_density(f, temperature, constants));
            rho_n.push(planck_number_density(f, temperature, constants));
        }
        Ok(Self {
            temperature,
            nu,
            rho_e,
            rho_n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bisect;

    const SI: PhysicalConstants = PhysicalConstants::si();

    #[test]
    fn series_converges_to_closed_form() {
        let t = 1000.0;
        let nu = SI.k_b * t / SI.h; // x = 1
        let closed = planck_energy_density(nu, t, &SI);
        let series = planck_energy_density_series(nu, t, 50, &SI);
        // mathematical tail e^{-50} is below double precision; roundoff only
        assert!(((series - closed) / closed).abs() < 1e-13);
    }

    #[test]
    fn rayleigh_jeans_low_frequency_limit() {
        let t = 300.0;
        for x in [1e-3, 1e-4] {
            let nu = x * SI.k_b * t / SI.h;
            let planck = planck_energy_density(nu, t, &SI);
            let rj = rayleigh_jeans_density(nu, t, &SI);
            // planck/rj = x/(e^x - 1) = 1 - x/2 + O(x^2)
            let ratio = planck / rj;
            assert!((ratio - (1.0 - x / 2.0)).abs() < 0.1 * x * x, "x = {x}");
        }
    }

    #[test]
    fn density_ratio_is_photon_energy() {
        let t = 77.0;
        for x in [0.3, 1.0, 4.0] {
            let nu = x * SI.k_b * t / SI.h;
            let ratio = planck_energy_density(nu, t, &SI) / planck_number_density(nu, t, &SI);
            assert!(((ratio - SI.h * nu) / (SI.h * nu)).abs() < 1e-14);
        }
    }

    #[test]
    fn wien_coefficient_against_bisection_oracle() {
        // oracle: the root of 3 (1 - e^{-x}) = x, refined by bisection
        let oracle = bisect(&|x: f64| 3.0 * (1.0 - (-x).exp()) - x, 2.0, 3.5);
        let peak = peak_frequency(2.7, &SI).unwrap();
        assert!(
            (peak.coefficient - oracle).abs() < 1e-6,
            "golden-section {} vs bisection {}",
            peak.coefficient,
            oracle
        );
        assert!((oracle - 2.821_439_372_122_08).abs() < 1e-12);
    }

    #[test]
    fn peak_is_linear_in_temperature() {
        let p1 = peak_frequency(1.7, &SI).unwrap();
        let p2 = peak_frequency(3.4, &SI).unwrap();
        assert!((p2.nu_max / p1.nu_max - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cmb_peak_near_published_value() {
        let peak = peak_frequency(2.7, &SI).unwrap();
        assert!(
            (peak.nu_max / 159.0e9 - 1.0).abs() < 0.01,
            "nu_max = {:.4} GHz",
            peak.nu_max / 1e9
        );
    }

    #[test]
    fn quadrature_totals_match_closed_forms() {
        for t in [2.7, 300.0, 5778.0] {
            let qe = total_energy_density(t, &SI).unwrap();
            let ce = total_energy_density_closed(t, &SI);
            assert!(((qe - ce) / ce).abs() < 1e-8, "energy at T = {t}");
            let qn = total_photon_density(t, &SI).unwrap();
            let cn = total_photon_density_closed(t, &SI);
            assert!(((qn - cn) / cn).abs() < 1e-8, "number at T = {t}");
        }
    }

    #[test]
    fn cmb_photon_density_near_400_per_cm3() {
        let n = total_photon_density_closed(2.7, &SI);
        let per_cm3 = n * 1e-6;
        assert!((per_cm3 / 400.0 - 1.0).abs() < 0.01, "n = {per_cm3:.2} cm^-3");
    }

    #[test]
    fn solar_to_cmb_density_ratio() {
        let ratio = total_photon_density_closed(5778.0, &SI) / total_photon_density_closed(2.7, &SI);
        assert!((ratio / 9.8e9 - 1.0).abs() < 0.02, "ratio = {ratio:.4e}");
    }

    #[test]
    fn photon_energy_values() {
        let e1 = photon_energy(1.0, &SI).unwrap();
        assert!((e1 / 1.986e-25 - 1.0).abs() < 5e-4);
        let e500 = photon_energy(500e-9, &SI).unwrap();
        assert!((e500 / 3.97e-19 - 1.0).abs() < 1e-3);
        // E(lambda) lambda is constant
        for lam in [1e-9, 1e-6, 1e-3, 1.0] {
            let e = photon_energy(lam, &SI).unwrap();
            assert!(((e * lam) / SI.hc() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_shape_single_interior_maximum() {
        let s = SpectralDensity::sample(300.0, 400, 25.0, &SI).unwrap();
        // find sign changes of the discrete slope
        let mut changes = 0;
        let mut prev_up = true;
        for i in 1..s.rho_e.len() {
            let up = s.rho_e[i] > s.rho_e[i - 1];
            if i > 1 && up != prev_up {
                changes += 1;
            }
            prev_up = up;
        }
        assert_eq!(changes, 1, "Planck curve must have a single interior maximum");
        // endpoints tend to zero
        assert!(s.rho_e[0] < s.rho_e.iter().cloned().fold(0.0, f64::max) * 1e-2);
        assert!(*s.rho_e.last().unwrap() < s.rho_e.iter().cloned().fold(0.0, f64::max) * 1e-5);
        assert!(s.rho_e.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn peak_value_scales_as_t_cubed() {
        let reference = {
            let t = 100.0;
            let peak = peak_frequency(t, &SI).unwrap();
            planck_energy_density(peak.nu_max, t, &SI) / t.powi(3)
        };
        for t in [2.7, 300.0, 5778.0] {
            let peak = peak_frequency(t, &SI).unwrap();
            let v = planck_energy_density(peak.nu_max, t, &SI) / t.powi(3);
            assert!(
                ((v - reference) / reference).abs() < 1e-10,
                "T = {t}: {v} vs {reference}"
            );
        }
    }
}
