//! Export of tabulated spectra (delimited text with units in the header) and
//! the JSON radiometry summary.

use std::io::Write;

use super::planck::{PlanckPeak, SpectralDensity};
use crate::error::Result;

/// One-temperature summary of the radiometric quantities.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RadiometrySummary {
    pub temperature_k: f64,
    pub nu_max_hz: f64,
    pub peak_coefficient: f64,
    pub total_energy_density_j_per_m3: f64,
    pub total_photon_density_per_m3: f64,
}

impl RadiometrySummary {
    pub fn new(
        temperature: f64,
        peak: PlanckPeak,
        total_energy: f64,
        total_photons: f64,
    ) -> Self {
        Self {
            temperature_k: temperature,
            nu_max_hz: peak.nu_max,
            peak_coefficient: peak.coefficient,
            total_energy_density_j_per_m3: total_energy,
            total_photon_density_per_m3: total_photons,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization cannot fail")
    }
}

/// Delimited spectrum table: nu [Hz], rho_E [J s / m^3], rho_N [s / m^3].
pub fn write_spectrum_text<W: Write>(w: &mut W, s: &SpectralDensity) -> Result<()> {
    writeln!(w, "# photonq blackbody spectrum v1")?;
    writeln!(w, "# temperature_K: {:e}", s.temperature)?;
    writeln!(w, "# columns: nu_Hz rho_E_Js_per_m3 rho_N_s_per_m3")?;
    for i in 0..s.nu.len() {
        writeln!(w, "{:e} {:e} {:e}", s.nu[i], s.rho_e[i], s.rho_n[i])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;

    #[test]
    fn spectrum_export_has_header_and_rows() {
        let si = PhysicalConstants::si();
        let s = SpectralDensity::sample(2.7, 16, 20.0, &si).unwrap();
        let mut buf = Vec::new();
        write_spectrum_text(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# photonq blackbody spectrum v1"));
        assert!(text.contains("temperature_K"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 16);
    }

    #[test]
    fn summary_json_fields() {
        let summary = RadiometrySummary::new(
            2.7,
            PlanckPeak {
                nu_max: 1.58e11,
                coefficient: 2.82,
            },
            4.17e-14,
            4.0e8,
        );
        let json = summary.to_json();
        assert!(json.contains("temperature_k"));
        assert!(json.contains("nu_max_hz"));
        assert!(json.contains("total_photon_density_per_m3"));
    }
}
