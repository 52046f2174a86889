//! `photonq planck`: blackbody spectra and radiometric summaries for a list
//! of temperatures, with the CMB preset cross-checks.

use photonq::thermal::{
    peak_frequency, total_energy_density, total_energy_density_closed, total_photon_density,
    total_photon_density_closed, write_spectrum_text, RadiometrySummary, SpectralDensity,
};

use crate::config::RunConfig;
use crate::output::{emit, json_provenance, suffixed, text_header};
use crate::{CliError, OutputFormat};

pub struct PlanckArgs {
    pub points: usize,
    pub x_max: f64,
}

pub fn run(cfg: &RunConfig, args: &PlanckArgs) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Validation("need at least two sample points".into()));
    }
    let si = &cfg.constants;
    let tol = cfg.tol.unwrap_or(1e-8);
    let canonical = cfg.canonical(
        "planck",
        &format!("points={} x_max={}", args.points, args.x_max),
    );

    let mut summaries = Vec::new();
    let mut worst_quad = 0.0f64;
    let mut cmb_checks: Option<(f64, f64)> = None;
    for &t in &cfg.temps {
        let spectrum =
            SpectralDensity::sample(t, args.points, args.x_max, si).map_err(CliError::from)?;
        if let Some(out) = &cfg.out {
            let path = suffixed(out, &format!("_T{t}"));
            let mut buf = text_header(&canonical).into_bytes();
            write_spectrum_text(&mut buf, &spectrum).map_err(CliError::from)?;
            emit(Some(&path), &buf)?;
        }
        let peak = peak_frequency(t, si).map_err(CliError::from)?;
        let qe = total_energy_density(t, si).map_err(CliError::from)?;
        let ce = total_energy_density_closed(t, si);
        let qn = total_photon_density(t, si).map_err(CliError::from)?;
        let cn = total_photon_density_closed(t, si);
        worst_quad = worst_quad
            .max(((qe - ce) / ce).abs())
            .max(((qn - cn) / cn).abs());
        if (t - 2.7).abs() < 0.05 {
            cmb_checks = Some((peak.nu_max / 159.0e9 - 1.0, cn * 1e-6 / 400.0 - 1.0));
        }
        summaries.push(RadiometrySummary::new(t, peak, qe, qn));
    }

    match cfg.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "summaries": summaries,
                "quadrature_vs_closed_worst": worst_quad,
                "cmb_preset": cmb_checks.map(|(dnu, dn)| serde_json::json!({
                    "nu_max_rel_delta_vs_159GHz": dnu,
                    "photon_density_rel_delta_vs_400cm3": dn,
                })),
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )?;
        }
        _ => {
            let mut text = text_header(&canonical);
            text.push_str(
                "# columns: T_K nu_max_Hz coefficient energy_density_J_m3 photon_density_m3\n",
            );
            for s in &summaries {
                text.push_str(&format!(
                    "{:e} {:e} {:.6} {:e} {:e}\n",
                    s.temperature_k,
                    s.nu_max_hz,
                    s.peak_coefficient,
                    s.total_energy_density_j_per_m3,
                    s.total_photon_density_per_m3
                ));
            }
            text.push_str(&format!("# quadrature_vs_closed_worst: {worst_quad:e}\n"));
            if let Some((dnu, dn)) = cmb_checks {
                text.push_str(&format!(
                    "# cmb preset: nu_max delta vs 159 GHz = {dnu:+.4e}, photon density delta \
                     vs 400 cm^-3 = {dn:+.4e}\n"
                ));
            }
            emit(cfg.out.as_deref(), text.as_bytes())?;
        }
    }

    if worst_quad > tol {
        return Err(CliError::Physics(format!(
            "quadrature vs closed-form deviation {worst_quad:.3e} exceeds {tol:.1e}"
        )));
    }
    if let Some((dnu, dn)) = cmb_checks {
        if dnu.abs() > 0.01 || dn.abs() > 0.01 {
            return Err(CliError::Physics(format!(
                "CMB preset off: nu_max delta {dnu:+.3e}, density delta {dn:+.3e} (limits 1%)"
            )));
        }
    }
    Ok(())
}
