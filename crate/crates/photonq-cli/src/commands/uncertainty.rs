//! `photonq uncertainty`: sweep Gaussian packets and report position and
//! momentum spreads against the photon bound; nonzero exit when any row
//! violates it.

use num_complex::Complex64 as C64;
use photonq::momentum::{GaussianPacket, MomentumGrid};
use photonq::poincare::{
    uncertainty_bound, uncertainty_product, ConnectionPolicy, DerivativeScheme,
};

use crate::config::{parse_list, RunConfig};
use crate::output::{emit, json_provenance, text_header};
use crate::{CliError, OutputFormat};

pub struct UncertaintyArgs {
    pub sigmas: String,
    pub k_mags: String,
    pub mixes: String,
}

pub fn run(cfg: &RunConfig, args: &UncertaintyArgs) -> Result<(), CliError> {
    let sigmas = parse_list(&args.sigmas)?;
    let k_mags = parse_list(&args.k_mags)?;
    let mixes = parse_list(&args.mixes)?;
    if sigmas.is_empty() || k_mags.is_empty() || mixes.is_empty() {
        return Err(CliError::Validation("sweep lists must not be empty".into()));
    }
    for m in &mixes {
        if !(0.0..=1.0).contains(m) {
            return Err(CliError::Validation("mix values must lie in [0, 1]".into()));
        }
    }
    let tol = cfg.tol.unwrap_or(1e-3);
    let consts = cfg.constants;
    let bound = uncertainty_bound(consts.hbar);

    // box sized so every packet fits with margin, carrier off the k_z axis
    let sigma_max = sigmas.iter().cloned().fold(0.0f64, f64::max);
    let k_max = k_mags.iter().cloned().fold(0.0f64, f64::max);
    let n = cfg.grid;
    let half = 1.15 * (k_max + 5.0 * sigma_max);
    let dk = [
        2.0 * half / n[0] as f64,
        2.0 * half / n[1] as f64,
        2.0 * half / n[2] as f64,
    ];
    let grid = MomentumGrid::cartesian_fft(n, dk)
        .map_err(CliError::from)?
        .into_shared();
    let direction = {
        let d: [f64; 3] = [2.0, 1.0, 0.4];
        let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        [d[0] / len, d[1] / len, d[2] / len]
    };

    let canonical = cfg.canonical(
        "uncertainty",
        &format!("sigmas={sigmas:?} k={k_mags:?} mixes={mixes:?} tol={tol}"),
    );

    let mut rows = Vec::new();
    let mut violations = 0usize;
    for &sigma in &sigmas {
        for &k_mag in &k_mags {
            for &mix in &mixes {
                let center = [
                    direction[0] * k_mag,
                    direction[1] * k_mag,
                    direction[2] * k_mag,
                ];
                let perp = (center[0] * center[0] + center[1] * center[1]).sqrt();
                if perp < 5.0 * sigma {
                    return Err(CliError::Validation(format!(
                        "carrier |k| = {k_mag} with sigma = {sigma} leaves the packet on the \
                         k_z axis (distance {perp:.3} < 5 sigma); increase |k| or shrink sigma"
                    )));
                }
                let c_plus = C64::new((1.0 - mix).sqrt(), 0.0);
                let c_minus = C64::new(0.0, mix.sqrt());
                let packet = GaussianPacket::new(grid.clone(), center, sigma, c_plus, c_minus)
                    .map_err(CliError::from)?;
                let grad = packet.gradient();
                let report = uncertainty_product(
                    &packet.state(),
                    DerivativeScheme::Analytic(&grad),
                    ConnectionPolicy::default(),
                    &consts,
                )
                .map_err(CliError::from)?;
                if report.product < bound * (1.0 - tol) {
                    violations += 1;
                }
                rows.push((sigma, k_mag, mix, report));
            }
        }
    }

    match cfg.format {
        OutputFormat::Json => {
            let body: Vec<serde_json::Value> = rows
                .iter()
                .map(|(sigma, k, mix, r)| {
                    serde_json::json!({
                        "sigma": sigma, "k0": k, "mix": mix,
                        "delta_r": r.delta_r, "delta_p": r.delta_p,
                        "product_over_hbar": r.product / consts.hbar,
                        "bound_over_hbar": r.bound / consts.hbar,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "rows": body,
                "violations": violations,
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )?;
        }
        _ => {
            let mut out = String::new();
            out.push_str(&text_header(&canonical));
            out.push_str("# columns: sigma k0 mix delta_R delta_P product/hbar bound/hbar\n");
            for (sigma, k, mix, r) in &rows {
                out.push_str(&format!(
                    "{sigma:e} {k:e} {mix:e} {:e} {:e} {:.10} {:.10}\n",
                    r.delta_r,
                    r.delta_p,
                    r.product / consts.hbar,
                    r.bound / consts.hbar
                ));
            }
            out.push_str(&format!("# violations: {violations}\n"));
            emit(cfg.out.as_deref(), out.as_bytes())?;
        }
    }

    if violations > 0 {
        return Err(CliError::Physics(format!(
            "{violations} sweep rows violate the uncertainty bound beyond tolerance {tol}"
        )));
    }
    Ok(())
}
