//! `photonq synthesize`: build the RS field of a Gaussian wave packet on the
//! Fourier-dual box and write a snapshot plus diagnostics.

use photonq::field::{
    helicity_split, io as field_io, nonlocal_norm, synthesize, RSField, SpatialGrid,
    SynthesisOptions,
};
use photonq::momentum::{make_gaussian_state, MomentumGrid, PhotonWavefunctionK};

use crate::config::{parse_complex, parse_vec3, RunConfig};
use crate::output::{emit, json_provenance, suffixed, text_header};
use crate::{CliError, OutputFormat};

pub struct SynthesizeArgs {
    pub k0: String,
    pub sigma: f64,
    pub c_plus: String,
    pub c_minus: String,
    pub time: f64,
    pub quantum_scale: bool,
}

pub fn build_packet_field(
    cfg: &RunConfig,
    args: &SynthesizeArgs,
) -> Result<(PhotonWavefunctionK, RSField), CliError> {
    let k0 = parse_vec3(&args.k0)?;
    let cp = parse_complex(&args.c_plus)?;
    let cm = parse_complex(&args.c_minus)?;
    if !(args.sigma > 0.0) {
        return Err(CliError::Validation("sigma must be positive".into()));
    }
    let mag = (k0[0] * k0[0] + k0[1] * k0[1] + k0[2] * k0[2]).sqrt();
    let n = cfg.grid;
    let half = 1.1 * (mag + 5.0 * args.sigma);
    let dk = [
        2.0 * half / n[0] as f64,
        2.0 * half / n[1] as f64,
        2.0 * half / n[2] as f64,
    ];
    let grid = MomentumGrid::cartesian_fft(n, dk)
        .map_err(CliError::from)?
        .into_shared();
    let f = make_gaussian_state(grid.clone(), k0, args.sigma, cp, cm).map_err(CliError::from)?;
    let spatial = SpatialGrid::dual_centered(&grid).map_err(CliError::from)?;
    let opts = SynthesisOptions {
        quantum_scale: args.quantum_scale,
        fallback_direct: true,
    };
    let field = synthesize(&f, &spatial, args.time, &cfg.constants, opts).map_err(CliError::from)?;
    Ok((f, field))
}

pub fn run(cfg: &RunConfig, args: &SynthesizeArgs) -> Result<(), CliError> {
    let (_, field) = build_packet_field(cfg, args)?;
    let consts = &cfg.constants;
    let energy = field.energy();
    let (momentum, imag_residual) = field.momentum(consts);
    let divergence = field.divergence_residual();
    let split = helicity_split(&field).map_err(CliError::from)?;
    let (e_plus, e_minus) = split.branch_energies();
    let photon_norm = nonlocal_norm(&split).map_err(CliError::from)?;

    let canonical = cfg.canonical(
        "synthesize",
        &format!(
            "k0={} sigma={} c_plus={} c_minus={} time={} quantum_scale={}",
            args.k0, args.sigma, args.c_plus, args.c_minus, args.time, args.quantum_scale
        ),
    );

    // snapshot: binary or text per the format (json holds diagnostics only)
    if let Some(out) = &cfg.out {
        let snapshot_path = suffixed(out, "_field");
        let mut buf = Vec::new();
        match cfg.format {
            OutputFormat::Binary => {
                field_io::write_field_binary(&mut buf, &field).map_err(CliError::from)?
            }
            _ => field_io::write_field_text(&mut buf, &field).map_err(CliError::from)?,
        }
        emit(Some(&snapshot_path), &buf)?;
    }

    let diag = serde_json::json!({
        "provenance": json_provenance(&canonical),
        "time": field.time(),
        "energy": energy,
        "momentum": momentum,
        "momentum_imag_residual": imag_residual,
        "divergence_residual": divergence,
        "helicity_energies": [e_plus, e_minus],
        "nonlocal_photon_norm": photon_norm,
    });
    match cfg.format {
        OutputFormat::Json => emit(
            cfg.out.as_deref(),
            serde_json::to_string_pretty(&diag).unwrap().as_bytes(),
        )?,
        _ => {
            let mut text = text_header(&canonical);
            text.push_str(&format!(
                "time = {:e}\nenergy = {:e}\nmomentum = {:e} {:e} {:e}\n\
                 momentum_imag_residual = {:e}\ndivergence_residual = {:e}\n\
                 helicity_energies = {:e} {:e}\nnonlocal_photon_norm = {:e}\n",
                field.time(),
                energy,
                momentum[0],
                momentum[1],
                momentum[2],
                imag_residual,
                divergence,
                e_plus,
                e_minus,
                photon_norm
            ));
            // diagnostics go to stdout; the field snapshot (if any) was
            // already written next to --out
            emit(None, text.as_bytes())?;
        }
    }

    let tol = cfg.tol.unwrap_or(1e-10);
    if divergence > tol {
        return Err(CliError::Physics(format!(
            "synthesized field divergence residual {divergence:.3e} exceeds {tol:.1e}"
        )));
    }
    Ok(())
}

/// Load a field snapshot written by `synthesize` (binary or text).
pub fn load_field(path: &std::path::Path) -> Result<RSField, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Validation(format!("cannot read {path:?}: {e}")))?;
    let parsed = if bytes.starts_with(b"PQFS") {
        field_io::read_field_binary(&bytes[..])
    } else {
        field_io::read_field_text(&bytes[..])
    };
    parsed.map_err(|e| CliError::Validation(format!("field file: {e}")))
}
