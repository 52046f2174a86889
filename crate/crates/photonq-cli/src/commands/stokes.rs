//! `photonq stokes`: per-node Stokes parameters and ellipse geometry of a
//! state, built inline from Gaussian parameters or loaded from a state file.

use std::path::PathBuf;

use photonq::momentum::{io as state_io, make_gaussian_state, MomentumGrid, PhotonWavefunctionK};

use crate::config::{parse_complex, parse_vec3, RunConfig};
use crate::output::{emit, json_provenance, text_header};
use crate::{CliError, OutputFormat};

pub struct StokesArgs {
    pub state_file: Option<PathBuf>,
    pub save_state: Option<PathBuf>,
    pub k0: String,
    pub sigma: f64,
    pub c_plus: String,
    pub c_minus: String,
}

pub fn load_or_build_state(
    cfg: &RunConfig,
    state_file: Option<&PathBuf>,
    k0: &str,
    sigma: f64,
    c_plus: &str,
    c_minus: &str,
) -> Result<PhotonWavefunctionK, CliError> {
    if let Some(path) = state_file {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Validation(format!("cannot read {path:?}: {e}")))?;
        let parsed = if bytes.starts_with(b"PQWF") {
            state_io::read_state_binary(&bytes[..])
        } else {
            state_io::read_state_text(&bytes[..])
        };
        return parsed.map_err(|e| CliError::Validation(format!("state file: {e}")));
    }
    let k0 = parse_vec3(k0)?;
    let cp = parse_complex(c_plus)?;
    let cm = parse_complex(c_minus)?;
    let mag = (k0[0] * k0[0] + k0[1] * k0[1] + k0[2] * k0[2]).sqrt();
    if mag <= 0.0 {
        return Err(CliError::Validation("k0 must be nonzero".into()));
    }
    let halfwidth = (5.0 * sigma).min(0.9 * mag);
    let grid = MomentumGrid::cartesian_box(k0, [halfwidth; 3], cfg.grid)
        .map_err(CliError::from)?
        .into_shared();
    make_gaussian_state(grid, k0, sigma, cp, cm).map_err(CliError::from)
}

pub fn run(cfg: &RunConfig, args: &StokesArgs) -> Result<(), CliError> {
    let f = load_or_build_state(
        cfg,
        args.state_file.as_ref(),
        &args.k0,
        args.sigma,
        &args.c_plus,
        &args.c_minus,
    )?;
    if let Some(path) = &args.save_state {
        let mut buf = Vec::new();
        state_io::write_state_text(&mut buf, &f).map_err(CliError::from)?;
        emit(Some(path), &buf)?;
    }

    let canonical = cfg.canonical(
        "stokes",
        &format!(
            "k0={} sigma={} c_plus={} c_minus={} from_file={}",
            args.k0,
            args.sigma,
            args.c_plus,
            args.c_minus,
            args.state_file.is_some()
        ),
    );

    match cfg.format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = (0..f.grid().len())
                .map(|i| {
                    let k = f.grid().node(i);
                    let s = f.stokes_at(i);
                    let (major, minor) = s.ellipse_semi_axes();
                    serde_json::json!({
                        "k": k,
                        "s0": s.s0, "s1": s.s1, "s2": s.s2, "s3": s.s3,
                        "orientation": s.ellipse_orientation(),
                        "major": major, "minor": minor,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "integrated_s0": f.integrated_s0(),
                "rows": rows,
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )
        }
        _ => {
            let mut out = String::new();
            out.push_str(&text_header(&canonical));
            out.push_str("# columns: kx ky kz s0 s1 s2 s3 orientation major minor\n");
            for i in 0..f.grid().len() {
                let k = f.grid().node(i);
                let s = f.stokes_at(i);
                let (major, minor) = s.ellipse_semi_axes();
                out.push_str(&format!(
                    "{:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e}\n",
                    k[0],
                    k[1],
                    k[2],
                    s.s0,
                    s.s1,
                    s.s2,
                    s.s3,
                    s.ellipse_orientation(),
                    major,
                    minor
                ));
            }
            out.push_str(&format!("# integrated_s0: {:e}\n", f.integrated_s0()));
            emit(cfg.out.as_deref(), out.as_bytes())
        }
    }
}
