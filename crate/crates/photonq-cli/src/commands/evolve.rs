//! `photonq evolve`: spectral time evolution with an energy/momentum time
//! series and a conservation report; optional final snapshot.

use std::path::PathBuf;

use photonq::field::{evolve_n, helicity_split, io as field_io};

use crate::commands::synthesize::{build_packet_field, load_field, SynthesizeArgs};
use crate::config::RunConfig;
use crate::output::{emit, json_provenance, suffixed, text_header};
use crate::{CliError, OutputFormat};

pub struct EvolveArgs {
    pub input: Option<PathBuf>,
    pub synth: SynthesizeArgs,
    pub dt: f64,
    pub steps: usize,
    pub sample_every: usize,
}

pub fn run(cfg: &RunConfig, args: &EvolveArgs) -> Result<(), CliError> {
    if !(args.dt.is_finite()) || args.steps == 0 {
        return Err(CliError::Validation("need a finite dt and steps >= 1".into()));
    }
    let field = match &args.input {
        Some(path) => load_field(path)?,
        None => build_packet_field(cfg, &args.synth)?.1,
    };
    let consts = &cfg.constants;
    let e0 = field.energy();
    let (p0, _) = field.momentum(consts);
    if e0 <= 0.0 {
        return Err(CliError::Validation("cannot evolve an empty field".into()));
    }
    let pmag = (p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]).sqrt();

    let stride = args.sample_every.max(1);
    let mut series: Vec<(usize, f64, f64, [f64; 3])> = Vec::new();
    let mut max_energy_drift = 0.0f64;
    let mut max_momentum_drift = 0.0f64;
    let evolved = evolve_n(&field, args.dt, args.steps, consts, |obs| {
        max_energy_drift = max_energy_drift.max(((obs.energy - e0) / e0).abs());
        let dp = ((obs.momentum[0] - p0[0]).powi(2)
            + (obs.momentum[1] - p0[1]).powi(2)
            + (obs.momentum[2] - p0[2]).powi(2))
        .sqrt();
        if pmag > 0.0 {
            max_momentum_drift = max_momentum_drift.max(dp / pmag);
        }
        if obs.step % stride == 0 || obs.step == args.steps {
            series.push((obs.step, obs.time, obs.energy, obs.momentum));
        }
    })
    .map_err(CliError::from)?;

    let split = helicity_split(&evolved).map_err(CliError::from)?;
    let (e_plus, e_minus) = split.branch_energies();
    let final_energy = evolved.energy();

    let canonical = cfg.canonical(
        "evolve",
        &format!(
            "input={:?} dt={} steps={} sample_every={}",
            args.input, args.dt, args.steps, stride
        ),
    );

    if let Some(out) = &cfg.out {
        let snapshot_path = suffixed(out, "_final");
        let mut buf = Vec::new();
        match cfg.format {
            OutputFormat::Binary => {
                field_io::write_field_binary(&mut buf, &evolved).map_err(CliError::from)?
            }
            _ => field_io::write_field_text(&mut buf, &evolved).map_err(CliError::from)?,
        }
        emit(Some(&snapshot_path), &buf)?;
    }

    match cfg.format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = series
                .iter()
                .map(|(s, t, e, p)| serde_json::json!({"step": s, "t": t, "energy": e, "momentum": p}))
                .collect();
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "series": rows,
                "max_energy_drift": max_energy_drift,
                "max_momentum_drift": max_momentum_drift,
                "final_energy": final_energy,
                "helicity_energies": [e_plus, e_minus],
                "helicity_sum_defect": ((e_plus + e_minus - final_energy) / final_energy).abs(),
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )?;
        }
        _ => {
            let mut text = text_header(&canonical);
            text.push_str("# columns: step t energy px py pz\n");
            for (s, t, e, p) in &series {
                text.push_str(&format!("{s} {t:e} {e:e} {:e} {:e} {:e}\n", p[0], p[1], p[2]));
            }
            text.push_str(&format!(
                "# conservation: max_energy_drift = {max_energy_drift:e}, \
                 max_momentum_drift = {max_momentum_drift:e}\n\
                 # helicity energies: {e_plus:e} {e_minus:e} (sum defect {:e})\n",
                ((e_plus + e_minus - final_energy) / final_energy).abs()
            ));
            emit(cfg.out.as_deref(), text.as_bytes())?;
        }
    }

    let tol = cfg.tol.unwrap_or(1e-10);
    if max_energy_drift > tol || max_momentum_drift > tol {
        return Err(CliError::Physics(format!(
            "conservation drift (energy {max_energy_drift:.3e}, momentum \
             {max_momentum_drift:.3e}) exceeds {tol:.1e}"
        )));
    }
    Ok(())
}
