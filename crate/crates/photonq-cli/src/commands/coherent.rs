//! `photonq coherent`: photon-number histogram of a two-mode coherent state
//! and the mean-field versus classical-field comparison.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use photonq::fock::{
    classical_field_at, coherent_state, field_operator_element, n_max_for_tail, poisson_tail,
    FockBasis, ModeSet,
};
use photonq::momentum::{Helicity, MomentumGrid};

use crate::config::RunConfig;
use crate::output::{emit, json_provenance, text_header};
use crate::{CliError, OutputFormat};

pub struct CoherentArgs {
    pub n_avg: f64,
    pub tail_eps: f64,
    pub samples: usize,
}

struct Prng(u64);

impl Prng {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

pub fn run(cfg: &RunConfig, args: &CoherentArgs) -> Result<(), CliError> {
    if args.n_avg < 0.0 {
        return Err(CliError::Validation("n-avg must be nonnegative".into()));
    }
    if !(args.tail_eps > 0.0) {
        return Err(CliError::Validation("tail-eps must be positive".into()));
    }
    let consts = &cfg.constants;
    let grid = MomentumGrid::cartesian_box([2.0, 0.5, 1.0], [1.5; 3], [4; 3])
        .map_err(CliError::from)?
        .into_shared();
    let modes = Arc::new(
        ModeSet::from_grid(&grid, &[(7, Helicity::Plus), (22, Helicity::Minus)])
            .map_err(CliError::from)?,
    );
    let raw = [C64::new(0.8, 0.3), C64::new(-0.2, 0.6)];
    let n2 = modes.amplitude_norm_sq(&raw);
    let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();

    let n_max = n_max_for_tail(args.n_avg, args.tail_eps).max(2);
    let basis = Arc::new(FockBasis::new(2, n_max));
    let state = coherent_state(basis, modes.clone(), &amps, args.n_avg, args.tail_eps)
        .map_err(CliError::from)?;

    // photon-number histogram against the Poisson law
    let dist = state.number_distribution();
    let mut poisson = Vec::with_capacity(dist.len());
    let mut term = (-args.n_avg).exp();
    for n in 0..dist.len() {
        if n > 0 {
            term *= args.n_avg / n as f64;
        }
        poisson.push(term);
    }

    // mean field against sqrt(<N> hbar c) x classical field
    let mut rng = Prng(cfg.seed.wrapping_mul(0x9E3779B97F4A7C15) | 1);
    let tail_bound = poisson_tail(args.n_avg, n_max);
    let mut worst_delta = 0.0f64;
    let mut comparisons = Vec::new();
    for _ in 0..args.samples.max(1) {
        let r = [
            6.0 * rng.next_f64() - 3.0,
            6.0 * rng.next_f64() - 3.0,
            6.0 * rng.next_f64() - 3.0,
        ];
        let t = 2.0 * rng.next_f64();
        let mean = field_operator_element(&state, &state, r, t, consts).map_err(CliError::from)?;
        let classical = classical_field_at(&modes, &amps, r, t, consts, true)
            .map_err(CliError::from)?;
        let scale = classical
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            * args.n_avg.sqrt();
        let mut delta = 0.0f64;
        for c in 0..3 {
            let want = classical[c] * args.n_avg.sqrt();
            delta = delta.max((mean[c] - want).norm());
        }
        let rel = if scale > 0.0 { delta / scale } else { delta };
        worst_delta = worst_delta.max(rel);
        comparisons.push((r, t, rel));
    }

    let canonical = cfg.canonical(
        "coherent",
        &format!(
            "n_avg={} tail_eps={} samples={} n_max={n_max}",
            args.n_avg, args.tail_eps, args.samples
        ),
    );

    match cfg.format {
        OutputFormat::Json => {
            let histogram: Vec<serde_json::Value> = dist
                .iter()
                .enumerate()
                .map(|(n, p)| serde_json::json!({"n": n, "p": p, "poisson": poisson[n]}))
                .collect();
            let comp: Vec<serde_json::Value> = comparisons
                .iter()
                .map(|(r, t, rel)| serde_json::json!({"r": r, "t": t, "rel_delta": rel}))
                .collect();
            let doc = serde_json::json!({
                "provenance": json_provenance(&canonical),
                "n_max": n_max,
                "truncation_tail": tail_bound,
                "number_histogram": histogram,
                "mean_field_comparison": comp,
                "worst_mean_field_delta": worst_delta,
            });
            emit(
                cfg.out.as_deref(),
                serde_json::to_string_pretty(&doc).unwrap().as_bytes(),
            )?;
        }
        _ => {
            let mut text = text_header(&canonical);
            text.push_str(&format!(
                "# n_max = {n_max}, truncation tail = {tail_bound:e}\n# histogram: n P(n) poisson(n)\n"
            ));
            for (n, p) in dist.iter().enumerate() {
                text.push_str(&format!("{n} {p:e} {:e}\n", poisson[n]));
            }
            text.push_str("# mean field vs sqrt(<N> hbar c) x classical: x y z t rel_delta\n");
            for (r, t, rel) in &comparisons {
                text.push_str(&format!("{:e} {:e} {:e} {t:e} {rel:e}\n", r[0], r[1], r[2]));
            }
            text.push_str(&format!("# worst_mean_field_delta: {worst_delta:e}\n"));
            emit(cfg.out.as_deref(), text.as_bytes())?;
        }
    }

    // the correspondence must hold to within the truncation tail's reach;
    // give the bound two orders of headroom over the tail itself
    let limit = cfg.tol.unwrap_or((tail_bound * 1e2).max(1e-12));
    if args.n_avg > 0.0 && worst_delta > limit {
        return Err(CliError::Physics(format!(
            "mean-field deviation {worst_delta:.3e} exceeds the truncation bound {limit:.3e}"
        )));
    }
    Ok(())
}
