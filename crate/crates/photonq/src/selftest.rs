//! The acceptance battery: every release criterion as an executable check
//! with its tolerance pinned in code. `run_all` is used both by the
//! `acceptance` integration test and by the CLI `selftest` subcommand.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::constants::PhysicalConstants;
use crate::field::{
    evolve_n, helicity_split, nonlocal_norm, nonlocal_norm_direct, polarization_vector,
    synthesize, SpatialGrid, SynthesisOptions,
};
use crate::fock::{
    classical_field_at, coherent_state, create_photon, field_operator_element, n_max_for_tail,
    FockBasis, FockState, ModeSet,
};
use crate::momentum::{
    make_gaussian_state, GaussianPacket, Helicity, MomentumGrid, StokesVector,
};
use crate::numerics::{bisect, zeta3};
use crate::poincare::{
    commutator_rp_expectations, curvature_action, expected_curvature, uncertainty_bound,
    uncertainty_product, ConnectionPolicy, DerivativeScheme,
};
use crate::thermal;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionReport {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        Self {
            id,
            name,
            passed,
            details,
        }
    }
}

/// Run the whole battery in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1_uncertainty_bound(),
        criterion_2_commutator_and_curvature(),
        criterion_3_norm_chain(),
        criterion_4_conservation(),
        criterion_5_polarization_stokes(),
        criterion_6_coherent_correspondence(),
        criterion_7_thermal_triple_agreement(),
        criterion_8_radiometry(),
        criterion_9_photon_energy(),
        criterion_10_bound_is_floor_not_target(),
    ]
}

/// Deterministic xorshift generator for seeded sweeps.
struct Prng(u64);

impl Prng {
    fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9E3779B97F4A7C15) | 1)
    }

    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Gaussian-family sweep states on a shared grid: widths, carrier directions
/// kept away from both the k_z axis and the box edges, varied helicity mixes.
fn sweep_packets(grid: &Arc<MomentumGrid>, count: usize) -> Vec<GaussianPacket> {
    let mixes = [
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        (C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        (C64::new(1.0, 0.0), C64::new(1.0, 0.0)),
        (C64::new(1.0, 0.0), C64::new(0.0, 1.0)),
        (C64::new(0.8, 0.0), C64::new(0.0, 0.6)),
    ];
    let mut rng = Prng::new(31);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let sigma = rng.in_range(0.25, 0.8);
        // carrier in the x-y-heavy region: safely off the k_z axis
        let k_perp = rng.in_range((5.5 * sigma).max(1.5), 4.2);
        let phi = rng.in_range(0.0, std::f64::consts::TAU);
        let kz = rng.in_range(-1.5, 1.5);
        let center = [k_perp * phi.cos(), k_perp * phi.sin(), kz];
        // keep 4 sigma inside the box
        if center.iter().any(|c| c.abs() + 4.0 * sigma > 7.8) {
            continue;
        }
        let (cp, cm) = mixes[out.len() % mixes.len()];
        if let Ok(p) = GaussianPacket::new(grid.clone(), center, sigma, cp, cm) {
            out.push(p);
        }
    }
    out
}

fn criterion_1_uncertainty_bound() -> CriterionReport {
    let name = "uncertainty bound: closed form and 100-state sweep";
    let consts = PhysicalConstants::natural();
    let bound = uncertainty_bound(consts.hbar);

    // the two closed forms agree and match the reference digits
    let alt = (9.0f64 / 4.0 + 5.0f64.sqrt()).sqrt() * consts.hbar;
    if (bound - alt).abs() > 1e-14 || (bound - 2.118_033_988_7).abs() > 1e-9 {
        return CriterionReport::new(
            1,
            name,
            false,
            format!("closed-form mismatch: {bound} vs {alt}"),
        );
    }

    let grid = match MomentumGrid::cartesian_fft([64; 3], [0.25; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(1, name, false, format!("grid: {e}")),
    };
    let packets = sweep_packets(&grid, 100);
    let policy = ConnectionPolicy::default();
    let results: Vec<Result<f64, String>> = packets
        .par_iter()
        .map(|p| {
            let grad = p.gradient();
            uncertainty_product(&p.state(), DerivativeScheme::Analytic(&grad), policy, &consts)
                .map(|r| r.product)
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut min_product = f64::INFINITY;
    for r in &results {
        match r {
            Ok(p) => min_product = min_product.min(*p),
            Err(e) => return CriterionReport::new(1, name, false, format!("sweep failure: {e}")),
        }
    }
    let floor = bound * (1.0 - 1e-3);
    let passed = min_product >= floor;
    CriterionReport::new(
        1,
        name,
        passed,
        format!(
            "bound = {bound:.10} hbar; {} states on a 64^3 grid; min product = {:.4} hbar \
             (floor {:.4})",
            results.len(),
            min_product,
            floor
        ),
    )
}

fn criterion_2_commutator_and_curvature() -> CriterionReport {
    let name = "position-momentum commutator and light-cone curvature";
    let consts = PhysicalConstants::natural();
    let policy = ConnectionPolicy::default();

    // [R_i, P_j] = i hbar delta_ij to 1e-6 relative with analytic gradients
    let grid = match MomentumGrid::cartesian_box([4.0, 1.0, 0.8], [3.2; 3], [48; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(2, name, false, format!("grid: {e}")),
    };
    let states = [
        ([4.0, 1.0, 0.8], 0.5, C64::ONE, C64::ZERO),
        ([3.4, 1.6, 0.2], 0.4, C64::new(0.6, 0.2), C64::new(0.0, 0.77)),
        ([4.6, 0.4, 1.4], 0.65, C64::new(0.0, 1.0), C64::new(0.4, -0.3)),
    ];
    let mut worst_comm = 0.0f64;
    for (center, sigma, cp, cm) in states {
        let p = match GaussianPacket::new(grid.clone(), center, sigma, cp, cm) {
            Ok(p) => p,
            Err(e) => return CriterionReport::new(2, name, false, format!("state: {e}")),
        };
        let grad = p.gradient();
        let m = match commutator_rp_expectations(
            &p.state(),
            DerivativeScheme::Analytic(&grad),
            policy,
            &consts,
        ) {
            Ok(m) => m,
            Err(e) => return CriterionReport::new(2, name, false, format!("commutator: {e}")),
        };
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { C64::I * consts.hbar } else { C64::ZERO };
                worst_comm = worst_comm.max((m[i][j] - want).norm() / consts.hbar);
            }
        }
    }
    if worst_comm > 1e-6 {
        return CriterionReport::new(
            2,
            name,
            false,
            format!("commutator deviation {worst_comm:.3e} exceeds 1e-6"),
        );
    }

    // curvature by nested finite differences: O(h^2) with a pinned constant,
    // verified at two resolutions on three states
    let mut details_curv = String::new();
    let mut curv_ok = true;
    let states = [
        ([3.5, 1.2, 0.6], 0.9, C64::ONE, C64::ZERO),
        ([3.0, 2.0, -0.5], 1.0, C64::ZERO, C64::ONE),
        ([4.0, 0.8, 1.0], 0.8, C64::new(0.7, 0.1), C64::new(0.2, 0.6)),
    ];
    for (idx, (center, sigma, cp, cm)) in states.into_iter().enumerate() {
        let err = |n: usize| -> Result<(f64, f64), String> {
            let g = MomentumGrid::cartesian_box(center, [3.0; 3], [n; 3])
                .map_err(|e| e.to_string())?
                .into_shared();
            let spacing = 6.0 / n as f64;
            let p = GaussianPacket::new(g.clone(), center, sigma, cp, cm)
                .map_err(|e| e.to_string())?;
            let f = p.state();
            let grad = p.gradient();
            let k_act = curvature_action(&f, DerivativeScheme::Analytic(&grad), policy)
                .map_err(|e| e.to_string())?;
            let expect = expected_curvature(&f);
            let fmax = f
                .f_plus()
                .iter()
                .chain(f.f_minus())
                .map(|v| v.norm())
                .fold(0.0f64, f64::max);
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..g.len() {
                let k = g.node(i);
                let d = [k[0] - center[0], k[1] - center[1], k[2] - center[2]];
                let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                // interior, well-supported probe nodes away from the axis
                if r > 1.5 * sigma
                    || (f.f_plus()[i].norm() + f.f_minus()[i].norm()) < 0.05 * fmax
                    || k[0] * k[0] + k[1] * k[1] < 0.2 * (k[2] * k[2])
                {
                    continue;
                }
                for axis in 0..3 {
                    num += (k_act[axis].f_plus()[i] - expect[axis].f_plus()[i]).norm_sqr()
                        + (k_act[axis].f_minus()[i] - expect[axis].f_minus()[i]).norm_sqr();
                    den += expect[axis].f_plus()[i].norm_sqr()
                        + expect[axis].f_minus()[i].norm_sqr();
                }
            }
            Ok(((num / den).sqrt(), spacing))
        };
        let (coarse, fine) = match (err(40), err(80)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                return CriterionReport::new(2, name, false, format!("curvature: {e}"))
            }
        };
        let (e1, h1) = coarse;
        let (e2, h2) = fine;
        // pinned O(h^2) envelope and observed convergence order
        let within = e1 <= 8.0 * (h1 / sigma).powi(2) && e2 <= 8.0 * (h2 / sigma).powi(2);
        let ratio = e1 / e2;
        let second_order = ratio > 2.8;
        curv_ok &= within && second_order;
        details_curv.push_str(&format!(
            " state {idx}: err(h)={e1:.2e}, err(h/2)={e2:.2e}, ratio {ratio:.2};"
        ));
    }
    CriterionReport::new(
        2,
        name,
        curv_ok,
        format!("max commutator deviation {worst_comm:.2e};{details_curv}"),
    )
}

fn criterion_3_norm_chain() -> CriterionReport {
    let name = "momentum norm = nonlocal position norm (+ double-sum oracle)";
    let consts = PhysicalConstants::natural();
    let grid = match MomentumGrid::cartesian_fft([64; 3], [0.25; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(3, name, false, format!("grid: {e}")),
    };
    let spatial = match SpatialGrid::dual_centered(&grid) {
        Ok(s) => s,
        Err(e) => return CriterionReport::new(3, name, false, format!("spatial: {e}")),
    };
    let packets = [
        ([2.0, 1.0, 0.5], 0.45, C64::ONE, C64::ZERO),
        ([1.5, -2.0, 1.0], 0.6, C64::new(0.4, 0.4), C64::new(0.7, 0.0)),
        ([-2.5, 1.5, -0.8], 0.35, C64::new(0.0, 0.3), C64::new(0.9, 0.2)),
    ];
    let mut worst = 0.0f64;
    for (center, sigma, cp, cm) in packets {
        let f = match make_gaussian_state(grid.clone(), center, sigma, cp, cm) {
            Ok(f) => f,
            Err(e) => return CriterionReport::new(3, name, false, format!("state: {e}")),
        };
        let field = match synthesize(&f, &spatial, 0.2, &consts, SynthesisOptions::default()) {
            Ok(f) => f,
            Err(e) => return CriterionReport::new(3, name, false, format!("synthesize: {e}")),
        };
        let split = match helicity_split(&field) {
            Ok(s) => s,
            Err(e) => return CriterionReport::new(3, name, false, format!("split: {e}")),
        };
        let norm = match nonlocal_norm(&split) {
            Ok(n) => n,
            Err(e) => return CriterionReport::new(3, name, false, format!("norm: {e}")),
        };
        worst = worst.max((norm - 1.0).abs());
    }
    if worst > 1e-4 {
        return CriterionReport::new(
            3,
            name,
            false,
            format!("norm chain deviation {worst:.3e} exceeds 1e-4"),
        );
    }

    // brute-force oracle on an 8^3 grid
    let small = match MomentumGrid::cartesian_fft([8; 3], [0.8; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(3, name, false, format!("small grid: {e}")),
    };
    let f = match make_gaussian_state(small.clone(), [1.6, 0.8, 0.8], 0.7, C64::ONE, C64::ZERO) {
        Ok(f) => f,
        Err(e) => return CriterionReport::new(3, name, false, format!("small state: {e}")),
    };
    let sp = SpatialGrid::dual_centered(&small).expect("cartesian");
    let field = synthesize(&f, &sp, 0.0, &consts, SynthesisOptions::default()).expect("synth");
    let split = helicity_split(&field).expect("split");
    let spectral = nonlocal_norm(&split).expect("norm");
    let direct = nonlocal_norm_direct(&split);
    let oracle_rel = ((direct - spectral) / spectral).abs();
    let passed = oracle_rel < 0.05;
    CriterionReport::new(
        3,
        name,
        passed,
        format!(
            "64^3 worst |norm - 1| = {worst:.2e} (limit 1e-4); 8^3 double-sum vs spectral \
             deviation {oracle_rel:.3} (limit 0.05)"
        ),
    )
}

fn criterion_4_conservation() -> CriterionReport {
    let name = "divergence-free synthesis, 1000-step conservation, helicity energies";
    let consts = PhysicalConstants::natural();
    let grid = match MomentumGrid::cartesian_fft([24; 3], [0.4; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(4, name, false, format!("grid: {e}")),
    };
    let f = match make_gaussian_state(
        grid.clone(),
        [1.8, 1.2, 0.6],
        0.5,
        C64::new(0.8, 0.1),
        C64::new(0.3, -0.4),
    ) {
        Ok(f) => f,
        Err(e) => return CriterionReport::new(4, name, false, format!("state: {e}")),
    };
    let spatial = SpatialGrid::dual_centered(&grid).expect("cartesian");
    let field = match synthesize(&f, &spatial, 0.0, &consts, SynthesisOptions::default()) {
        Ok(f) => f,
        Err(e) => return CriterionReport::new(4, name, false, format!("synthesize: {e}")),
    };
    let div = field.divergence_residual();
    let e0 = field.energy();
    let (p0, _) = field.momentum(&consts);
    let pmag = (p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]).sqrt();
    let mut spectral_drift = 0.0f64;
    let evolved = match evolve_n(&field, 0.05, 1000, &consts, |obs| {
        spectral_drift = spectral_drift.max(((obs.energy - e0) / e0).abs());
    }) {
        Ok(f) => f,
        Err(e) => return CriterionReport::new(4, name, false, format!("evolve: {e}")),
    };
    let e1 = evolved.energy();
    let (p1, _) = evolved.momentum(&consts);
    let energy_drift = ((e1 - e0) / e0).abs().max(spectral_drift);
    let momentum_drift = ((p1[0] - p0[0]).powi(2)
        + (p1[1] - p0[1]).powi(2)
        + (p1[2] - p0[2]).powi(2))
    .sqrt()
        / pmag;

    let split = match helicity_split(&field) {
        Ok(s) => s,
        Err(e) => return CriterionReport::new(4, name, false, format!("split: {e}")),
    };
    let (ep, em) = split.branch_energies();
    let additivity = ((ep + em - e0) / e0).abs();

    let passed =
        div < 1e-10 && energy_drift < 1e-10 && momentum_drift < 1e-10 && additivity < 1e-10;
    CriterionReport::new(
        4,
        name,
        passed,
        format!(
            "divergence {div:.2e}; over 1000 steps: energy drift {energy_drift:.2e}, momentum \
             drift {momentum_drift:.2e}; helicity energy additivity {additivity:.2e} (all \
             limits 1e-10)"
        ),
    )
}

fn criterion_5_polarization_stokes() -> CriterionReport {
    let name = "polarization vector convention and Stokes forms";
    // e(k z-hat) = (1, i, 0)/sqrt(2) exactly
    let e = match polarization_vector([0.0, 0.0, 2.0]) {
        Ok(e) => e,
        Err(err) => return CriterionReport::new(5, name, false, format!("axis: {err}")),
    };
    let s = std::f64::consts::FRAC_1_SQRT_2;
    if e[0] != C64::new(s, 0.0) || e[1] != C64::new(0.0, s) || e[2] != C64::ZERO {
        return CriterionReport::new(5, name, false, format!("e(z) = {e:?}"));
    }

    let mut rng = Prng::new(917);
    let mut worst_form = 0.0f64;
    let mut worst_purity = 0.0f64;
    for _ in 0..20 {
        let ap = rng.in_range(0.05, 2.0);
        let am = rng.in_range(0.05, 2.0);
        let dp = rng.in_range(-3.1, 3.1);
        let dm = rng.in_range(-3.1, 3.1);
        let sv = StokesVector::from_amplitudes(C64::from_polar(ap, dp), C64::from_polar(am, dm));
        let expect = (
            ap * ap + am * am,
            2.0 * ap * am * (dm - dp).cos(),
            2.0 * ap * am * (dm - dp).sin(),
            ap * ap - am * am,
        );
        worst_form = worst_form
            .max((sv.s0 - expect.0).abs())
            .max((sv.s1 - expect.1).abs())
            .max((sv.s2 - expect.2).abs())
            .max((sv.s3 - expect.3).abs());
        worst_purity = worst_purity.max(sv.purity_defect().abs() / (sv.s0 * sv.s0));
    }
    let passed = worst_form < 1e-12 && worst_purity < 4.0 * f64::EPSILON;
    CriterionReport::new(
        5,
        name,
        passed,
        format!(
            "e(z) exact; 20 amplitude/phase tuples: worst form deviation {worst_form:.2e} \
             (limit 1e-12), worst purity defect {worst_purity:.2e} (roundoff)"
        ),
    )
}

fn criterion_6_coherent_correspondence() -> CriterionReport {
    let name = "coherent mean field vs classical; fixed-number states";
    let consts = PhysicalConstants::natural();
    let grid = match MomentumGrid::cartesian_box([2.0, 0.5, 1.0], [1.5; 3], [4; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(6, name, false, format!("grid: {e}")),
    };
    let modes = match ModeSet::from_grid(&grid, &[(7, Helicity::Plus), (22, Helicity::Minus)]) {
        Ok(m) => Arc::new(m),
        Err(e) => return CriterionReport::new(6, name, false, format!("modes: {e}")),
    };
    let raw = [C64::new(0.8, 0.3), C64::new(-0.2, 0.6)];
    let n2 = modes.amplitude_norm_sq(&raw);
    let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();

    let mut rng = Prng::new(4242);
    let samples: Vec<([f64; 3], f64)> = (0..10)
        .map(|_| {
            (
                [
                    rng.in_range(-3.0, 3.0),
                    rng.in_range(-3.0, 3.0),
                    rng.in_range(-3.0, 3.0),
                ],
                rng.in_range(0.0, 2.0),
            )
        })
        .collect();

    let tail_eps = 1e-8;
    let mut worst_rel = 0.0f64;
    for n_avg in [0.5, 1.0, 4.0] {
        let n_max = n_max_for_tail(n_avg, tail_eps);
        let basis = Arc::new(FockBasis::new(2, n_max));
        let coh = match coherent_state(basis, modes.clone(), &amps, n_avg, tail_eps) {
            Ok(c) => c,
            Err(e) => return CriterionReport::new(6, name, false, format!("coherent: {e}")),
        };
        for &(r, t) in &samples {
            let mean = match field_operator_element(&coh, &coh, r, t, &consts) {
                Ok(m) => m,
                Err(e) => return CriterionReport::new(6, name, false, format!("element: {e}")),
            };
            let classical = match classical_field_at(&modes, &amps, r, t, &consts, true) {
                Ok(c) => c,
                Err(e) => return CriterionReport::new(6, name, false, format!("classical: {e}")),
            };
            let scale = classical.iter().map(|c| c.norm()).fold(0.0f64, f64::max)
                * n_avg.sqrt();
            for c in 0..3 {
                let want = classical[c] * n_avg.sqrt();
                worst_rel = worst_rel.max((mean[c] - want).norm() / scale.max(1e-300));
            }
        }
    }
    if worst_rel > 1e-6 {
        return CriterionReport::new(
            6,
            name,
            false,
            format!("mean-field deviation {worst_rel:.3e} exceeds 1e-6"),
        );
    }

    // fixed-number states have vanishing mean field
    let basis = Arc::new(FockBasis::new(2, 6));
    let one = match create_photon(basis.clone(), modes.clone(), &amps) {
        Ok(s) => s,
        Err(e) => return CriterionReport::new(6, name, false, format!("photon: {e}")),
    };
    let vac = FockState::vacuum(basis, modes).expect("vacuum");
    let mut worst_fixed = 0.0f64;
    for state in [&one, &vac] {
        for &(r, t) in &samples {
            let el = field_operator_element(state, state, r, t, &consts).expect("element");
            for c in el {
                worst_fixed = worst_fixed.max(c.norm());
            }
        }
    }
    let passed = worst_fixed < 1e-14;
    CriterionReport::new(
        6,
        name,
        passed,
        format!(
            "<N> in {{0.5, 1, 4}}, tail 1e-8, 10 space-time samples: worst mean-field \
             deviation {worst_rel:.2e} (limit 1e-6); fixed-number mean field {worst_fixed:.2e} \
             (roundoff)"
        ),
    )
}

fn criterion_7_thermal_triple_agreement() -> CriterionReport {
    let name = "occupation recursion = closed form = truncated trace";
    let si = PhysicalConstants::si();
    let temperatures = [2.7, 10.0, 30.0, 77.0, 150.0, 300.0, 600.0, 1200.0, 2500.0, 5778.0];
    let x_values = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0, 20.0];
    let mut worst_rec = 0.0f64;
    let mut worst_trace = 0.0f64;
    for &t in &temperatures {
        for &x in &x_values {
            let nu = x * si.k_b * t / si.h;
            let occ = match thermal::average_occupation(nu, t, &si) {
                Ok(o) => o,
                Err(e) => return CriterionReport::new(7, name, false, format!("occ: {e}")),
            };
            worst_rec = worst_rec
                .max(((occ.recursion - occ.closed_form) / occ.closed_form).abs());

            // truncated-trace oracle through the single-mode Fock basis
            let n_max = ((34.0 / x).ceil() as u32).clamp(8, 2000);
            let weights = match thermal::thermal_density_matrix(nu, t, n_max, 1e-13, &si) {
                Ok(w) => w,
                Err(e) => return CriterionReport::new(7, name, false, format!("rho: {e}")),
            };
            let basis = FockBasis::new(1, n_max);
            let trace: f64 = (0..basis.dim())
                .map(|i| basis.total_occupation(i) as f64 * weights[basis.occupation(i)[0] as usize])
                .sum();
            worst_trace = worst_trace.max(((trace - occ.closed_form) / occ.closed_form).abs());
        }
    }

    // Rayleigh-Jeans limit to first order: x N(x) = 1 - x/2 + O(x^2)
    let mut worst_rj = 0.0f64;
    for x in [1e-2, 1e-3] {
        let t = 300.0;
        let nu = x * si.k_b * t / si.h;
        let occ = thermal::average_occupation(nu, t, &si).expect("occ");
        worst_rj = worst_rj.max((x * occ.closed_form - (1.0 - x / 2.0)).abs() / (x * x));
    }
    // the x^2 coefficient of x N(x) is 1/12
    let passed = worst_rec < 1e-10 && worst_trace < 1e-10 && worst_rj < 0.1;
    CriterionReport::new(
        7,
        name,
        passed,
        format!(
            "10x10 (nu, T) lattice: recursion vs closed {worst_rec:.2e}, trace vs closed \
             {worst_trace:.2e} (limits 1e-10); Rayleigh-Jeans defect / x^2 = {worst_rj:.3} \
             (expect ~1/12)"
        ),
    )
}

fn criterion_8_radiometry() -> CriterionReport {
    let name = "Wien peak, CMB and solar radiometry, closed-form integrals";
    let si = PhysicalConstants::si();
    let peak = match thermal::peak_frequency(2.7, &si) {
        Ok(p) => p,
        Err(e) => return CriterionReport::new(8, name, false, format!("peak: {e}")),
    };
    let oracle = bisect(&|x: f64| 3.0 * (1.0 - (-x).exp()) - x, 2.0, 3.5);
    let coeff_ok =
        (peak.coefficient - 2.8214).abs() < 5e-5 && (peak.coefficient - oracle).abs() < 1e-6;
    let nu_ok = (peak.nu_max / 159.0e9 - 1.0).abs() < 0.01;

    let n_cmb = thermal::total_photon_density_closed(2.7, &si);
    let density_ok = (n_cmb * 1e-6 / 400.0 - 1.0).abs() < 0.01;

    let mut worst_quad = 0.0f64;
    for t in [2.7, 300.0, 5778.0] {
        let qe = thermal::total_energy_density(t, &si).expect("qe");
        let ce = thermal::total_energy_density_closed(t, &si);
        worst_quad = worst_quad.max(((qe - ce) / ce).abs());
        let qn = thermal::total_photon_density(t, &si).expect("qn");
        let cn = thermal::total_photon_density_closed(t, &si);
        worst_quad = worst_quad.max(((qn - cn) / cn).abs());
    }
    let zeta_ok = (zeta3() - 1.202_056_903_159_594_2).abs() < 1e-12;

    let ratio = thermal::total_photon_density_closed(5778.0, &si) / n_cmb;
    let ratio_ok = (ratio / 9.8e9 - 1.0).abs() < 0.02;

    let passed = coeff_ok && nu_ok && density_ok && worst_quad < 1e-8 && zeta_ok && ratio_ok;
    CriterionReport::new(
        8,
        name,
        passed,
        format!(
            "peak coefficient {:.6} (vs 2.8214 and bisection oracle); nu_max(2.7 K) = {:.2} GHz \
             (159 GHz +/- 1%); CMB {:.1} photons/cm^3 (400 +/- 1%); quadrature vs closed \
             {worst_quad:.2e} (limit 1e-8); zeta(3) ok = {zeta_ok}; solar/CMB ratio {ratio:.3e} \
             (9.8e9 +/- 2%)",
            peak.coefficient,
            peak.nu_max / 1e9,
            n_cmb * 1e-6
        ),
    )
}

fn criterion_9_photon_energy() -> CriterionReport {
    let name = "photon energy-wavelength relation";
    let si = PhysicalConstants::si();
    let e1 = match thermal::photon_energy(1.0, &si) {
        Ok(e) => e,
        Err(err) => return CriterionReport::new(9, name, false, format!("{err}")),
    };
    let rel = (e1 / 1.986e-25 - 1.0).abs();
    let passed = rel < 5e-4;
    CriterionReport::new(
        9,
        name,
        passed,
        format!("E(1 m) = {e1:.6e} J, deviation {rel:.2e} from 1.986e-25 J (limit 5e-4)"),
    )
}

fn criterion_10_bound_is_floor_not_target() -> CriterionReport {
    let name = "uncertainty bound is a floor, proximity not required";
    let consts = PhysicalConstants::natural();
    let bound = uncertainty_bound(consts.hbar);
    let grid = match MomentumGrid::cartesian_fft([48; 3], [0.3; 3]) {
        Ok(g) => g.into_shared(),
        Err(e) => return CriterionReport::new(10, name, false, format!("grid: {e}")),
    };
    // wider-band states than the main sweep, probing toward the bound
    let trials = [
        ([2.0, 0.0, 0.0], 0.35),
        ([2.5, 1.0, 0.0], 0.45),
        ([2.2, 0.0, 0.8], 0.4),
        ([3.0, 1.5, -0.5], 0.55),
    ];
    let policy = ConnectionPolicy::default();
    let mut min_ratio = f64::INFINITY;
    for (center, sigma) in trials {
        let p = match GaussianPacket::new(grid.clone(), center, sigma, C64::ONE, C64::ZERO) {
            Ok(p) => p,
            Err(e) => return CriterionReport::new(10, name, false, format!("state: {e}")),
        };
        let grad = p.gradient();
        let rep = match uncertainty_product(
            &p.state(),
            DerivativeScheme::Analytic(&grad),
            policy,
            &consts,
        ) {
            Ok(r) => r,
            Err(e) => return CriterionReport::new(10, name, false, format!("product: {e}")),
        };
        min_ratio = min_ratio.min(rep.product / bound);
    }
    // only non-violation gates this criterion; the gap above the bound is
    // reported, never asserted small
    let passed = min_ratio >= 1.0 - 1e-3;
    CriterionReport::new(
        10,
        name,
        passed,
        format!(
            "no violation across the probe family; smallest product/bound ratio = {min_ratio:.3} \
             (closeness to 1 is informational only)"
        ),
    )
}
