//! Spectral time evolution of the RS field. In Fourier space each mode is
//! rotated about its own wave vector by the angle c |k| dt; single-helicity
//! transverse modes reduce to phase factors e^{-/+ i omega dt}, and the
//! rotation is exactly norm-preserving, so energy and momentum are conserved
//! to roundoff.

use num_complex::Complex64 as C64;

use super::fft::{fft3_vector, flat};
use super::rs::RSField;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Spectral observables sampled during a run.
#[derive(Debug, Clone, Copy)]
pub struct StepObservables {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub momentum: [f64; 3],
}

/// One evolution step of size dt.
pub fn evolve(field: &RSField, dt: f64, constants: &PhysicalConstants) -> Result<RSField> {
    evolve_n(field, dt, 1, constants, |_| {})
}

/// `steps` evolution steps of size dt, staying in Fourier space between
/// steps. The observer receives spectrally evaluated energy and momentum
/// after every step.
pub fn evolve_n<F: FnMut(StepObservables)>(
    field: &RSField,
    dt: f64,
    steps: usize,
    constants: &PhysicalConstants,
    mut observer: F,
) -> Result<RSField> {
    let grid = field.grid();
    if !grid.periodic {
        return Err(Error::InvalidParameter(
            "spectral evolution requires a periodic spatial grid".into(),
        ));
    }
    let n = grid.n;
    let total = grid.node_count() as f64;
    let mut modes = field.values().to_vec();
    fft3_vector(&mut modes, n, false);

    // precompute unit axes and rotation angles per mode
    let mut axes = vec![[0.0f64; 3]; modes.len()];
    let mut angles = vec![0.0f64; modes.len()];
    for ix in 0..n[0] {
        for iy in 0..n[1] {
            for iz in 0..n[2] {
                let idx = flat(n, ix, iy, iz);
                let k = grid.mode_wavevector([ix, iy, iz]);
                let len = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                if len > 0.0 {
                    axes[idx] = [k[0] / len, k[1] / len, k[2] / len];
                    angles[idx] = constants.c * len * dt;
                }
            }
        }
    }

    let dv = grid.cell_volume();
    for step in 1..=steps {
        for i in 0..modes.len() {
            if angles[i] != 0.0 {
                modes[i] = rotate(modes[i], axes[i], angles[i]);
            }
        }
        let (energy, momentum) = spectral_invariants(&modes, dv, total, constants);
        observer(StepObservables {
            step,
            time: field.time() + step as f64 * dt,
            energy,
            momentum,
        });
    }

    fft3_vector(&mut modes, n, true);
    let scale = 1.0 / total;
    for v in &mut modes {
        for c in v.iter_mut() {
            *c *= scale;
        }
    }
    let mut out = RSField::new(grid.clone(), modes, 0.0)?;
    out.set_time(field.time() + steps as f64 * dt);
    Ok(out)
}

/// Rotate a complex vector about a real unit axis: the evolution operator
/// exp(-i c (s.k) dt) acts on each Fourier mode as this rotation.
fn rotate(v: [C64; 3], axis: [f64; 3], angle: f64) -> [C64; 3] {
    let (sin_t, cos_t) = angle.sin_cos();
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    let dot = v[0] * axis[0] + v[1] * axis[1] + v[2] * axis[2];
    std::array::from_fn(|i| v[i] * cos_t + cross[i] * sin_t + dot * axis[i] * (1.0 - cos_t))
}

/// Energy and momentum from Fourier modes via Parseval.
fn spectral_invariants(
    modes: &[[C64; 3]],
    dv: f64,
    total: f64,
    constants: &PhysicalConstants,
) -> (f64, [f64; 3]) {
    let mut e = 0.0;
    let mut p = [C64::ZERO; 3];
    for v in modes {
        e += v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr();
        let conj = [v[0].conj(), v[1].conj(), v[2].conj()];
        p[0] += conj[1] * v[2] - conj[2] * v[1];
        p[1] += conj[2] * v[0] - conj[0] * v[2];
        p[2] += conj[0] * v[1] - conj[1] * v[0];
    }
    let norm = dv / total;
    let scale = -C64::I * norm / constants.c;
    (
        e * norm,
        [(scale * p[0]).re, (scale * p[1]).re, (scale * p[2]).re],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::spatial::SpatialGrid;
    use crate::field::synthesis::{synthesize, SynthesisOptions};
    use crate::momentum::{make_gaussian_state, MomentumGrid, PhotonWavefunctionK};

    fn wave_packet() -> RSField {
        let consts = PhysicalConstants::natural();
        let grid = MomentumGrid::cartesian_fft([12; 3], [0.5; 3]).unwrap().into_shared();
        let f = make_gaussian_state(grid, [1.5, 0.5, 1.0], 0.45, C64::ONE, C64::new(0.2, 0.4))
            .unwrap();
        let spatial = SpatialGrid::dual_of(f.grid(), [0.0; 3]).unwrap();
        synthesize(&f, &spatial, 0.0, &consts, SynthesisOptions::default()).unwrap()
    }

    #[test]
    fn zero_time_step_is_identity() {
        let consts = PhysicalConstants::natural();
        let field = wave_packet();
        let evolved = evolve(&field, 0.0, &consts).unwrap();
        for (a, b) in field.values().iter().zip(evolved.values()) {
            for c in 0..3 {
                assert!((a[c] - b[c]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn monochromatic_righthanded_mode_picks_up_global_phase() {
        let consts = PhysicalConstants::natural();
        let grid = MomentumGrid::cartesian_fft([4, 4, 8], [0.7, 0.7, 0.5]).unwrap().into_shared();
        let mut f = PhotonWavefunctionK::zeros(grid.clone());
        let target = grid
            .nodes()
            .iter()
            .position(|k| k[0].abs() < 1e-12 && k[1].abs() < 1e-12 && (k[2] - 1.5).abs() < 1e-12)
            .unwrap();
        f.components_mut().0[target] = C64::ONE;
        let spatial = SpatialGrid::dual_of(&grid, [0.0; 3]).unwrap();
        let field = synthesize(&f, &spatial, 0.0, &consts, Default::default()).unwrap();
        let dt = 0.37;
        let evolved = evolve(&field, dt, &consts).unwrap();
        let omega = consts.c * 1.5;
        let phase = C64::from_polar(1.0, -omega * dt);
        for (a, b) in field.values().iter().zip(evolved.values()) {
            for c in 0..3 {
                assert!((a[c] * phase - b[c]).norm() < 1e-12 * a[c].norm().max(1e-12));
            }
        }
    }

    #[test]
    fn energy_and_momentum_conserved_over_many_steps() {
        let consts = PhysicalConstants::natural();
        let field = wave_packet();
        let e0 = field.energy();
        let (p0, _) = field.momentum(&consts);
        let mut drift: f64 = 0.0;
        let evolved = evolve_n(&field, 0.05, 200, &consts, |obs| {
            let de = ((obs.energy - e0) / e0).abs();
            drift = drift.max(de);
        })
        .unwrap();
        assert!(drift < 1e-12, "spectral energy drift {drift:.3e}");
        let e1 = evolved.energy();
        let (p1, _) = evolved.momentum(&consts);
        assert!(((e1 - e0) / e0).abs() < 1e-11);
        let pmag = (p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]).sqrt();
        let dp = ((p1[0] - p0[0]).powi(2) + (p1[1] - p0[1]).powi(2) + (p1[2] - p0[2]).powi(2))
            .sqrt();
        assert!(dp / pmag < 1e-11, "momentum drift {:.3e}", dp / pmag);
    }

    #[test]
    fn maxwell_residual_shrinks_quadratically_in_dt() {
        // i dF/dt = c curl F: compare the centered time derivative of the
        // evolved field against the spectral curl.
        let consts = PhysicalConstants::natural();
        let field = wave_packet();
        let curl = field.spectral_curl().unwrap();
        let residual = |dt: f64| -> f64 {
            let plus = evolve(&field, dt, &consts).unwrap();
            let minus = evolve(&field, -dt, &consts).unwrap();
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..field.values().len() {
                for c in 0..3 {
                    let ddt = (plus.values()[i][c] - minus.values()[i][c]) / (2.0 * dt);
                    let r = C64::I * ddt - consts.c * curl.values()[i][c];
                    num += r.norm_sqr();
                    den += (consts.c * curl.values()[i][c]).norm_sqr();
                }
            }
            (num / den).sqrt()
        };
        let r1 = residual(0.02);
        let r2 = residual(0.01);
        assert!(r1 < 1e-3);
        let ratio = r1 / r2;
        assert!((3.0..5.0).contains(&ratio), "expected O(dt^2): {r1:.3e} / {r2:.3e}");
    }

    #[test]
    fn non_periodic_grid_rejected() {
        let consts = PhysicalConstants::natural();
        let grid = SpatialGrid::new([0.0; 3], [0.5; 3], [4; 3], false).unwrap();
        let field = RSField::zeros(grid, 0.0);
        assert!(evolve(&field, 0.1, &consts).is_err());
    }
}
