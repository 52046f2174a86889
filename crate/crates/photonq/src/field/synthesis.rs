//! Building classical fields from momentum-space wavefunctions: the plane
//! wave superposition
//!
//!   F(r, t) = integral d^3k/(2 pi)^{3/2} e(k) [ f+(k) e^{i k.r - i w t}
//!             + f-(k)^* e^{-i k.r + i w t} ]
//!
//! evaluated either exactly via FFT (when the momentum grid is the Fourier
//! dual of the target spatial grid) or by direct summation.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::fft::{bin_of_mode, fft3_vector, flat};
use super::polarization::polarization_vector;
use super::rs::RSField;
use super::spatial::SpatialGrid;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::momentum::PhotonWavefunctionK;

/// Options for field synthesis.
#[derive(Debug, Clone, Copy)]
pub struct SynthesisOptions {
    /// Multiply by sqrt(hbar c) so a normalized one-photon wavefunction
    /// synthesizes a field whose energy is the photon energy.
    pub quantum_scale: bool,
    /// Allow the O(N_k N_r) direct sum when the grids are not FFT-pairable.
    pub fallback_direct: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            quantum_scale: false,
            fallback_direct: true,
        }
    }
}

fn amplitude_scale(constants: &PhysicalConstants, opts: SynthesisOptions) -> f64 {
    let base = 1.0 / (2.0 * std::f64::consts::PI).powf(1.5);
    if opts.quantum_scale {
        base * (constants.hbar * constants.c).sqrt()
    } else {
        base
    }
}

/// Integer FFT lattice coordinates of the momentum grid relative to m * dk,
/// or `None` when the grid is not such a lattice.
fn fft_alignment(f: &PhotonWavefunctionK, spatial: &SpatialGrid) -> Option<[i64; 3]> {
    let lay = f.grid().cartesian_layout()?;
    if lay.n != spatial.n {
        return None;
    }
    let mut m0 = [0i64; 3];
    for a in 0..3 {
        // dual condition dk dr n = 2 pi
        let prod = lay.spacing[a] * spatial.spacing[a] * lay.n[a] as f64;
        if ((prod - 2.0 * std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).abs() > 1e-9 {
            return None;
        }
        let steps = lay.origin[a] / lay.spacing[a];
        let rounded = steps.round();
        if (steps - rounded).abs() > 1e-9 {
            return None;
        }
        m0[a] = rounded as i64;
    }
    Some(m0)
}

/// Synthesize the RS field on a spatial grid at time t.
pub fn synthesize(
    f: &PhotonWavefunctionK,
    spatial: &SpatialGrid,
    t: f64,
    constants: &PhysicalConstants,
    opts: SynthesisOptions,
) -> Result<RSField> {
    if let Some(m0) = fft_alignment(f, spatial) {
        synthesize_fft(f, spatial, t, constants, opts, m0)
    } else if opts.fallback_direct {
        synthesize_direct(f, spatial, t, constants, opts)
    } else {
        Err(Error::IncompatibleGrids(
            "momentum grid is not the Fourier dual of the spatial grid and the direct \
             fallback is disabled"
                .into(),
        ))
    }
}

fn synthesize_fft(
    f: &PhotonWavefunctionK,
    spatial: &SpatialGrid,
    t: f64,
    constants: &PhysicalConstants,
    opts: SynthesisOptions,
    m0: [i64; 3],
) -> Result<RSField> {
    let lay = f.grid().cartesian_layout().expect("checked by alignment");
    let n = lay.n;
    let total = n[0] * n[1] * n[2];
    let mut pos = vec![[C64::ZERO; 3]; total];
    let mut neg = vec![[C64::ZERO; 3]; total];
    let grid = f.grid();
    let r0 = spatial.origin;
    for i in 0..grid.len() {
        let [ix, iy, iz] = lay.lattice_coords(i);
        let k = grid.node(i);
        let e = polarization_vector(k)?;
        let omega = constants.omega((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt());
        let carrier = k[0] * r0[0] + k[1] * r0[1] + k[2] * r0[2];
        let phase = C64::from_polar(1.0, carrier - omega * t);
        let bins = [
            bin_of_mode(ix as i64 + m0[0], n[0]),
            bin_of_mode(iy as i64 + m0[1], n[1]),
            bin_of_mode(iz as i64 + m0[2], n[2]),
        ];
        let b = flat(n, bins[0], bins[1], bins[2]);
        let fp = f.f_plus()[i] * phase;
        let fm = f.f_minus()[i] * phase;
        for c in 0..3 {
            pos[b][c] = e[c] * fp;
            neg[b][c] = e[c].conj() * fm;
        }
    }
    fft3_vector(&mut pos, n, true);
    fft3_vector(&mut neg, n, true);
    let cell = lay.spacing[0] * lay.spacing[1] * lay.spacing[2];
    let scale = amplitude_scale(constants, opts) * cell;
    let values: Vec<[C64; 3]> = pos
        .iter()
        .zip(&neg)
        .map(|(p, q)| std::array::from_fn(|c| (p[c] + q[c].conj()) * scale))
        .collect();
    RSField::new(spatial.clone(), values, t)
}

fn synthesize_direct(
    f: &PhotonWavefunctionK,
    spatial: &SpatialGrid,
    t: f64,
    constants: &PhysicalConstants,
    opts: SynthesisOptions,
) -> Result<RSField> {
    let n = spatial.n;
    let terms = mode_terms(f, constants)?;
    let scale = amplitude_scale(constants, opts);
    let values: Vec<[C64; 3]> = (0..spatial.node_count())
        .into_par_iter()
        .map(|idx| {
            let [ix, iy, iz] = spatial.coords(idx);
            debug_assert_eq!(flat(n, ix, iy, iz), idx);
            let r = spatial.position(ix, iy, iz);
            eval_terms(&terms, r, t, scale)
        })
        .collect();
    RSField::new(spatial.clone(), values, t)
}

struct ModeTerm {
    k: [f64; 3],
    omega: f64,
    /// e(k) f+(k) W_k
    plus: [C64; 3],
    /// e(k) f-(k)^* W_k
    minus: [C64; 3],
}

fn mode_terms(f: &PhotonWavefunctionK, constants: &PhysicalConstants) -> Result<Vec<ModeTerm>> {
    let grid = f.grid();
    (0..grid.len())
        .map(|i| {
            let k = grid.node(i);
            let klen = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            let e = polarization_vector(k)?;
            // plain-measure weight W = w |k| from the d^3k/k weight w
            let w_plain = grid.weight(i) * klen;
            let fp = f.f_plus()[i] * w_plain;
            let fm = f.f_minus()[i].conj() * w_plain;
            Ok(ModeTerm {
                k,
                omega: constants.omega(klen),
                plus: std::array::from_fn(|c| e[c] * fp),
                minus: std::array::from_fn(|c| e[c] * fm),
            })
        })
        .collect()
}

fn eval_terms(terms: &[ModeTerm], r: [f64; 3], t: f64, scale: f64) -> [C64; 3] {
    let mut acc = [C64::ZERO; 3];
    for term in terms {
        let phase = term.k[0] * r[0] + term.k[1] * r[1] + term.k[2] * r[2] - term.omega * t;
        let pw = C64::from_polar(1.0, phase);
        let nw = pw.conj();
        for c in 0..3 {
            acc[c] += term.plus[c] * pw + term.minus[c] * nw;
        }
    }
    [acc[0] * scale, acc[1] * scale, acc[2] * scale]
}

/// Evaluate the synthesized field at arbitrary space-time samples by direct
/// summation over the momentum nodes.
pub fn synthesize_at_points(
    f: &PhotonWavefunctionK,
    samples: &[([f64; 3], f64)],
    constants: &PhysicalConstants,
    opts: SynthesisOptions,
) -> Result<Vec<[C64; 3]>> {
    let terms = mode_terms(f, constants)?;
    let scale = amplitude_scale(constants, opts);
    Ok(samples
        .iter()
        .map(|(r, t)| eval_terms(&terms, *r, *t, scale))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::{make_gaussian_state, MomentumGrid, PhotonWavefunctionK};

    fn packet_on_fft_grid() -> (PhotonWavefunctionK, SpatialGrid) {
        let grid = MomentumGrid::cartesian_fft([12; 3], [0.5; 3]).unwrap().into_shared();
        let f = make_gaussian_state(grid, [1.5, 1.0, 0.5], 0.5, C64::new(0.9, 0.1), C64::new(0.2, -0.3))
            .unwrap();
        let spatial = SpatialGrid::dual_of(f.grid(), [-1.0, 0.0, 2.0]).unwrap();
        (f, spatial)
    }

    #[test]
    fn zero_state_synthesizes_zero_field() {
        let consts = PhysicalConstants::natural();
        let grid = MomentumGrid::cartesian_fft([8; 3], [0.5; 3]).unwrap().into_shared();
        let f = PhotonWavefunctionK::zeros(grid);
        let spatial = SpatialGrid::dual_of(f.grid(), [0.0; 3]).unwrap();
        let field = synthesize(&f, &spatial, 0.3, &consts, Default::default()).unwrap();
        assert!(field.values().iter().all(|v| v == &[C64::ZERO; 3]));
    }

    #[test]
    fn fft_path_matches_direct_sum() {
        let consts = PhysicalConstants::natural();
        let (f, spatial) = packet_on_fft_grid();
        let fft_field = synthesize(&f, &spatial, 0.7, &consts, Default::default()).unwrap();
        let direct = synthesize_direct(&f, &spatial, 0.7, &consts, Default::default()).unwrap();
        let mut worst = 0.0f64;
        let scale = fft_field
            .values()
            .iter()
            .map(|v| v[0].norm() + v[1].norm() + v[2].norm())
            .fold(0.0f64, f64::max);
        for (a, b) in fft_field.values().iter().zip(direct.values()) {
            for c in 0..3 {
                worst = worst.max((a[c] - b[c]).norm());
            }
        }
        assert!(worst / scale < 1e-11, "max deviation {worst:.3e} of {scale:.3e}");
    }

    #[test]
    fn synthesized_fields_are_divergence_free() {
        let consts = PhysicalConstants::natural();
        let (f, spatial) = packet_on_fft_grid();
        let field = synthesize(&f, &spatial, 0.0, &consts, Default::default()).unwrap();
        assert!(field.divergence_residual() < 1e-10);
    }

    #[test]
    fn energy_parseval_against_momentum_quadrature() {
        let consts = PhysicalConstants::natural();
        let (f, spatial) = packet_on_fft_grid();
        let opts = SynthesisOptions {
            quantum_scale: true,
            ..Default::default()
        };
        let field = synthesize(&f, &spatial, 0.4, &consts, opts).unwrap();
        // with the sqrt(hbar c) scale the field energy is the photon energy
        // quadrature sum w hbar c |k| |f|^2
        let grid = f.grid();
        let quad: f64 = (0..grid.len())
            .map(|i| {
                let k = grid.node(i);
                let klen = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                grid.weight(i)
                    * consts.hbar
                    * consts.omega(klen)
                    * (f.f_plus()[i].norm_sqr() + f.f_minus()[i].norm_sqr())
            })
            .sum();
        let rel = ((field.energy() - quad) / quad).abs();
        assert!(rel < 1e-11, "rel = {rel:.3e}");
    }

    #[test]
    fn single_righthanded_mode_gives_circular_plane_wave() {
        // one k = k z-hat mode with f- = 0: E traces a circle, E = c|P|
        let consts = PhysicalConstants::natural();
        let grid = MomentumGrid::cartesian_fft([4, 4, 8], [0.7, 0.7, 0.5]).unwrap().into_shared();
        let mut f = PhotonWavefunctionK::zeros(grid.clone());
        // pick the node k = (0, 0, 2 dk)
        let target = grid
            .nodes()
            .iter()
            .position(|k| k[0].abs() < 1e-12 && k[1].abs() < 1e-12 && (k[2] - 1.0).abs() < 1e-12)
            .expect("mode present");
        f.components_mut().0[target] = C64::ONE;
        let spatial = SpatialGrid::dual_of(&grid, [0.0; 3]).unwrap();
        let field = synthesize(&f, &spatial, 0.0, &consts, Default::default()).unwrap();
        let energy = field.energy();
        let (p, residual) = field.momentum(&consts);
        let pmag = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        assert!(residual < 1e-12);
        assert!(((energy - consts.c * pmag) / energy).abs() < 1e-12);
        // propagation along +z
        assert!(p[2] > 0.0 && p[0].abs() < 1e-12 * p[2] && p[1].abs() < 1e-12 * p[2]);

        // the electric field at a fixed time is the real part pattern of
        // e(k)(f+ + f-) e^{ikz}; with f- = 0 its magnitude is uniform
        let (e_f, _) = field.split_fields(&consts);
        let mags: Vec<f64> = e_f.iter().map(|v| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()).collect();
        let (lo, hi) = mags
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), m| (lo.min(*m), hi.max(*m)));
        assert!((hi - lo) / hi < 1e-10, "circular wave must have uniform |E|");
    }

    #[test]
    fn incompatible_grids_error_without_fallback() {
        let consts = PhysicalConstants::natural();
        let grid = MomentumGrid::cartesian_box([2.0, 0.0, 0.0], [1.0; 3], [6; 3])
            .unwrap()
            .into_shared();
        let f = make_gaussian_state(grid, [2.0, 0.0, 0.0], 0.4, C64::ONE, C64::ZERO).unwrap();
        let spatial = SpatialGrid::new([0.0; 3], [0.3; 3], [6; 3], true).unwrap();
        let opts = SynthesisOptions {
            fallback_direct: false,
            ..Default::default()
        };
        assert!(matches!(
            synthesize(&f, &spatial, 0.0, &consts, opts),
            Err(Error::IncompatibleGrids(_))
        ));
        // with the fallback the same call succeeds
        let ok = synthesize(&f, &spatial, 0.0, &consts, Default::default());
        assert!(ok.is_ok());
    }
}
