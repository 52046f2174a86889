//! Coherent states: Poisson-weighted superpositions of n-fold identical
//! photons, whose mean field is the classical field times sqrt(<N> hbar c).

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::basis::{FockBasis, FockState};
use super::modes::ModeSet;
use super::operators::apply_create_wavepacket;
use crate::error::{Error, Result};

/// Poisson tail beyond n_max: P(N > n_max) for mean mu.
pub fn poisson_tail(mu: f64, n_max: u32) -> f64 {
    if mu == 0.0 {
        return 0.0;
    }
    // sum the retained head in stable ascending order, tail = 1 - head
    let mut term = (-mu).exp();
    let mut head = term;
    for n in 1..=n_max {
        term *= mu / n as f64;
        head += term;
    }
    (1.0 - head).max(0.0)
}

/// Smallest n_max with Poisson tail below eps.
pub fn n_max_for_tail(mu: f64, eps: f64) -> u32 {
    let mut n = mu.ceil() as u32 + 1;
    while poisson_tail(mu, n) > eps {
        n += 1;
        if n > 100_000 {
            break;
        }
    }
    n
}

/// Build the coherent state exp(-<N>/2) exp(sqrt(<N>) a_f^dagger) |0> over
/// the truncated basis. `amplitudes` must be normalized mode amplitudes; the
/// Poisson tail beyond the basis cutoff must be below `tail_eps`.
pub fn coherent_state(
    basis: Arc<FockBasis>,
    modes: Arc<ModeSet>,
    amplitudes: &[C64],
    n_avg: f64,
    tail_eps: f64,
) -> Result<FockState> {
    if n_avg < 0.0 {
        return Err(Error::InvalidParameter("<N> must be nonnegative".into()));
    }
    if n_avg > 0.0 {
        let n2 = modes.amplitude_norm_sq(amplitudes);
        if (n2 - 1.0).abs() > 1e-8 {
            return Err(Error::Unnormalized((n2 - 1.0).abs()));
        }
    }
    let tail = poisson_tail(n_avg, basis.n_max());
    if tail > tail_eps {
        return Err(Error::TruncationTail {
            tail,
            tol: tail_eps,
        });
    }

    let vacuum = FockState::vacuum(basis.clone(), modes.clone())?;
    let mut state = FockState::new(basis.clone(), modes, vec![C64::ZERO; basis.dim()])?;

    // c_n = e^{-mu/2} mu^{n/2} / sqrt(n!) on the n-fold normalized sector
    // |n>_f = (a_f^dagger)^n |0> / sqrt(n!)
    let mut sector = vacuum;
    let mut coeff = (-n_avg / 2.0).exp();
    for n in 0..=basis.n_max() {
        if n > 0 {
            sector = apply_create_wavepacket(&sector, amplitudes)?;
            let scale = 1.0 / (n as f64).sqrt();
            for a in sector.amplitudes_mut() {
                *a *= scale;
            }
            coeff *= (n_avg / n as f64).sqrt();
        }
        for (s, v) in state.amplitudes_mut().iter_mut().zip(sector.amplitudes()) {
            *s += v * coeff;
        }
        if n_avg == 0.0 {
            break;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::fock::operators::{
        classical_field_at, field_operator_element, number_expectation,
    };
    use crate::momentum::{Helicity, MomentumGrid};

    fn setup(n_max: u32) -> (Arc<FockBasis>, Arc<ModeSet>, Vec<C64>) {
        let grid = MomentumGrid::cartesian_box([2.0, 0.5, 1.0], [1.5; 3], [4; 3])
            .unwrap()
            .into_shared();
        let modes = Arc::new(
            ModeSet::from_grid(&grid, &[(7, Helicity::Plus), (22, Helicity::Plus)]).unwrap(),
        );
        let raw = [C64::new(0.8, 0.3), C64::new(-0.2, 0.6)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps = raw.iter().map(|a| a / n2.sqrt()).collect();
        (Arc::new(FockBasis::new(2, n_max)), modes, amps)
    }

    #[test]
    fn zero_mean_is_vacuum() {
        let (basis, modes, amps) = setup(4);
        let consts = PhysicalConstants::natural();
        let coh = coherent_state(basis.clone(), modes.clone(), &amps, 0.0, 1e-8).unwrap();
        let vac = FockState::vacuum(basis, modes).unwrap();
        let overlap = coh.inner_product(&vac).unwrap();
        assert!((overlap.re - 1.0).abs() < 1e-14);
        let el = field_operator_element(&coh, &coh, [0.1, 0.2, 0.3], 0.0, &consts).unwrap();
        for c in el {
            assert!(c.norm() < 1e-15);
        }
    }

    #[test]
    fn poisson_number_statistics() {
        let (basis, modes, amps) = setup(26);
        let mu = 1.0;
        let coh = coherent_state(basis, modes, &amps, mu, 1e-8).unwrap();
        let dist = coh.number_distribution();
        // P(n) = e^{-mu} mu^n / n!
        let mut expect = (-mu).exp();
        for (n, p) in dist.iter().enumerate().take(8) {
            if n > 0 {
                expect *= mu / n as f64;
            }
            assert!(
                (p - expect).abs() < 1e-10,
                "P({n}) = {p}, poisson = {expect}"
            );
        }
        // amplitude ratio |c2 / c1| = sqrt(mu / 2) = 1/sqrt(2) at mu = 1
        let ratio = (dist[2] / dist[1]).sqrt();
        assert!((ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((number_expectation(&coh) - mu).abs() < 1e-7);
    }

    #[test]
    fn mean_field_equals_scaled_classical_field() {
        let (basis, modes, amps) = setup(30);
        let consts = PhysicalConstants::natural();
        let mu = 2.5;
        let coh = coherent_state(basis, modes.clone(), &amps, mu, 1e-8).unwrap();
        let samples = [
            ([0.0, 0.0, 0.0], 0.0),
            ([1.2, -0.4, 0.8], 0.3),
            ([-2.0, 1.5, 0.2], 1.1),
        ];
        for (r, t) in samples {
            let mean = field_operator_element(&coh, &coh, r, t, &consts).unwrap();
            let classical = classical_field_at(&modes, &amps, r, t, &consts, true).unwrap();
            for c in 0..3 {
                let want = classical[c] * mu.sqrt();
                assert!(
                    (mean[c] - want).norm() < 1e-6 * want.norm().max(1e-12),
                    "at {r:?}, t={t}: {} vs {}",
                    mean[c],
                    want
                );
            }
        }
    }

    #[test]
    fn insufficient_truncation_is_an_error() {
        let (basis, modes, amps) = setup(4);
        assert!(matches!(
            coherent_state(basis, modes, &amps, 4.0, 1e-8),
            Err(Error::TruncationTail { .. })
        ));
    }

    #[test]
    fn tail_helper_is_monotone() {
        assert!(poisson_tail(2.0, 5) > poisson_tail(2.0, 10));
        let n = n_max_for_tail(4.0, 1e-8);
        assert!(poisson_tail(4.0, n) <= 1e-8);
        assert!(poisson_tail(4.0, n.saturating_sub(2)) > 1e-8);
    }
}
