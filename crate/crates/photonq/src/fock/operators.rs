//! Matrix-free ladder operators on the truncated basis, commutator checks,
//! normalizable-photon creation, field-operator matrix elements, and the
//! Hamiltonian / number expectations.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::basis::{FockBasis, FockState};
use super::modes::ModeSet;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::field::polarization_vector;
use crate::momentum::Helicity;

/// b_i |n> = sqrt(n_i) |n - e_i>; the unit-commutator lowering operator.
pub fn apply_lower(state: &FockState, mode: usize) -> Result<FockState> {
    check_mode(state, mode)?;
    let basis = state.basis();
    let mut out = vec![C64::ZERO; basis.dim()];
    let mut occ = Vec::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp == &C64::ZERO {
            continue;
        }
        let n = basis.occupation(i);
        if n[mode] == 0 {
            continue;
        }
        occ.clear();
        occ.extend_from_slice(n);
        occ[mode] -= 1;
        let j = basis.position(&occ).expect("lowering stays in the basis");
        out[j] += amp * (n[mode] as f64).sqrt();
    }
    FockState::new(basis.clone(), state.modes().clone(), out)
}

/// b_i^dagger |n> = sqrt(n_i + 1) |n + e_i>, truncated at sum n = n_max.
pub fn apply_raise(state: &FockState, mode: usize) -> Result<FockState> {
    check_mode(state, mode)?;
    let basis = state.basis();
    let mut out = vec![C64::ZERO; basis.dim()];
    let mut occ = Vec::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp == &C64::ZERO {
            continue;
        }
        let n = basis.occupation(i);
        if basis.total_occupation(i) >= basis.n_max() {
            continue; // raising out of the truncated space annihilates
        }
        occ.clear();
        occ.extend_from_slice(n);
        occ[mode] += 1;
        let j = basis.position(&occ).expect("raising within budget stays in the basis");
        out[j] += amp * ((n[mode] + 1) as f64).sqrt();
    }
    FockState::new(basis.clone(), state.modes().clone(), out)
}

fn check_mode(state: &FockState, mode: usize) -> Result<()> {
    if mode >= state.modes().len() {
        return Err(Error::InvalidParameter(format!(
            "mode index {mode} out of range ({} modes)",
            state.modes().len()
        )));
    }
    Ok(())
}

/// The unnormalized continuum-convention operators a_i = sqrt(kappa_i) b_i.
pub fn apply_annihilate(state: &FockState, mode: usize) -> Result<FockState> {
    let mut s = apply_lower(state, mode)?;
    let k = state.modes().kappa(mode).sqrt();
    for a in s.amplitudes_mut() {
        *a *= k;
    }
    Ok(s)
}

pub fn apply_create(state: &FockState, mode: usize) -> Result<FockState> {
    let mut s = apply_raise(state, mode)?;
    let k = state.modes().kappa(mode).sqrt();
    for a in s.amplitudes_mut() {
        *a *= k;
    }
    Ok(s)
}

/// Measure [a_i, a_j^dagger] on the guarded subspace (total occupation
/// < n_max): verifies the matrix is kappa_i delta_ij times the identity
/// there and returns that scalar.
pub fn commutator_check(
    basis: &Arc<FockBasis>,
    modes: &Arc<ModeSet>,
    i: usize,
    j: usize,
) -> Result<C64> {
    if i >= modes.len() || j >= modes.len() {
        return Err(Error::InvalidParameter("mode index out of range".into()));
    }
    let expected = if i == j {
        C64::new(modes.kappa(i), 0.0)
    } else {
        C64::ZERO
    };
    let mut measured: Option<C64> = None;
    for b in 0..basis.dim() {
        if basis.total_occupation(b) >= basis.n_max() {
            continue;
        }
        let mut unit = FockState::new(
            basis.clone(),
            modes.clone(),
            vec![C64::ZERO; basis.dim()],
        )?;
        unit.amplitudes_mut()[b] = C64::ONE;
        let forward = apply_annihilate(&apply_create(&unit, j)?, i)?;
        let backward = apply_create(&apply_annihilate(&unit, i)?, j)?;
        for idx in 0..basis.dim() {
            let diff = forward.amplitudes()[idx] - backward.amplitudes()[idx];
            let want = if idx == b { expected } else { C64::ZERO };
            if (diff - want).norm() > 1e-12 * modes.kappa(i).max(modes.kappa(j)) {
                return Err(Error::InvalidParameter(format!(
                    "commutator defect at basis state {b}: got {diff}, want {want}"
                )));
            }
            if idx == b {
                measured = Some(match measured {
                    None => diff,
                    Some(prev) => {
                        if (prev - diff).norm() > 1e-12 * (1.0 + prev.norm()) {
                            return Err(Error::InvalidParameter(
                                "commutator is not proportional to the identity".into(),
                            ));
                        }
                        prev
                    }
                });
            }
        }
    }
    Ok(measured.unwrap_or(expected))
}

/// a_f^dagger = sum_lambda integral d^3k/k f(k, lambda) a^dagger(k, lambda)
/// as a weighted sum over the mode set: sum_i w_i f_i a_i^dagger
/// = sum_i sqrt(w_i) f_i b_i^dagger.
pub fn apply_create_wavepacket(state: &FockState, amplitudes: &[C64]) -> Result<FockState> {
    if amplitudes.len() != state.modes().len() {
        return Err(Error::ModeSetMismatch(
            "wavepacket amplitude count does not match mode set".into(),
        ));
    }
    let mut acc = FockState::new(
        state.basis().clone(),
        state.modes().clone(),
        vec![C64::ZERO; state.basis().dim()],
    )?;
    for (i, f_i) in amplitudes.iter().enumerate() {
        if f_i == &C64::ZERO {
            continue;
        }
        let raised = apply_raise(state, i)?;
        let coeff = f_i * state.modes().mode(i).weight.sqrt();
        for (a, r) in acc.amplitudes_mut().iter_mut().zip(raised.amplitudes()) {
            *a += coeff * r;
        }
    }
    Ok(acc)
}

/// Adjoint of [`apply_create_wavepacket`]: a_f = sum_i sqrt(w_i) f_i^* b_i.
pub fn apply_annihilate_wavepacket(state: &FockState, amplitudes: &[C64]) -> Result<FockState> {
    if amplitudes.len() != state.modes().len() {
        return Err(Error::ModeSetMismatch(
            "wavepacket amplitude count does not match mode set".into(),
        ));
    }
    let mut acc = FockState::new(
        state.basis().clone(),
        state.modes().clone(),
        vec![C64::ZERO; state.basis().dim()],
    )?;
    for (i, f_i) in amplitudes.iter().enumerate() {
        if f_i == &C64::ZERO {
            continue;
        }
        let lowered = apply_lower(state, i)?;
        let coeff = f_i.conj() * state.modes().mode(i).weight.sqrt();
        for (a, l) in acc.amplitudes_mut().iter_mut().zip(lowered.amplitudes()) {
            *a += coeff * l;
        }
    }
    Ok(acc)
}

/// One-photon state a_f^dagger |0> from a normalized mode-amplitude vector.
pub fn create_photon(
    basis: Arc<FockBasis>,
    modes: Arc<ModeSet>,
    amplitudes: &[C64],
) -> Result<FockState> {
    let n2 = modes.amplitude_norm_sq(amplitudes);
    if (n2 - 1.0).abs() > 1e-8 {
        return Err(Error::Unnormalized((n2 - 1.0).abs()));
    }
    if basis.n_max() < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let vac = FockState::vacuum(basis, modes)?;
    apply_create_wavepacket(&vac, amplitudes)
}

/// Matrix element <bra| F(r, t) |ket> of the field operator
///   F(r, t) = sqrt(hbar c) sum_i W_i/(2 pi)^{3/2} e(k_i)
///             [ a_i^{(+)} e^{i k.r - i w t} + a_i^dagger{(-)} e^{-i k.r + i w t} ],
/// where annihilators act on righthanded modes and creators on lefthanded
/// ones.
pub fn field_operator_element(
    bra: &FockState,
    ket: &FockState,
    r: [f64; 3],
    t: f64,
    constants: &PhysicalConstants,
) -> Result<[C64; 3]> {
    bra.check_compatible(ket)?;
    let modes = ket.modes();
    let scale = (constants.hbar * constants.c).sqrt() / (2.0 * std::f64::consts::PI).powf(1.5);
    let mut out = [C64::ZERO; 3];
    for i in 0..modes.len() {
        let m = modes.mode(i);
        let e = polarization_vector(m.k)?;
        let omega = constants.omega(m.k_len());
        let phase = m.k[0] * r[0] + m.k[1] * r[1] + m.k[2] * r[2] - omega * t;
        // sum W a^{..} with a = sqrt(kappa) b and W sqrt(kappa) = sqrt(W |k|) ... ;
        // combined: W_i a_i = sqrt(w_i) |k_i| ... keep it explicit:
        let coeff = m.plain_weight() * modes.kappa(i).sqrt() * scale;
        match m.helicity {
            Helicity::Plus => {
                let lowered = apply_lower(ket, i)?;
                let amp = bra.inner_product(&lowered)? * C64::from_polar(coeff, phase);
                for c in 0..3 {
                    out[c] += e[c] * amp;
                }
            }
            Helicity::Minus => {
                let raised = apply_raise(ket, i)?;
                let amp = bra.inner_product(&raised)? * C64::from_polar(coeff, -phase);
                for c in 0..3 {
                    out[c] += e[c] * amp;
                }
            }
        }
    }
    Ok(out)
}

/// The classical field of Eq-style plane-wave synthesis restricted to the
/// mode set, for comparison against mean fields of quantum states. The
/// `quantum_scale` flag multiplies by sqrt(hbar c) exactly like the field
/// operator.
pub fn classical_field_at(
    modes: &ModeSet,
    amplitudes: &[C64],
    r: [f64; 3],
    t: f64,
    constants: &PhysicalConstants,
    quantum_scale: bool,
) -> Result<[C64; 3]> {
    if amplitudes.len() != modes.len() {
        return Err(Error::ModeSetMismatch(
            "amplitude count does not match mode set".into(),
        ));
    }
    let mut scale = 1.0 / (2.0 * std::f64::consts::PI).powf(1.5);
    if quantum_scale {
        scale *= (constants.hbar * constants.c).sqrt();
    }
    let mut out = [C64::ZERO; 3];
    for (i, f_i) in amplitudes.iter().enumerate() {
        let m = modes.mode(i);
        let e = polarization_vector(m.k)?;
        let omega = constants.omega(m.k_len());
        let phase = m.k[0] * r[0] + m.k[1] * r[1] + m.k[2] * r[2] - omega * t;
        let w = m.plain_weight() * scale;
        match m.helicity {
            Helicity::Plus => {
                let amp = f_i * C64::from_polar(w, phase);
                for c in 0..3 {
                    out[c] += e[c] * amp;
                }
            }
            Helicity::Minus => {
                let amp = f_i.conj() * C64::from_polar(w, -phase);
                for c in 0..3 {
                    out[c] += e[c] * amp;
                }
            }
        }
    }
    Ok(out)
}

/// <H> = sum_i hbar omega_i <b_i^dagger b_i>: the number-operator form with
/// no vacuum term.
pub fn hamiltonian_expectation(state: &FockState, constants: &PhysicalConstants) -> f64 {
    let basis = state.basis();
    let modes = state.modes();
    let mut acc = 0.0;
    for (b, amp) in state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr();
        if w == 0.0 {
            continue;
        }
        let occ = basis.occupation(b);
        for i in 0..modes.len() {
            acc += w * occ[i] as f64 * constants.hbar * constants.omega(modes.mode(i).k_len());
        }
    }
    acc
}

/// <N> = sum_i <b_i^dagger b_i>.
pub fn number_expectation(state: &FockState) -> f64 {
    let basis = state.basis();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, amp)| amp.norm_sqr() * basis.total_occupation(b) as f64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::MomentumGrid;

    fn setup(n_max: u32) -> (Arc<FockBasis>, Arc<ModeSet>) {
        let grid = MomentumGrid::cartesian_box([2.0, 1.0, 0.5], [1.5; 3], [4; 3])
            .unwrap()
            .into_shared();
        let modes = Arc::new(
            ModeSet::from_grid(&grid, &[(5, Helicity::Plus), (20, Helicity::Plus)]).unwrap(),
        );
        (Arc::new(FockBasis::new(2, n_max)), modes)
    }

    #[test]
    fn ladder_algebra_on_basis_states() {
        let (basis, modes) = setup(4);
        let vac = FockState::vacuum(basis.clone(), modes.clone()).unwrap();
        let one = apply_raise(&vac, 0).unwrap();
        assert!((one.norm_sq() - 1.0).abs() < 1e-14);
        let two = apply_raise(&one, 0).unwrap();
        assert!((two.norm_sq() - 2.0).abs() < 1e-14); // sqrt(2)^2
        let back = apply_lower(&two, 0).unwrap();
        // b b^dagger^2 |0> = 2 b^dagger |0>
        let overlap = back.inner_product(&one).unwrap();
        assert!((overlap.re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn commutators_are_kappa_on_diagonal_zero_off() {
        let (basis, modes) = setup(5);
        let diag = commutator_check(&basis, &modes, 0, 0).unwrap();
        assert!((diag.re - modes.kappa(0)).abs() < 1e-12 * modes.kappa(0));
        assert!(diag.im == 0.0);
        let off = commutator_check(&basis, &modes, 0, 1).unwrap();
        assert_eq!(off, C64::ZERO);
    }

    #[test]
    fn wavepacket_commutator_is_state_norm() {
        // [a_f, a_f^dagger] = <f|f> = 1 for normalized mode amplitudes
        let (basis, modes) = setup(4);
        let raw = [C64::new(0.7, 0.2), C64::new(-0.4, 0.5)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();
        let vac = FockState::vacuum(basis, modes).unwrap();
        let created = apply_create_wavepacket(&vac, &amps).unwrap();
        let down_up = apply_annihilate_wavepacket(&created, &amps).unwrap();
        // a_f a_f^dagger |0> = [a_f, a_f^dagger] |0> = |0>
        let overlap = vac.inner_product(&down_up).unwrap();
        assert!((overlap.re - 1.0).abs() < 1e-12, "got {overlap}");
    }

    #[test]
    fn create_photon_requires_normalization() {
        let (basis, modes) = setup(3);
        let bad = [C64::ONE, C64::ONE];
        assert!(matches!(
            create_photon(basis.clone(), modes.clone(), &bad),
            Err(Error::Unnormalized(_))
        ));
    }

    #[test]
    fn single_photon_properties() {
        let (basis, modes) = setup(3);
        let raw = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();
        let photon = create_photon(basis, modes, &amps).unwrap();
        assert!((photon.norm_sq() - 1.0).abs() < 1e-12);
        assert!((number_expectation(&photon) - 1.0).abs() < 1e-12);
        let consts = PhysicalConstants::natural();
        let energy = hamiltonian_expectation(&photon, &consts);
        assert!(energy > 0.0);
    }

    #[test]
    fn one_mode_photon_is_number_state() {
        let (basis, modes) = setup(3);
        let w0 = modes.mode(0).weight;
        let amps = [C64::new(1.0 / w0.sqrt(), 0.0), C64::ZERO];
        let photon = create_photon(basis.clone(), modes.clone(), &amps).unwrap();
        // amplitude concentrated on occupation (1, 0)
        let idx = basis.position(&[1, 0]).unwrap();
        assert!((photon.amplitudes()[idx].norm() - 1.0).abs() < 1e-12);
        // monochromatic photon energy = hbar omega of that mode
        let consts = PhysicalConstants::natural();
        let e = hamiltonian_expectation(&photon, &consts);
        let expect = consts.hbar * consts.omega(modes.mode(0).k_len());
        assert!((e - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn photon_overlaps_reproduce_mode_inner_products() {
        let (basis, modes) = setup(3);
        let normalize = |raw: [C64; 2]| -> Vec<C64> {
            let n2 = modes.amplitude_norm_sq(&raw);
            raw.iter().map(|a| a / n2.sqrt()).collect()
        };
        let fa = normalize([C64::new(0.8, 0.1), C64::new(0.2, -0.3)]);
        let fb = normalize([C64::new(-0.1, 0.6), C64::new(0.7, 0.2)]);
        let pa = create_photon(basis.clone(), modes.clone(), &fa).unwrap();
        let pb = create_photon(basis, modes.clone(), &fb).unwrap();
        let fock_side = pa.inner_product(&pb).unwrap();
        let mode_side: C64 = (0..modes.len())
            .map(|i| modes.mode(i).weight * fa[i].conj() * fb[i])
            .sum();
        assert!((fock_side - mode_side).norm() < 1e-12);
    }

    #[test]
    fn vacuum_mean_field_vanishes() {
        let (basis, modes) = setup(3);
        let consts = PhysicalConstants::natural();
        let vac = FockState::vacuum(basis, modes).unwrap();
        let el = field_operator_element(&vac, &vac, [0.3, -0.2, 1.0], 0.7, &consts).unwrap();
        for c in el {
            assert_eq!(c, C64::ZERO);
        }
    }

    #[test]
    fn fixed_number_state_mean_field_vanishes() {
        let (basis, modes) = setup(4);
        let consts = PhysicalConstants::natural();
        let raw = [C64::new(0.5, 0.5), C64::new(0.3, -0.1)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();
        let one = create_photon(basis.clone(), modes, &amps).unwrap();
        let el = field_operator_element(&one, &one, [1.0, 2.0, -0.5], 0.3, &consts).unwrap();
        for c in el {
            assert!(c.norm() < 1e-15);
        }
    }

    #[test]
    fn one_photon_matrix_element_matches_classical_positive_branch() {
        // <0| F a_f^dagger |0> equals the positive-frequency classical field
        // built from f (times sqrt(hbar c))
        let (basis, modes) = setup(4);
        let consts = PhysicalConstants::natural();
        let raw = [C64::new(0.9, -0.2), C64::new(0.1, 0.4)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();
        let vac = FockState::vacuum(basis.clone(), modes.clone()).unwrap();
        let photon = create_photon(basis, modes.clone(), &amps).unwrap();
        let r = [0.4, 1.3, -0.7];
        let t = 0.25;
        let element = field_operator_element(&vac, &photon, r, t, &consts).unwrap();
        let classical = classical_field_at(&modes, &amps, r, t, &consts, true).unwrap();
        for c in 0..3 {
            assert!(
                (element[c] - classical[c]).norm() < 1e-12,
                "component {c}: {} vs {}",
                element[c],
                classical[c]
            );
        }
    }
}
