//! Property tests for the Hilbert-space structure and the serialization
//! round trips.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use photonq::constants::PhysicalConstants;
use photonq::momentum::{io, MomentumGrid, PhotonWavefunctionK, StokesVector};

fn small_grid() -> Arc<MomentumGrid> {
    MomentumGrid::cartesian_box([2.0, -1.0, 0.5], [1.5; 3], [4, 3, 4])
        .unwrap()
        .into_shared()
}

fn amplitude() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn state(grid: Arc<MomentumGrid>) -> impl Strategy<Value = PhotonWavefunctionK> {
    let n = grid.len();
    (
        proptest::collection::vec(amplitude(), n),
        proptest::collection::vec(amplitude(), n),
    )
        .prop_map(move |(p, m)| PhotonWavefunctionK::new(grid.clone(), p, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_conjugate_symmetric_and_sesquilinear(
        f in state(small_grid()),
        g in state(small_grid()),
        h in state(small_grid()),
        a in amplitude(),
        b in amplitude(),
    ) {
        // conjugate symmetry
        let fg = f.inner_product(&g).unwrap();
        let gf = g.inner_product(&f).unwrap();
        prop_assert!((fg - gf.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));

        // linearity in the second argument: <f | a g + b h> = a <f|g> + b <f|h>
        let combo = {
            let mut s = g.scaled(a);
            let hb = h.scaled(b);
            let (p, m) = s.components_mut();
            for i in 0..p.len() {
                p[i] += hb.f_plus()[i];
                m[i] += hb.f_minus()[i];
            }
            s
        };
        let lhs = f.inner_product(&combo).unwrap();
        let rhs = a * fg + b * f.inner_product(&h).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));

        // norm positivity for nonzero states
        if f.f_plus().iter().chain(f.f_minus()).any(|v| v.norm() > 1e-6) {
            prop_assert!(f.norm_sq() > 0.0);
        }
    }

    #[test]
    fn stokes_identity_holds_for_every_pure_amplitude(fp in amplitude(), fm in amplitude()) {
        let s = StokesVector::from_amplitudes(fp, fm);
        prop_assert!(s.s0 >= 0.0);
        // S0^2 = S1^2 + S2^2 + S3^2 to roundoff
        prop_assert!(s.purity_defect().abs() <= 8.0 * f64::EPSILON * (1.0 + s.s0 * s.s0));
        // integrated S0 equals the component power at the node
        prop_assert!((s.s0 - (fp.norm_sqr() + fm.norm_sqr())).abs() <= f64::EPSILON * 4.0);
    }

    #[test]
    fn translation_is_unitary(
        f in state(small_grid()),
        g in state(small_grid()),
        t0 in -5.0f64..5.0,
        rx in -3.0f64..3.0,
        ry in -3.0f64..3.0,
        rz in -3.0f64..3.0,
    ) {
        let c = PhysicalConstants::natural();
        let before = f.inner_product(&g).unwrap();
        let after = f
            .translate(t0, [rx, ry, rz], &c)
            .inner_product(&g.translate(t0, [rx, ry, rz], &c))
            .unwrap();
        prop_assert!((before - after).norm() <= 1e-12 * (1.0 + before.norm()));
    }

    #[test]
    fn normalize_is_projective_and_idempotent(f in state(small_grid())) {
        if f.norm_sq() > 1e-12 {
            let n1 = f.normalize().unwrap();
            prop_assert!((n1.norm_sq() - 1.0).abs() < 1e-12);
            let n2 = n1.normalize().unwrap();
            for i in 0..n1.grid().len() {
                prop_assert!((n1.f_plus()[i] - n2.f_plus()[i]).norm() < 1e-14);
            }
            // direction unchanged: overlap is the original norm
            let overlap = n1.inner_product(&f).unwrap();
            prop_assert!((overlap.re - f.norm_sq().sqrt()).abs() < 1e-10);
            prop_assert!(overlap.im.abs() < 1e-10);
        }
    }

    #[test]
    fn wavefunction_serialization_round_trips(f in state(small_grid())) {
        let mut text = Vec::new();
        io::write_state_text(&mut text, &f).unwrap();
        let back = io::read_state_text(&text[..]).unwrap();
        for i in 0..f.grid().len() {
            prop_assert!((back.f_plus()[i] - f.f_plus()[i]).norm() < 1e-14);
            prop_assert!((back.f_minus()[i] - f.f_minus()[i]).norm() < 1e-14);
        }

        let mut bin = Vec::new();
        io::write_state_binary(&mut bin, &f).unwrap();
        let back = io::read_state_binary(&bin[..]).unwrap();
        for i in 0..f.grid().len() {
            prop_assert!(back.f_plus()[i] == f.f_plus()[i]);
            prop_assert!(back.f_minus()[i] == f.f_minus()[i]);
        }
    }
}
