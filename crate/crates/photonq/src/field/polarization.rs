//! Transverse circular polarization vectors e(k) with the phase convention
//! that reproduces the light-cone connection alpha(k).
//!
//! e(k) is transported from e(z) = (1, i, 0)/sqrt(2) by the geodesic rotation
//! taking z to k-hat and then multiplied by e^{-i phi_k}. The extra azimuthal
//! phase moves the gauge string from the south pole onto the whole k_z axis,
//! which is exactly the gauge in which the covariant derivative uses
//! alpha(k) = (-k_y k_z, k_x k_z, 0) / (k k_perp^2). The resulting frame
//! satisfies i e^dagger . d e / d k = alpha(k) away from the axis.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Unit-normalized righthanded polarization vector satisfying
/// i c k x e = + omega e, with e(-k-hat on axis) fixed by convention.
/// The lefthanded partner is e_-(k) = conj(e_+(k)).
pub fn polarization_vector(k: [f64; 3]) -> Result<[C64; 3]> {
    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if !(k2 > 0.0) {
        return Err(Error::InvalidParameter(
            "polarization vector undefined at k = 0".into(),
        ));
    }
    let len = k2.sqrt();
    let unit = [k[0] / len, k[1] / len, k[2] / len];
    let perp = (unit[0] * unit[0] + unit[1] * unit[1]).sqrt();

    // Axis special cases: phi is undefined there, pin the values.
    if perp < 1e-14 {
        return Ok(if unit[2] > 0.0 {
            circular_base()
        } else {
            // rotation by pi about x applied to the base vector
            let b = circular_base();
            [b[0], -b[1], -b[2]]
        });
    }

    // Geodesic rotation about (z x k-hat)/|..| by theta = angle(z, k-hat).
    let cos_t = unit[2];
    let axis = [-unit[1] / perp, unit[0] / perp, 0.0];
    let base = circular_base();
    let re = rodrigues([base[0].re, base[1].re, base[2].re], axis, cos_t, perp);
    let im = rodrigues([base[0].im, base[1].im, base[2].im], axis, cos_t, perp);
    let geo = [
        C64::new(re[0], im[0]),
        C64::new(re[1], im[1]),
        C64::new(re[2], im[2]),
    ];
    let phase = C64::from_polar(1.0, -k[1].atan2(k[0]));
    Ok([geo[0] * phase, geo[1] * phase, geo[2] * phase])
}

fn circular_base() -> [C64; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [C64::new(s, 0.0), C64::new(0.0, s), C64::ZERO]
}

/// Rotate v about the unit axis by the angle with the given cosine/sine.
fn rodrigues(v: [f64; 3], axis: [f64; 3], cos_t: f64, sin_t: f64) -> [f64; 3] {
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    let dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    std::array::from_fn(|i| v[i] * cos_t + cross[i] * sin_t + axis[i] * dot * (1.0 - cos_t))
}

/// Residual of the defining eigenvalue equation,
/// || i c k x e - c |k| e || with c scaled out.
pub fn eigen_residual(k: [f64; 3], e: &[C64; 3]) -> f64 {
    let len = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    let cross = [
        C64::new(k[1], 0.0) * e[2] - C64::new(k[2], 0.0) * e[1],
        C64::new(k[2], 0.0) * e[0] - C64::new(k[0], 0.0) * e[2],
        C64::new(k[0], 0.0) * e[1] - C64::new(k[1], 0.0) * e[0],
    ];
    let mut acc = 0.0;
    for i in 0..3 {
        acc += (C64::I * cross[i] - e[i] * len).norm_sqr();
    }
    (acc / (len * len)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::connection_alpha;

    #[test]
    fn along_z_axis_matches_convention() {
        let e = polarization_vector([0.0, 0.0, 3.0]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(e[0], C64::new(s, 0.0));
        assert_eq!(e[1], C64::new(0.0, s));
        assert_eq!(e[2], C64::ZERO);
    }

    #[test]
    fn defining_equation_and_normalization_hold_everywhere() {
        let dirs = [
            [1.0, 0.0, 0.0],
            [0.3, -0.4, 1.2],
            [-2.0, 0.5, -0.1],
            [0.0, 2.0, 0.0],
            [0.0, 0.0, -4.0],
            [1.0, 1.0, 1.0],
        ];
        for k in dirs {
            let e = polarization_vector(k).unwrap();
            assert!(eigen_residual(k, &e) < 1e-12, "residual too large at {k:?}");
            let norm: f64 = e.iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            // isotropic vector: e . e = 0
            let selfdot: C64 = e.iter().map(|c| c * c).sum();
            assert!(selfdot.norm() < 1e-12);
            // transversality
            let kdot: C64 = (0..3).map(|i| e[i] * k[i]).sum();
            assert!(kdot.norm() < 1e-12);
        }
    }

    #[test]
    fn zero_wavevector_rejected() {
        assert!(polarization_vector([0.0; 3]).is_err());
    }

    #[test]
    fn along_x_axis_from_rotation_of_base() {
        // the convention rotates (1, i, 0)/sqrt2 from z to x and removes the
        // azimuthal phase (phi = 0 on the +x axis): e = (0, i, -1)/sqrt2
        let e = polarization_vector([2.5, 0.0, 0.0]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e[0]).norm() < 1e-15);
        assert!((e[1] - C64::new(0.0, s)).norm() < 1e-15);
        assert!((e[2] + C64::new(s, 0.0)).norm() < 1e-15);
        assert!(eigen_residual([2.5, 0.0, 0.0], &e) < 1e-13);
    }

    #[test]
    fn berry_connection_of_frame_equals_alpha() {
        // i e^dagger de/dk_j ~ alpha_j by centered differences, away from the
        // axis and away from phi wrap-around.
        let points = [
            [1.0, 0.2, 0.7],
            [0.4, 1.3, -0.6],
            [-0.8, 0.9, 1.1],
            [2.0, -0.5, 0.3],
        ];
        let h = 1e-5;
        for k in points {
            let alpha = connection_alpha(k);
            for j in 0..3 {
                let mut kp = k;
                let mut km = k;
                kp[j] += h;
                km[j] -= h;
                let ep = polarization_vector(kp).unwrap();
                let em = polarization_vector(km).unwrap();
                let e0 = polarization_vector(k).unwrap();
                let mut de = [C64::ZERO; 3];
                for c in 0..3 {
                    de[c] = (ep[c] - em[c]) / (2.0 * h);
                }
                let conn: C64 = (0..3).map(|c| e0[c].conj() * de[c]).sum();
                let measured = (C64::I * conn).re;
                assert!(
                    (measured - alpha[j]).abs() < 1e-7,
                    "k = {k:?}, axis {j}: i e^+ de = {measured}, alpha = {}",
                    alpha[j]
                );
                // the connection is real: i e^dagger de has no imaginary part
                assert!((C64::I * conn).im.abs() < 1e-7);
            }
        }
    }
}
