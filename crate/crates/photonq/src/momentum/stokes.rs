//! Stokes parameters of a two-component helicity amplitude.

use num_complex::Complex64 as C64;

/// The four Stokes parameters built from (f+, f-) at one wave vector.
///
/// Sign convention: with f± = |f±| e^{i delta±},
///   S1 = 2 |f+||f-| cos(delta- - delta+),
///   S2 = 2 |f+||f-| sin(delta- - delta+),
/// which pins S1 = 2 Re(f+^* f-) and S2 = 2 Im(f+^* f-).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub fn from_amplitudes(f_plus: C64, f_minus: C64) -> Self {
        let cross = f_plus.conj() * f_minus;
        Self {
            s0: f_plus.norm_sqr() + f_minus.norm_sqr(),
            s1: 2.0 * cross.re,
            s2: 2.0 * cross.im,
            s3: f_plus.norm_sqr() - f_minus.norm_sqr(),
        }
    }

    /// For a pure amplitude S0^2 = S1^2 + S2^2 + S3^2; the defect is zero up
    /// to roundoff.
    pub fn purity_defect(&self) -> f64 {
        self.s0 * self.s0 - (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3)
    }

    /// Orientation of the polarization ellipse's major axis, (delta- - delta+)/2.
    pub fn ellipse_orientation(&self) -> f64 {
        0.5 * self.s2.atan2(self.s1)
    }

    /// Semi-axes (major, minor) of the ellipse traced by the field vector,
    /// up to the common amplitude scale: ((|f+|+|f-|), ||f+|-|f-||)/sqrt(2).
    pub fn ellipse_semi_axes(&self) -> (f64, f64) {
        let l = (self.s1 * self.s1 + self.s2 * self.s2).sqrt();
        let major = ((self.s0 + l) / 2.0).max(0.0).sqrt();
        let minor = ((self.s0 - l) / 2.0).max(0.0).sqrt();
        (major, minor)
    }

    /// Sign of the circular component: +1 righthanded dominant, -1 lefthanded.
    pub fn handedness(&self) -> f64 {
        self.s3.signum()
    }
}
