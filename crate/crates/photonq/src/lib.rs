//! # photonq
//!
//! A numerical toolkit for the wave mechanics of photons. States live in the
//! momentum representation as two helicity amplitudes weighted by the
//! Lorentz-invariant measure d^3k/k; on top of that sit the Poincare
//! generators with their light-cone covariant derivative, classical
//! Riemann-Silberstein field synthesis and spectral evolution, a truncated
//! Fock-space layer with coherent states, and Planck blackbody radiometry.
//!
//! ```
//! use num_complex::Complex64 as C64;
//! use photonq::momentum::{make_gaussian_state, MomentumGrid};
//!
//! let grid = MomentumGrid::cartesian_box([4.0, 0.0, 1.0], [2.0; 3], [16; 3])
//!     .unwrap()
//!     .into_shared();
//! let state = make_gaussian_state(grid, [4.0, 0.0, 1.0], 0.4, C64::ONE, C64::ZERO).unwrap();
//! assert!((state.norm_sq() - 1.0).abs() < 1e-12);
//! ```

pub mod constants;
mod error;
pub mod field;
pub mod fock;
pub mod momentum;
pub mod numerics;
pub mod poincare;
pub mod selftest;
pub mod thermal;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};

// The guide's chapters double as documentation tests: every fenced Rust
// block in book/src compiles and runs under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/momentum-wavefunctions.md")]
    mod momentum_wavefunctions {}
    #[doc = include_str!("../../../book/src/generators-and-uncertainty.md")]
    mod generators_and_uncertainty {}
    #[doc = include_str!("../../../book/src/classical-fields.md")]
    mod classical_fields {}
    #[doc = include_str!("../../../book/src/fock-space.md")]
    mod fock_space {}
    #[doc = include_str!("../../../book/src/blackbody.md")]
    mod blackbody {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
