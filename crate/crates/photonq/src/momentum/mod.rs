//! Momentum-representation photon states: grids with the invariant d^3k/k
//! measure, two-component wavefunctions, Stokes parameters, and the phase
//! action of space-time translations.

mod grid;
pub mod io;
mod state;
mod stokes;

pub use grid::{same_grid, CartesianLayout, GridKind, MomentumGrid};
pub use state::{
    make_gaussian_state, GaussianPacket, GradientData, Helicity, PhotonWavefunctionK,
};
pub use stokes::StokesVector;
