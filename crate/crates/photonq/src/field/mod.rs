//! Classical electromagnetic fields as Riemann-Silberstein vectors: plane
//! wave synthesis from momentum-space photon amplitudes, spectral evolution,
//! helicity splitting into position-representation wavefunctions, and the
//! nonlocal photon-number norm.

mod evolution;
mod fft;
pub mod io;
mod polarization;
mod position;
mod rs;
mod spatial;
mod synthesis;

pub use evolution::{evolve, evolve_n, StepObservables};
pub use polarization::{eigen_residual, polarization_vector};
pub use position::{
    helicity_split, nonlocal_norm, nonlocal_norm_direct, PositionWavefunctions,
};
pub use rs::RSField;
pub use spatial::SpatialGrid;
pub use synthesis::{synthesize, synthesize_at_points, SynthesisOptions};
