//! Thermal states of the field and blackbody radiometry: Boltzmann weights,
//! the mean-occupation recursion, Planck's law, peak and integral quantities.

mod io;
mod occupation;
mod planck;

pub use io::{write_spectrum_text, RadiometrySummary};
pub use occupation::{
    average_energy, average_occupation, boltzmann_probabilities, thermal_density_matrix,
    OccupationResult,
};
pub use planck::{
    peak_frequency, photon_energy, planck_energy_density, planck_energy_density_series,
    planck_number_density, rayleigh_jeans_density, total_energy_density,
    total_energy_density_closed, total_photon_density, total_photon_density_closed, PlanckPeak,
    SpectralDensity,
};
