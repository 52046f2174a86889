//! Second-quantized layer on a finite set of discrete modes: occupation-
//! number states, ladder-operator algebra with the k-weighted commutator,
//! N-photon symmetric wavefunctions, field-operator matrix elements, and
//! coherent states.

mod basis;
mod coherent;
pub mod io;
mod modes;
mod nphoton;
mod operators;

pub use basis::{FockBasis, FockState};
pub use coherent::{coherent_state, n_max_for_tail, poisson_tail};
pub use modes::{Mode, ModeSet};
pub use nphoton::NPhotonWavefunction;
pub use operators::{
    apply_annihilate, apply_annihilate_wavepacket, apply_create, apply_create_wavepacket,
    apply_lower, apply_raise, classical_field_at, commutator_check, create_photon,
    field_operator_element, hamiltonian_expectation, number_expectation,
};
