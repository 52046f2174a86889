pub mod coherent;
pub mod evolve;
pub mod planck;
pub mod selftest;
pub mod stokes;
pub mod synthesize;
pub mod uncertainty;
