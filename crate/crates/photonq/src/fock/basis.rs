//! The truncated occupation-number basis and state vectors over it.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::modes::ModeSet;
use crate::error::{Error, Result};

/// All occupation tuples (n_1, ..., n_M) with sum n_i <= n_max, in a fixed
/// enumeration order (lexicographic), with a reverse index.
#[derive(Debug)]
pub struct FockBasis {
    n_modes: usize,
    n_max: u32,
    states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn new(n_modes: usize, n_max: u32) -> Self {
        let mut states = Vec::new();
        let mut current = vec![0u32; n_modes];
        enumerate(&mut states, &mut current, 0, n_max);
        let index = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Self {
            n_modes,
            n_max,
            states,
            index,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn occupation(&self, i: usize) -> &[u32] {
        &self.states[i]
    }

    pub fn total_occupation(&self, i: usize) -> u32 {
        self.states[i].iter().sum()
    }

    pub fn position(&self, occ: &[u32]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    /// Index of the vacuum tuple (0, ..., 0).
    pub fn vacuum_index(&self) -> usize {
        self.position(&vec![0; self.n_modes]).expect("vacuum always present")
    }
}

fn enumerate(states: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, mode: usize, budget: u32) {
    if mode == current.len() {
        states.push(current.clone());
        return;
    }
    for n in 0..=budget {
        current[mode] = n;
        enumerate(states, current, mode + 1, budget - n);
    }
    current[mode] = 0;
}

/// A (generally unnormalized) vector in the truncated Fock space of a mode
/// set: complex amplitudes over the occupation basis.
#[derive(Debug, Clone)]
pub struct FockState {
    basis: Arc<FockBasis>,
    modes: Arc<ModeSet>,
    amplitudes: Vec<C64>,
}

impl FockState {
    pub fn new(basis: Arc<FockBasis>, modes: Arc<ModeSet>, amplitudes: Vec<C64>) -> Result<Self> {
        if basis.n_modes() != modes.len() {
            return Err(Error::ModeSetMismatch(format!(
                "basis has {} modes, mode set {}",
                basis.n_modes(),
                modes.len()
            )));
        }
        if amplitudes.len() != basis.dim() {
            return Err(Error::ModeSetMismatch(format!(
                "amplitude vector length {} does not match basis dimension {}",
                amplitudes.len(),
                basis.dim()
            )));
        }
        Ok(Self {
            basis,
            modes,
            amplitudes,
        })
    }

    pub fn vacuum(basis: Arc<FockBasis>, modes: Arc<ModeSet>) -> Result<Self> {
        let mut amplitudes = vec![C64::ZERO; basis.dim()];
        amplitudes[basis.vacuum_index()] = C64::ONE;
        Self::new(basis, modes, amplitudes)
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        &self.modes
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner_product(&self, other: &Self) -> Result<C64> {
        self.check_compatible(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.basis, &other.basis) && self.basis.dim() != other.basis.dim() {
            return Err(Error::ModeSetMismatch("states live in different bases".into()));
        }
        if !Arc::ptr_eq(&self.modes, &other.modes) && self.modes != other.modes {
            return Err(Error::ModeSetMismatch("states live on different mode sets".into()));
        }
        Ok(())
    }

    /// Distribution over the total photon number: P(n) = sum of |amp|^2 over
    /// tuples with sum n_i = n.
    pub fn number_distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.basis.n_max() as usize + 1];
        for (i, a) in self.amplitudes.iter().enumerate() {
            p[self.basis.total_occupation(i) as usize] += a.norm_sqr();
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_is_binomial() {
        // #tuples with sum <= N over M modes = C(M + N, M)
        let basis = FockBasis::new(2, 32);
        assert_eq!(basis.dim(), 34 * 33 / 2);
        let basis = FockBasis::new(3, 4);
        assert_eq!(basis.dim(), 35); // C(7,3)
    }

    #[test]
    fn position_round_trips() {
        let basis = FockBasis::new(3, 5);
        for i in 0..basis.dim() {
            assert_eq!(basis.position(basis.occupation(i)), Some(i));
        }
        assert_eq!(basis.position(&[6, 0, 0]), None);
    }

    #[test]
    fn vacuum_has_unit_norm_and_zero_photons() {
        let basis = Arc::new(FockBasis::new(2, 4));
        let grid = crate::momentum::MomentumGrid::cartesian_box([2.0, 0.0, 0.0], [1.0; 3], [4; 3])
            .unwrap()
            .into_shared();
        let modes = Arc::new(
            super::super::modes::ModeSet::from_grid(
                &grid,
                &[(0, crate::momentum::Helicity::Plus), (1, crate::momentum::Helicity::Plus)],
            )
            .unwrap(),
        );
        let v = FockState::vacuum(basis, modes).unwrap();
        assert_eq!(v.norm_sq(), 1.0);
        let dist = v.number_distribution();
        assert_eq!(dist[0], 1.0);
        assert!(dist[1..].iter().all(|p| *p == 0.0));
    }
}
