//! N-photon wavefunctions over a mode set and bosonic symmetrization.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::modes::ModeSet;
use crate::error::{Error, Result};

/// Amplitude over ordered N-tuples of mode indices: the value at
/// (i_1, ..., i_N) is the amplitude for photon 1 in mode i_1, photon 2 in
/// mode i_2, and so on. Physical (bosonic) states are fully symmetric under
/// argument exchange.
#[derive(Debug, Clone)]
pub struct NPhotonWavefunction {
    modes: Arc<ModeSet>,
    n_photons: usize,
    amplitudes: Vec<C64>,
}

impl NPhotonWavefunction {
    pub fn new(modes: Arc<ModeSet>, n_photons: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_photons == 0 {
            return Err(Error::InvalidParameter("need at least one photon".into()));
        }
        let expect = modes.len().pow(n_photons as u32);
        if amplitudes.len() != expect {
            return Err(Error::InvalidParameter(format!(
                "amplitude count {} does not match {expect} mode tuples",
                amplitudes.len()
            )));
        }
        Ok(Self {
            modes,
            n_photons,
            amplitudes,
        })
    }

    pub fn from_fn<F: FnMut(&[usize]) -> C64>(
        modes: Arc<ModeSet>,
        n_photons: usize,
        mut f: F,
    ) -> Result<Self> {
        let m = modes.len();
        let count = m.pow(n_photons as u32);
        let mut tuple = vec![0usize; n_photons];
        let amplitudes = (0..count)
            .map(|flat| {
                decode(flat, m, &mut tuple);
                f(&tuple)
            })
            .collect();
        Self::new(modes, n_photons, amplitudes)
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        &self.modes
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, tuple: &[usize]) -> C64 {
        self.amplitudes[encode(tuple, self.modes.len())]
    }

    /// Average over all N! argument permutations. Idempotent; symmetric
    /// inputs are fixed points and antisymmetric parts are annihilated.
    pub fn symmetrize(&self) -> Self {
        let m = self.modes.len();
        let perms = permutations(self.n_photons);
        let mut out = vec![C64::ZERO; self.amplitudes.len()];
        let mut tuple = vec![0usize; self.n_photons];
        let mut permuted = vec![0usize; self.n_photons];
        for (flat, slot) in out.iter_mut().enumerate() {
            decode(flat, m, &mut tuple);
            let mut acc = C64::ZERO;
            for perm in &perms {
                for (dst, &src) in permuted.iter_mut().zip(perm) {
                    *dst = tuple[src];
                }
                acc += self.amplitudes[encode(&permuted, m)];
            }
            *slot = acc / perms.len() as f64;
        }
        Self {
            modes: self.modes.clone(),
            n_photons: self.n_photons,
            amplitudes: out,
        }
    }

    /// Apply one argument transposition (swap slots a and b).
    pub fn exchanged(&self, a: usize, b: usize) -> Self {
        let m = self.modes.len();
        let mut tuple = vec![0usize; self.n_photons];
        let mut out = vec![C64::ZERO; self.amplitudes.len()];
        for (flat, slot) in out.iter_mut().enumerate() {
            decode(flat, m, &mut tuple);
            tuple.swap(a, b);
            *slot = self.amplitudes[encode(&tuple, m)];
        }
        Self {
            modes: self.modes.clone(),
            n_photons: self.n_photons,
            amplitudes: out,
        }
    }

    /// Largest deviation |psi(..i..j..) - psi(..j..i..)| over all
    /// transpositions; zero exactly for symmetrized states.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.n_photons {
            for b in (a + 1)..self.n_photons {
                let swapped = self.exchanged(a, b);
                for (x, y) in self.amplitudes.iter().zip(swapped.amplitudes()) {
                    worst = worst.max((x - y).norm());
                }
            }
        }
        worst
    }
}

fn encode(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * m + i)
}

fn decode(mut flat: usize, m: usize, tuple: &mut [usize]) {
    for slot in tuple.iter_mut().rev() {
        *slot = flat % m;
        flat /= m;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
