//! Discrete mode sets drawn from a momentum grid, carrying the bookkeeping
//! that turns continuum commutators and mode integrals into weighted sums.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::momentum::{Helicity, MomentumGrid, PhotonWavefunctionK};

/// One field mode: a wave vector, a helicity, and the d^3k/k quadrature
/// weight of its parent grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub k: [f64; 3],
    pub helicity: Helicity,
    /// weight realizing the d^3k/k measure at this node
    pub weight: f64,
}

impl Mode {
    pub fn k_len(&self) -> f64 {
        (self.k[0] * self.k[0] + self.k[1] * self.k[1] + self.k[2] * self.k[2]).sqrt()
    }

    /// Plain d^3k cell weight, W = w |k|.
    pub fn plain_weight(&self) -> f64 {
        self.weight * self.k_len()
    }
}

/// A finite set of distinct (k, helicity) modes.
///
/// The continuum operators a(k, lambda) obey [a, a^dagger] = k delta^3; on
/// the grid that delta discretizes to 1/W with W the plain-measure cell
/// weight, so [a_i, a_i^dagger] = kappa_i with kappa_i = |k_i| / W_i = 1/w_i.
/// Physical ladder operators are b_i = a_i / sqrt(kappa_i) with
/// [b_i, b_j^dagger] = delta_ij.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    modes: Vec<Mode>,
}

impl ModeSet {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter("mode set must not be empty".into()));
        }
        for m in &modes {
            if !(m.weight > 0.0) || !(m.k_len() > 0.0) {
                return Err(Error::InvalidParameter(
                    "each mode needs |k| > 0 and a positive weight".into(),
                ));
            }
        }
        for i in 0..modes.len() {
            for j in (i + 1)..modes.len() {
                if modes[i].helicity == modes[j].helicity && modes[i].k == modes[j].k {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate mode (k = {:?}, helicity = {:?})",
                        modes[i].k, modes[i].helicity
                    )));
                }
            }
        }
        Ok(Self { modes })
    }

    /// Select grid nodes as modes.
    pub fn from_grid(
        grid: &Arc<MomentumGrid>,
        selection: &[(usize, Helicity)],
    ) -> Result<Self> {
        let modes = selection
            .iter()
            .map(|&(node, helicity)| {
                if node >= grid.len() {
                    return Err(Error::InvalidParameter(format!(
                        "node index {node} out of range ({} nodes)",
                        grid.len()
                    )));
                }
                Ok(Mode {
                    k: grid.node(node),
                    helicity,
                    weight: grid.weight(node),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modes)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn mode(&self, i: usize) -> &Mode {
        &self.modes[i]
    }

    /// The discrete [a_i, a_i^dagger] strength kappa_i = 1 / w_i.
    pub fn kappa(&self, i: usize) -> f64 {
        1.0 / self.modes[i].weight
    }

    /// Restrict a wavefunction on the parent grid to these modes: the
    /// amplitude of mode i is f_{helicity_i}(k_i).
    pub fn restrict(&self, f: &PhotonWavefunctionK) -> Result<Vec<C64>> {
        let grid = f.grid();
        self.modes
            .iter()
            .map(|m| {
                let node = grid
                    .nodes()
                    .iter()
                    .position(|k| k == &m.k)
                    .ok_or_else(|| {
                        Error::ModeSetMismatch("mode wave vector not on the state's grid".into())
                    })?;
                Ok(match m.helicity {
                    Helicity::Plus => f.f_plus()[node],
                    Helicity::Minus => f.f_minus()[node],
                })
            })
            .collect()
    }

    /// Norm^2 of a mode-amplitude vector under the d^3k/k sum.
    pub fn amplitude_norm_sq(&self, amps: &[C64]) -> f64 {
        self.modes
            .iter()
            .zip(amps)
            .map(|(m, a)| m.weight * a.norm_sqr())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::GridKind;

    fn grid() -> Arc<MomentumGrid> {
        MomentumGrid::cartesian_box([2.0, 0.0, 0.0], [1.0; 3], [4; 3])
            .unwrap()
            .into_shared()
    }

    #[test]
    fn kappa_is_k_over_plain_weight() {
        let g = grid();
        let ms = ModeSet::from_grid(&g, &[(3, Helicity::Plus), (7, Helicity::Minus)]).unwrap();
        for i in 0..ms.len() {
            let m = ms.mode(i);
            assert!((ms.kappa(i) - m.k_len() / m.plain_weight()).abs() < 1e-15);
        }
        assert!(matches!(g.kind(), GridKind::CartesianBox { .. }));
    }

    #[test]
    fn duplicate_modes_rejected() {
        let g = grid();
        assert!(ModeSet::from_grid(&g, &[(3, Helicity::Plus), (3, Helicity::Plus)]).is_err());
        // same node, opposite helicity is fine
        assert!(ModeSet::from_grid(&g, &[(3, Helicity::Plus), (3, Helicity::Minus)]).is_ok());
    }

    #[test]
    fn out_of_range_node_rejected() {
        let g = grid();
        assert!(ModeSet::from_grid(&g, &[(10_000, Helicity::Plus)]).is_err());
    }
}
