//! The momentum-space covariant derivative D_k = d/dk - i lambda alpha(k)
//! encoding the curved geometry of the light cone, with a dual evaluation
//! path: closed-form gradients for factory states, centered second-order
//! finite differences on Cartesian grids otherwise.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::momentum::{GradientData, MomentumGrid, PhotonWavefunctionK};

/// How to evaluate d f / d k.
#[derive(Clone, Copy)]
pub enum DerivativeScheme<'a> {
    /// Centered O(h^2) differences; requires a Cartesian grid. Values outside
    /// the box (and at the excluded origin node) are treated as zero, so
    /// states must be compactly supported well inside the box.
    FiniteDifference,
    /// Caller-supplied per-node gradients.
    Analytic(&'a GradientData),
}

/// Cutoff policy for the gauge string of alpha(k) along the k_z axis: nodes
/// with k_perp^2 < axis_eps * |k|^2 are excluded from the connection term and
/// reported, and quadratures reject states that put weight on them.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionPolicy {
    pub axis_eps: f64,
}

impl Default for ConnectionPolicy {
    fn default() -> Self {
        Self { axis_eps: 1e-6 }
    }
}

/// The connection alpha(k) = (-k_y k_z, k_x k_z, 0) / (k k_perp^2).
pub fn connection_alpha(k: [f64; 3]) -> [f64; 3] {
    let k_perp_sq = k[0] * k[0] + k[1] * k[1];
    let len = (k_perp_sq + k[2] * k[2]).sqrt();
    let denom = len * k_perp_sq;
    [-k[1] * k[2] / denom, k[0] * k[2] / denom, 0.0]
}

/// Result of applying a three-component generator: one wavefunction per
/// Cartesian direction, all on the input grid, plus the storage indices of
/// nodes where the connection was cut off.
pub struct VectorAction {
    pub components: [PhotonWavefunctionK; 3],
    pub flagged: Vec<usize>,
}

impl VectorAction {
    /// Fraction of the state's weight sitting on flagged nodes.
    pub fn flagged_share(&self, f: &PhotonWavefunctionK) -> f64 {
        flagged_weight_share(f, &self.flagged)
    }
}

pub fn flagged_weight_share(f: &PhotonWavefunctionK, flagged: &[usize]) -> f64 {
    let total = f.norm_sq();
    if total <= 0.0 {
        return 0.0;
    }
    let grid = f.grid();
    let on_axis: f64 = flagged
        .iter()
        .map(|&i| grid.weight(i) * (f.f_plus()[i].norm_sqr() + f.f_minus()[i].norm_sqr()))
        .sum();
    on_axis / total
}

/// Raw per-node gradients of both components under the chosen scheme.
pub(crate) fn partial_derivatives(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
) -> Result<(Vec<[C64; 3]>, Vec<[C64; 3]>)> {
    match scheme {
        DerivativeScheme::Analytic(grad) => {
            if grad.d_plus.len() != f.grid().len() || grad.d_minus.len() != f.grid().len() {
                return Err(Error::GridMismatch(
                    "gradient data length does not match grid".into(),
                ));
            }
            Ok((grad.d_plus.clone(), grad.d_minus.clone()))
        }
        DerivativeScheme::FiniteDifference => finite_difference_partials(f),
    }
}

fn finite_difference_partials(
    f: &PhotonWavefunctionK,
) -> Result<(Vec<[C64; 3]>, Vec<[C64; 3]>)> {
    let grid = f.grid();
    let layout = grid.cartesian_layout().ok_or_else(|| {
        Error::InvalidParameter(
            "finite differences require a Cartesian momentum grid".into(),
        )
    })?;
    let n = grid.len();
    let mut d_plus = vec![[C64::ZERO; 3]; n];
    let mut d_minus = vec![[C64::ZERO; 3]; n];
    let value = |comp: &[C64], ix: isize, iy: isize, iz: isize| -> C64 {
        match layout.node_index(ix, iy, iz) {
            Some(j) => comp[j],
            None => C64::ZERO,
        }
    };
    for i in 0..n {
        let [ix, iy, iz] = layout.lattice_coords(i);
        let (ix, iy, iz) = (ix as isize, iy as isize, iz as isize);
        let offsets = [
            [(ix + 1, iy, iz), (ix - 1, iy, iz)],
            [(ix, iy + 1, iz), (ix, iy - 1, iz)],
            [(ix, iy, iz + 1), (ix, iy, iz - 1)],
        ];
        for a in 0..3 {
            let [(pxa, pya, pza), (mxa, mya, mza)] = offsets[a];
            let h2 = 2.0 * layout.spacing[a];
            d_plus[i][a] = (value(f.f_plus(), pxa, pya, pza) - value(f.f_plus(), mxa, mya, mza)) / h2;
            d_minus[i][a] =
                (value(f.f_minus(), pxa, pya, pza) - value(f.f_minus(), mxa, mya, mza)) / h2;
        }
    }
    Ok((d_plus, d_minus))
}

/// Flagged node indices under the policy.
pub(crate) fn axis_flagged_nodes(grid: &MomentumGrid, policy: ConnectionPolicy) -> Vec<usize> {
    grid.nodes()
        .iter()
        .enumerate()
        .filter_map(|(i, k)| {
            let perp = k[0] * k[0] + k[1] * k[1];
            let tot = perp + k[2] * k[2];
            (perp < policy.axis_eps * tot).then_some(i)
        })
        .collect()
}

/// Covariant derivative (D f)_± = d f_± / d k -/+ i alpha(k) f_±.
///
/// At flagged nodes the connection term is dropped (and the node reported);
/// admissible states vanish faster than k_perp there, so the cut is inert.
pub fn covariant_derivative(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
) -> Result<VectorAction> {
    let (d_plus, d_minus) = partial_derivatives(f, scheme)?;
    let grid = f.grid();
    let flagged = axis_flagged_nodes(grid, policy);
    let mut is_flagged = vec![false; grid.len()];
    for &i in &flagged {
        is_flagged[i] = true;
    }
    let components: [PhotonWavefunctionK; 3] = std::array::from_fn(|axis| {
        let mut out = PhotonWavefunctionK::zeros(grid.clone());
        {
            let (out_p, out_m) = out.components_mut();
            for i in 0..grid.len() {
                let alpha = if is_flagged[i] {
                    0.0
                } else {
                    connection_alpha(grid.node(i))[axis]
                };
                let ia = C64::new(0.0, alpha);
                out_p[i] = d_plus[i][axis] - ia * f.f_plus()[i];
                out_m[i] = d_minus[i][axis] + ia * f.f_minus()[i];
            }
        }
        out
    });
    Ok(VectorAction { components, flagged })
}

/// Apply D along one axis only.
pub fn covariant_component(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
    axis: usize,
) -> Result<(PhotonWavefunctionK, Vec<usize>)> {
    let action = covariant_derivative(f, scheme, policy)?;
    let [x, y, z] = action.components;
    let comp = match axis {
        0 => x,
        1 => y,
        2 => z,
        _ => return Err(Error::InvalidParameter("axis must be 0, 1 or 2".into())),
    };
    Ok((comp, action.flagged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::{GaussianPacket, MomentumGrid};

    fn packet(n: usize) -> (GaussianPacket, PhotonWavefunctionK) {
        let grid = MomentumGrid::cartesian_box([4.0, 0.5, 1.0], [2.8; 3], [n; 3])
            .unwrap()
            .into_shared();
        let p = GaussianPacket::new(
            grid,
            [4.0, 0.5, 1.0],
            0.45,
            C64::new(0.8, 0.2),
            C64::new(-0.1, 0.5),
        )
        .unwrap();
        let f = p.state();
        (p, f)
    }

    #[test]
    fn alpha_is_azimuthal_and_scales_inversely() {
        let a = connection_alpha([1.0, 0.0, 1.0]);
        // alpha = (0, k_x k_z, 0)/(k k_perp^2) = (0, 1/sqrt2, 0)
        assert!((a[0]).abs() < 1e-15);
        assert!((a[1] - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(a[2], 0.0);
        // alpha(k) . k = 0 and alpha has no z component
        let k = [0.3, -1.2, 2.4];
        let al = connection_alpha(k);
        let dot = al[0] * k[0] + al[1] * k[1] + al[2] * k[2];
        assert!(dot.abs() < 1e-14);
    }

    #[test]
    fn finite_difference_matches_analytic_gradient_at_second_order() {
        let (p48, f48) = packet(48);
        let (p96, f96) = {
            let grid = MomentumGrid::cartesian_box([4.0, 0.5, 1.0], [2.8; 3], [96; 3])
                .unwrap()
                .into_shared();
            let p = GaussianPacket::new(
                grid,
                [4.0, 0.5, 1.0],
                0.45,
                C64::new(0.8, 0.2),
                C64::new(-0.1, 0.5),
            )
            .unwrap();
            let f = p.state();
            (p, f)
        };
        let policy = ConnectionPolicy::default();
        let err = |p: &GaussianPacket, f: &PhotonWavefunctionK| -> f64 {
            let grad = p.gradient();
            let fd = covariant_derivative(f, DerivativeScheme::FiniteDifference, policy).unwrap();
            let an = covariant_derivative(f, DerivativeScheme::Analytic(&grad), policy).unwrap();
            let mut num = 0.0;
            let mut den = 0.0;
            for axis in 0..3 {
                let a = &an.components[axis];
                let b = &fd.components[axis];
                for i in 0..f.grid().len() {
                    // interior nodes only: FD treats outside-the-box as zero
                    let k = f.grid().node(i);
                    let d = [k[0] - 4.0, k[1] - 0.5, k[2] - 1.0];
                    if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() > 2.0 {
                        continue;
                    }
                    num += (a.f_plus()[i] - b.f_plus()[i]).norm_sqr()
                        + (a.f_minus()[i] - b.f_minus()[i]).norm_sqr();
                    den += a.f_plus()[i].norm_sqr() + a.f_minus()[i].norm_sqr();
                }
            }
            (num / den).sqrt()
        };
        let e_coarse = err(&p48, &f48);
        let e_fine = err(&p96, &f96);
        // halving h must shrink the error by ~4
        let ratio = e_coarse / e_fine;
        assert!(
            ratio > 3.0 && ratio < 5.5,
            "expected O(h^2): coarse {e_coarse:.3e}, fine {e_fine:.3e}, ratio {ratio:.2}"
        );
    }

    #[test]
    fn derivative_of_near_constant_region_is_connection_only() {
        // A state that is flat near a probe node: D f = -i lambda alpha f there.
        let grid = MomentumGrid::cartesian_box([3.0, 3.0, 3.0], [2.0; 3], [32; 3])
            .unwrap()
            .into_shared();
        let very_wide = 1e10;
        let f = PhotonWavefunctionK::from_fn(
            grid.clone(),
            |k| {
                let d = [k[0] - 3.0, k[1] - 3.0, k[2] - 3.0];
                C64::new(
                    (-(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / (2.0 * very_wide)).exp(),
                    0.0,
                )
            },
            |_| C64::ZERO,
        );
        let act =
            covariant_derivative(&f, DerivativeScheme::FiniteDifference, Default::default())
                .unwrap();
        // probe the node closest to the center
        let mut best = (0usize, f64::INFINITY);
        for i in 0..grid.len() {
            let k = grid.node(i);
            let d = (k[0] - 3.0).powi(2) + (k[1] - 3.0).powi(2) + (k[2] - 3.0).powi(2);
            if d < best.1 {
                best = (i, d);
            }
        }
        let i = best.0;
        let alpha = connection_alpha(grid.node(i));
        for axis in 0..3 {
            let expect = C64::new(0.0, -alpha[axis]) * f.f_plus()[i];
            let got = act.components[axis].f_plus()[i];
            assert!(
                (got - expect).norm() < 1e-6 * f.f_plus()[i].norm().max(1e-30),
                "axis {axis}: got {got}, expected {expect}"
            );
        }
    }

    #[test]
    fn axis_nodes_are_flagged() {
        let grid = MomentumGrid::cartesian_fft([8; 3], [0.5; 3]).unwrap().into_shared();
        let flagged = axis_flagged_nodes(&grid, ConnectionPolicy::default());
        // the m_x = m_y = 0 column sits exactly on the axis
        assert!(!flagged.is_empty());
        for &i in &flagged {
            let k = grid.node(i);
            assert!(k[0] * k[0] + k[1] * k[1] < 1e-6 * (k[2] * k[2]));
        }
    }
}
